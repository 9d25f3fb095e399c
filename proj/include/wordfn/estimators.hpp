#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "bgw.hpp"
#include "errors.hpp"
#include "numeric.hpp"
#include "simulator.hpp"

namespace wordfn {

/// argmin_{1<=k<=kMax} |leafCount/n - eta_k|, ties to the smaller k.
template <class Real>
int guess_length(std::uint64_t n, std::uint64_t leafCount, int kMax, const EtaSequence<Real>& eta) {
    if (n == 0 || leafCount > n) throw InputError("need 0 <= leafCount <= n, n > 0");
    if (kMax < 1 || kMax > eta.max_index()) throw InputError("kMax outside the eta range");
    const double ratio = static_cast<double>(leafCount) / static_cast<double>(n);
    int best = 1;
    double bestGap = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= kMax; ++k) {
        double gap = std::fabs(ratio - to_double(eta[k]));
        if (gap < bestGap) {
            bestGap = gap;
            best = k;
        }
    }
    return best;
}

/// |{c : c | d, gcd(c, r) = 1}|.
inline int coprime_divisors(int d, std::int64_t r) {
    int count = 0;
    for (int c = 1; c <= d; ++c)
        if (d % c == 0 && std::gcd<std::int64_t, std::int64_t>(c, r) == 1) ++count;
    return count;
}

/// rho(d, g; z) = (1/lcm(d,g)) sum_{r=1}^{lcm} z_{r mod g} |{c | d : gcd(c, r) = 1}|.
inline Rational rho(int d, int g, const std::vector<Rational>& z) {
    if (d < 1 || g < 1) throw InputError("rho needs d, g >= 1");
    if (z.size() != static_cast<std::size_t>(g)) throw InputError("rho needs g weights");
    const std::int64_t m = lcm64(d, g);
    Rational sum = 0;
    for (std::int64_t r = 1; r <= m; ++r) sum += z[static_cast<std::size_t>(r % g)] * coprime_divisors(d, r);
    return sum / m;
}

/// Large-n mean of D(L, g; z) for exponent d at fixed L:
///   sum_{j<=L} z_{j mod g} (1/j) |{c | d : gcd(c, j) = 1}|.
template <class Real>
Real finite_limit_mean(int d, int L, int g, const std::vector<Real>& z) {
    if (d < 1 || g < 1 || L < 1) throw InputError("finite_limit_mean needs d, g, L >= 1");
    if (z.size() != static_cast<std::size_t>(g)) throw InputError("finite_limit_mean needs g weights");
    Real sum(0);
    for (int j = 1; j <= L; ++j) {
        const Real& zj = z[static_cast<std::size_t>(j % g)];
        if (zj == Real(0)) continue;
        sum += zj * Real(coprime_divisors(d, j)) / Real(j);
    }
    return sum;
}

inline std::vector<int> primes_up_to(int m) {
    std::vector<int> out;
    for (int p = 2; p <= m; ++p) {
        bool prime = true;
        for (int q = 2; q * q <= p && prime; ++q) prime = (p % q != 0);
        if (prime) out.push_back(p);
    }
    return out;
}

struct PrimeMultiplicity {
    int prime;
    std::optional<int> alpha;  // empty when D^{(p)} = 0
};

struct ExponentGuess {
    int d = 1;
    bool lowConfidence = false;
    int g = 1;
    std::vector<int> features;       // 1 and the primes <= g
    std::vector<double> observed;    // D^{(p)} per feature
    std::vector<double> distance;    // squared distance per candidate, index d-1
    // secondary product-of-primes diagnostic
    std::vector<PrimeMultiplicity> multiplicities;
    std::optional<std::int64_t> diagnosticD;
};

/// Matches the residue-class cycle counts D^{(p)} (j = p mod g, g = lcm(1..dMax))
/// against their exact finite-L means for each candidate exponent.
/// `counts[j]`, 1 <= j <= L, may be integer counts or averaged ones.
inline ExponentGuess guess_exponent(const std::vector<double>& counts, int L, int dMax) {
    if (L < 2) throw InputError("guess_exponent needs L >= 2");
    if (dMax < 1) throw InputError("guess_exponent needs dMax >= 1");
    if (counts.size() < static_cast<std::size_t>(L) + 1) throw InputError("cycle counts shorter than L");
    ExponentGuess out;
    std::int64_t g = 1;
    for (int d = 1; d <= dMax; ++d) g = lcm64(g, d);
    if (g > std::numeric_limits<int>::max()) throw ComputationError("lcm(1..dMax) too large");
    out.g = static_cast<int>(g);
    out.features.push_back(1);
    for (int p : primes_up_to(out.g)) out.features.push_back(p);

    bool any = false;
    for (int p : out.features) {
        double D = 0;
        for (int j = 1; j <= L; ++j)
            if (j % out.g == p % out.g) D += counts[static_cast<std::size_t>(j)];
        any = any || D > 0;
        out.observed.push_back(D);
    }
    if (!any) {
        out.d = 1;
        out.lowConfidence = true;
        return out;
    }

    double best = std::numeric_limits<double>::infinity();
    for (int d = 1; d <= dMax; ++d) {
        double dist = 0;
        for (std::size_t f = 0; f < out.features.size(); ++f) {
            double E = 0;
            for (int j = out.features[f]; j <= L; j += out.g)
                E += coprime_divisors(d, j) / static_cast<double>(j);
            const double diff = out.observed[f] - E;
            dist += diff * diff;
        }
        out.distance.push_back(dist);
        if (dist < best) {
            best = dist;
            out.d = d;
        }
    }

    const double D1 = out.observed[0];
    std::int64_t prod = 1;
    bool determined = true;
    for (std::size_t f = 1; f < out.features.size(); ++f) {
        PrimeMultiplicity pm{out.features[f], std::nullopt};
        if (out.observed[f] > 0) {
            pm.alpha = std::max(0, static_cast<int>(std::lround(D1 / out.observed[f] - 1.0)));
            for (int r = 0; r < *pm.alpha && prod < (std::int64_t{1} << 40); ++r) prod *= pm.prime;
        } else {
            determined = false;
        }
        out.multiplicities.push_back(pm);
    }
    if (determined) out.diagnosticD = prod;
    return out;
}

inline ExponentGuess guess_exponent(const CycleCounts& counts, int L, int dMax) {
    if (counts.L < L) throw InputError("cycle counts shorter than L");
    return guess_exponent(std::vector<double>(counts.counts.begin(), counts.counts.end()), L, dMax);
}

} // namespace wordfn

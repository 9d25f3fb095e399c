#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <thread>
#include <vector>

#include "bgw.hpp"
#include "errors.hpp"
#include "numeric.hpp"
#include "simulator.hpp"
#include "word.hpp"

namespace wordfn {

/// Exact law of a non-negative integer statistic.
using Distribution = std::map<std::int64_t, Rational>;

inline constexpr std::uint64_t kEnumerationMaxN = 5;

namespace detail {

inline void decode_function(std::uint64_t code, std::uint32_t n, std::vector<std::uint32_t>& out) {
    for (std::uint32_t x = 0; x < n; ++x) {
        out[x] = static_cast<std::uint32_t>(code % n);
        code /= n;
    }
}

} // namespace detail

/// Law of L_n(w) over all n^{2n} pairs (a, b).  The outer function's index
/// range is split across workers; integer counts are summed afterwards.
inline Distribution enumerate_exact(std::uint64_t n, const Word& w, unsigned threads = 1) {
    if (n == 0) throw InputError("n must be positive");
    if (n > kEnumerationMaxN)
        throw ConfigError("exact enumeration is capped at n = " + std::to_string(kEnumerationMaxN));
    const auto nn = static_cast<std::uint32_t>(n);
    std::uint64_t functions = 1;
    for (std::uint64_t r = 0; r < n; ++r) functions *= n;

    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(functions)));
    std::vector<std::vector<std::uint64_t>> counts(threads, std::vector<std::uint64_t>(n, 0));
    auto work = [&](unsigned id) {
        std::vector<std::uint32_t> av(nn), bv(nn), r(nn);
        std::vector<char> hit(nn);
        for (std::uint64_t ca = id; ca < functions; ca += threads) {
            detail::decode_function(ca, nn, av);
            for (std::uint64_t cb = 0; cb < functions; ++cb) {
                detail::decode_function(cb, nn, bv);
                for (std::uint32_t x = 0; x < nn; ++x) r[x] = x;
                for (int p = 1; p <= w.length(); ++p) {
                    const auto& phi = w.at(p) == 'a' ? av : bv;
                    for (auto& x : r) x = phi[x];
                }
                std::fill(hit.begin(), hit.end(), 0);
                for (auto y : r) hit[y] = 1;
                ++counts[id][static_cast<std::size_t>(std::count(hit.begin(), hit.end(), 0))];
            }
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned id = 0; id < threads; ++id) pool.emplace_back(work, id);
        for (auto& t : pool) t.join();
    }
    const BigInt total = BigInt(functions) * functions;
    Distribution out;
    for (std::uint64_t v = 0; v < n; ++v) {
        BigInt c = 0;
        for (auto& part : counts) c += part[v];
        if (c != 0) out[static_cast<std::int64_t>(v)] = Rational(c, total);
    }
    return out;
}

/// Half the L1 distance, over the union of the supports.
inline Rational tv_distance(const Distribution& p, const Distribution& q) {
    Rational sum = 0;
    auto add = [&](const Rational& d) { sum += d < 0 ? Rational(-d) : d; };
    for (auto& [v, pv] : p) {
        auto it = q.find(v);
        add(it == q.end() ? pv : Rational(pv - it->second));
    }
    for (auto& [v, qv] : q)
        if (!p.count(v)) add(qv);
    return sum / 2;
}

inline Rational mean_of(const Distribution& p) {
    Rational m = 0;
    for (auto& [v, pv] : p) m += pv * v;
    return m;
}

// --- BGW Monte Carlo -------------------------------------------------------------

inline constexpr std::uint64_t kBgwPopulationCap = 1'000'000;

struct McEstimate {
    double estimate = 0;
    double standardError = 0;
    std::uint64_t overflows = 0;  // runs classified non-extinct because of the cap
};

/// Sample means of prod_i Z_i^{m_i} 1{Z_k = 0} for several multi-indices,
/// all read off the same runs of the Poisson(1) process.
inline std::vector<McEstimate> bgw_mc_moments(int k, const std::vector<MultiIndex>& ms, std::uint64_t trials,
                                              std::uint64_t seed) {
    if (k < 1) throw InputError("k must be positive");
    if (trials < 10'000) throw InputError("bgw Monte Carlo needs at least 1e4 trials");
    for (auto& m : ms)
        if (m.max_generation() > k) throw InputError("multi-index generation exceeds k");
    Engine rng(seed);
    std::vector<double> sum(ms.size(), 0.0), sum2(ms.size(), 0.0);
    std::vector<std::uint64_t> Z(static_cast<std::size_t>(k) + 1);
    std::uint64_t overflows = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        Z[0] = 1;
        bool overflow = false;
        for (int g = 1; g <= k; ++g) {
            const std::uint64_t prev = Z[static_cast<std::size_t>(g - 1)];
            if (overflow || prev == 0) {
                Z[static_cast<std::size_t>(g)] = overflow ? kBgwPopulationCap : 0;
                continue;
            }
            std::poisson_distribution<std::uint64_t> offspring(static_cast<double>(prev));
            std::uint64_t next = offspring(rng);
            if (next > kBgwPopulationCap) {
                overflow = true;
                next = kBgwPopulationCap;
            }
            Z[static_cast<std::size_t>(g)] = next;
        }
        if (overflow) ++overflows;
        if (overflow || Z[static_cast<std::size_t>(k)] != 0) continue;  // indicator is zero
        for (std::size_t q = 0; q < ms.size(); ++q) {
            double v = 1;
            for (auto& [g, p] : ms[q].powers())
                for (int r = 0; r < p; ++r) v *= static_cast<double>(Z[static_cast<std::size_t>(g)]);
            sum[q] += v;
            sum2[q] += v * v;
        }
    }
    std::vector<McEstimate> out(ms.size());
    const double T = static_cast<double>(trials);
    for (std::size_t q = 0; q < ms.size(); ++q) {
        const double mean = sum[q] / T;
        const double var = std::max(0.0, (sum2[q] - T * mean * mean) / (T - 1));
        out[q] = {mean, std::sqrt(var / T), overflows};
    }
    return out;
}

inline McEstimate bgw_mc_moment(int k, const MultiIndex& m, std::uint64_t trials, std::uint64_t seed) {
    return bgw_mc_moments(k, {m}, trials, seed).front();
}

// --- overlap oracle ---------------------------------------------------------------

/// The maximal self-overlap set by direct letter comparison.
inline OverlapSet brute_overlap_check(const Word& w) {
    const int k = w.length();
    if (k > 20) throw InputError("brute_overlap_check is limited to k <= 20");
    OverlapSet out;
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j <= k - 1; ++j) {
            if (i != 0 && w.at(k + 1 - i) == w.at(k + 1 - j)) continue;
            int l = 0;
            while (l + 1 <= k - j && w.at(k + 1 - i - (l + 1)) == w.at(k + 1 - j - (l + 1))) ++l;
            out.insert(i, j, l);
        }
    }
    return out;
}

} // namespace wordfn

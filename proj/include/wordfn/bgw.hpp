#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <type_traits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "jet.hpp"
#include "numeric.hpp"

// Poisson(1) Bienaymé–Galton–Watson process: extinction probabilities, the
// univariate and multivariate generating functions, and extinction-restricted
// moments obtained from truncated jets.

namespace wordfn {

/// eta_0 = 0, eta_i = exp(eta_{i-1} - 1).  eta_i = P(Z_i = 0).
template <class Real>
class EtaSequence {
public:
    EtaSequence() = default;
    explicit EtaSequence(int maxIndex) {
        using std::exp;
        if (maxIndex < 0) throw InputError("eta range must be non-negative");
        values_.reserve(static_cast<std::size_t>(maxIndex) + 1);
        values_.emplace_back(0);
        for (int i = 1; i <= maxIndex; ++i) values_.push_back(Real(exp(values_.back() - Real(1))));
    }

    int max_index() const { return static_cast<int>(values_.size()) - 1; }

    const Real& operator[](int i) const {
        if (i < 0 || i > max_index())
            throw InputError("eta index " + std::to_string(i) + " outside [0, " + std::to_string(max_index()) + "]");
        return values_[static_cast<std::size_t>(i)];
    }

    std::span<const Real> values() const { return values_; }

private:
    std::vector<Real> values_;
};

template <class Real = double>
EtaSequence<Real> eta_sequence(int maxIndex) {
    return EtaSequence<Real>(maxIndex);
}

/// g_0(s) = s, g_t(s) = exp(g_{t-1}(s) - 1).
template <class Real>
Real g_eval(int t, Real s) {
    using std::exp;
    if (t < 0) throw InputError("g_t requires t >= 0");
    for (int r = 0; r < t; ++r) s = Real(exp(s - Real(1)));
    return s;
}

/// G_0(x_0) = x_0, G_t(x_0..x_t) = x_0 * f(G_{t-1}(x_1..x_t)), f(s) = e^{s-1}.
template <class Real>
Real G_eval(int t, std::span<const Real> x) {
    using std::exp;
    if (t < 0) throw InputError("G_t requires t >= 0");
    if (x.size() != static_cast<std::size_t>(t) + 1)
        throw InputError("G_" + std::to_string(t) + " expects " + std::to_string(t + 1) + " arguments, got " +
                         std::to_string(x.size()));
    Real y = x[static_cast<std::size_t>(t)];
    for (int p = t - 1; p >= 0; --p) y = x[static_cast<std::size_t>(p)] * Real(exp(y - Real(1)));
    return y;
}

template <class Real>
Real G_eval(int t, const std::vector<Real>& x) {
    return G_eval<Real>(t, std::span<const Real>(x));
}

/// Exponents (m_1, ..., m_k) of a mixed moment E[Z_1^{m_1} ... Z_k^{m_k} ...],
/// stored sparsely as generation -> power.  Generation 0 is rejected by the
/// moment routines since Z_0 = 1.
class MultiIndex {
public:
    MultiIndex() = default;

    static MultiIndex unit(int gen) { return MultiIndex{}.with(gen, 1); }
    static MultiIndex pair(int g1, int g2) { return MultiIndex{}.with(g1, 1).with(g2, 1); }

    MultiIndex with(int gen, int power) const {
        if (gen < 0 || power < 0) throw InputError("multi-index entries must be non-negative");
        MultiIndex out = *this;
        if (power > 0) out.powers_[gen] += power;
        return out;
    }

    int degree() const {
        int d = 0;
        for (auto& [g, p] : powers_) d += p;
        return d;
    }
    int power(int gen) const {
        auto it = powers_.find(gen);
        return it == powers_.end() ? 0 : it->second;
    }
    const std::map<int, int>& powers() const { return powers_; }
    int max_generation() const { return powers_.empty() ? 0 : powers_.rbegin()->first; }

    auto operator<=>(const MultiIndex&) const = default;
    bool operator==(const MultiIndex&) const = default;

private:
    std::map<int, int> powers_;
};

inline constexpr int kDefaultMomentDegree = 2;

/// E[ Z_1^{m_1} ... Z_k^{m_k} 1{Z_k = 0} ] for the Poisson(1) process.
///
/// Each variable is written x_t = base_t * e^{u_t}, so the Euler operator
/// x_t d/dx_t becomes d/du_t.  Jets in the u-variables of the generations
/// carried by `m` are pushed through G_k = x_0 f(x_1 f(... f(x_k))) and
/// evaluated at base = (1, ..., 1, 0).
template <class Real>
Real extinct_moment(int k, const MultiIndex& m, int maxDegree = kDefaultMomentDegree) {
    if (k < 0) throw InputError("generation k must be non-negative");
    if (m.degree() > maxDegree)
        throw ComputationError("moment degree " + std::to_string(m.degree()) + " exceeds ceiling " +
                               std::to_string(maxDegree));
    if (m.power(0) > 0) throw InputError("moments in Z_0 are not supported (Z_0 = 1)");
    if (m.max_generation() > k)
        throw InputError("multi-index generation exceeds k = " + std::to_string(k));
    if (m.power(k) > 0) return Real(0);

    std::vector<int> gens;
    for (auto& [g, p] : m.powers()) gens.push_back(g);
    const int vars = static_cast<int>(gens.size());
    const int degree = m.degree();
    auto layout = std::make_shared<const JetLayout>(vars, degree);

    auto variable_of = [&](int t) {
        auto it = std::find(gens.begin(), gens.end(), t);
        return it == gens.end() ? -1 : static_cast<int>(it - gens.begin());
    };
    auto slot = [&](int t, const Real& base) {
        int v = variable_of(t);
        if (v < 0) return Jet<Real>(layout, base);
        return exp(Jet<Real>::variable(layout, v)) * base;
    };

    Jet<Real> y = slot(k, Real(0));
    for (int t = k - 1; t >= 0; --t) {
        Jet<Real> e = exp(y.add_constant(Real(-1)));
        y = slot(t, Real(1)) * e;
    }
    std::vector<int> alpha(static_cast<std::size_t>(vars));
    for (int v = 0; v < vars; ++v) alpha[v] = m.power(gens[v]);
    return y.derivative(alpha);
}

/// E[Z_i 1{Z_k=0}] = prod_{t=0}^{i} eta_{k-t}.  `eta` is anything indexable
/// by generation (numeric EtaSequence or a symbolic basis).
template <class Eta>
auto closed_form_first_moment(const Eta& eta, int k, int i) -> std::decay_t<decltype(eta[0])> {
    using Real = std::decay_t<decltype(eta[0])>;
    if (i < 0 || i > k) throw InputError("first moment index out of range");
    if (i == k) return Real(0);
    Real out(1);
    for (int t = 0; t <= i; ++t) out = out * eta[k - t];
    return out;
}

/// E[Z_i Z_j 1{Z_k=0}] for one process, 0 <= i <= j <= k-1:
///   eta_k * (prod_{s=1}^{i} eta_{k-s}) * (sum_{t=0}^{i} prod_{s=t+1}^{j} eta_{k-s}).
/// With i = j = 0 this is eta_k, consistent with Z_0 = 1.
template <class Eta>
auto closed_form_second_moment(const Eta& eta, int k, int i, int j) -> std::decay_t<decltype(eta[0])> {
    using Real = std::decay_t<decltype(eta[0])>;
    if (i > j) std::swap(i, j);
    if (i < 0 || j > k - 1) throw InputError("second moment indices must satisfy 0 <= i <= j <= k-1");
    Real head = eta[k];
    for (int s = 1; s <= i; ++s) head = head * eta[k - s];
    Real sum(0);
    for (int t = 0; t <= i; ++t) {
        Real prod(1);
        for (int s = t + 1; s <= j; ++s) prod = prod * eta[k - s];
        sum = sum + prod;
    }
    return head * sum;
}

/// E[1{Z_k=0}], E[Z_i 1{Z_k=0}] and E[Z_i Z_j 1{Z_k=0}] for 0 <= i, j <= k.
/// Entries depend only on k, never on the word.
template <class Real>
class MomentTable {
public:
    /// Derivative path: every entry is an extinct_moment jet evaluation.
    static MomentTable from_jets(int k) {
        MomentTable t(k);
        t.first_[0] = extinct_moment<Real>(k, MultiIndex{});
        for (int i = 1; i <= k; ++i) t.first_[i] = extinct_moment<Real>(k, MultiIndex::unit(i));
        for (int i = 0; i <= k; ++i)
            for (int j = i; j <= k; ++j)
                t.set_second(i, j, i == 0 ? t.first_[j] : extinct_moment<Real>(k, MultiIndex::pair(i, j)));
        return t;
    }

    /// Closed-form path.
    template <class Eta>
    static MomentTable from_closed_forms(const Eta& eta, int k) {
        MomentTable t(k);
        for (int i = 0; i <= k; ++i) t.first_[i] = closed_form_first_moment(eta, k, i);
        for (int i = 0; i <= k; ++i)
            for (int j = i; j <= k; ++j)
                t.set_second(i, j, j == k ? Real(0) : closed_form_second_moment(eta, k, i, j));
        return t;
    }

    int k() const { return k_; }
    const Real& extinct() const { return first_[0]; }
    const Real& first(int i) const { return first_[static_cast<std::size_t>(i)]; }
    const Real& second(int i, int j) const { return second_[index(i, j)]; }

private:
    explicit MomentTable(int k) : k_(k) {
        if (k < 1) throw InputError("moment table needs k >= 1");
        const std::size_t n = static_cast<std::size_t>(k) + 1;
        first_.assign(n, Real(0));
        second_.assign(n * n, Real(0));
    }
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(i) * (static_cast<std::size_t>(k_) + 1) + static_cast<std::size_t>(j);
    }
    void set_second(int i, int j, const Real& v) {
        second_[index(i, j)] = v;
        second_[index(j, i)] = v;
    }

    int k_;
    std::vector<Real> first_;
    std::vector<Real> second_;
};

} // namespace wordfn

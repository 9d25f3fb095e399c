#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <type_traits>
#include <utility>
#include <vector>

#include "bgw.hpp"
#include "numeric.hpp"
#include "word.hpp"

// The word constants c_approx^1, c_approx^2, c_int, c_cyc and the variance
// constants c(w), c~(w).  Everything is written against a "basis" that
// supplies eta_i, g_l, G_t, rational scalars and the per-k moment table, so
// the same code runs numerically and symbolically.

namespace wordfn {

// --- quadratic forms in the generation sizes -------------------------------

/// a_0 + sum_v a_v Z_v, variables numbered v = process * (k+1) + generation.
struct LinearForm {
    Rational constant = 0;
    std::map<int, Rational> coef;

    LinearForm& operator+=(const LinearForm& o) {
        constant += o.constant;
        for (auto& [v, c] : o.coef) coef[v] += c;
        return *this;
    }
    friend LinearForm operator+(LinearForm a, const LinearForm& b) { return a += b; }
    friend LinearForm operator*(Rational s, LinearForm a) {
        a.constant *= s;
        for (auto& [v, c] : a.coef) c *= s;
        return a;
    }
    friend LinearForm operator-(const LinearForm& a, const LinearForm& b) { return a + Rational(-1) * b; }
    friend LinearForm operator+(LinearForm a, const Rational& s) {
        a.constant += s;
        return a;
    }
};

/// Quadratic polynomial; keys (-1,-1) constant, (-1,v) linear, (u,v) u <= v.
class QuadraticForm {
public:
    using Key = std::pair<int, int>;

    static QuadraticForm product(const LinearForm& x, const LinearForm& y) {
        QuadraticForm q;
        q.add({-1, -1}, x.constant * y.constant);
        for (auto& [v, c] : y.coef) q.add({-1, v}, x.constant * c);
        for (auto& [v, c] : x.coef) q.add({-1, v}, y.constant * c);
        for (auto& [u, cu] : x.coef)
            for (auto& [v, cv] : y.coef) q.add({std::min(u, v), std::max(u, v)}, cu * cv);
        return q;
    }

    QuadraticForm& operator+=(const QuadraticForm& o) {
        for (auto& [key, c] : o.terms_) add(key, c);
        return *this;
    }
    QuadraticForm& operator*=(const Rational& s) {
        for (auto& [key, c] : terms_) c *= s;
        return *this;
    }

    const std::map<Key, Rational>& terms() const { return terms_; }

private:
    void add(const Key& key, const Rational& c) {
        if (c == 0) return;
        Rational& slot = terms_[key];
        slot += c;
        if (slot == 0) terms_.erase(key);
    }

    std::map<Key, Rational> terms_;
};

namespace detail {

inline LinearForm sum_of(int process, int k, const std::vector<int>& gens) {
    LinearForm f;
    for (int g : gens) f.coef[process * (k + 1) + g] += 1;
    return f;
}

inline std::vector<int> all_generations(int k) {
    std::vector<int> out;
    for (int i = 0; i <= k; ++i) out.push_back(i);
    return out;
}

} // namespace detail

/// Q1 = 1/2 [ S(S-1) + Z_{A-}(Z_{A-} - 2Z_{A+}) + Z_{B-}(Z_{B-} - 2Z_{B+}) ],
/// S = Z_0 + ... + Z_k.
inline QuadraticForm q1_form(const Word& w) {
    const int k = w.length();
    const PositionSets ps = position_sets(w);
    const LinearForm S = detail::sum_of(0, k, detail::all_generations(k));
    QuadraticForm q = QuadraticForm::product(S, S + Rational(-1));
    for (char c : {'a', 'b'}) {
        LinearForm minus = detail::sum_of(0, k, ps.minus(c));
        LinearForm plus = detail::sum_of(0, k, ps.plus(c));
        q += QuadraticForm::product(minus, minus - Rational(2) * plus);
    }
    q *= Rational(1, 2);
    return q;
}

/// Q2 over two processes: 1/2 [ (S1+S2-2)(S1+S2+1) + sum_c Zbar_{C-}(Zbar_{C-} - 2 Zbar_{C+}) ].
inline QuadraticForm q2_form(const Word& w) {
    const int k = w.length();
    const PositionSets ps = position_sets(w);
    const auto gens = detail::all_generations(k);
    const LinearForm S = detail::sum_of(0, k, gens) + detail::sum_of(1, k, gens);
    QuadraticForm q = QuadraticForm::product(S + Rational(-2), S + Rational(1));
    for (char c : {'a', 'b'}) {
        LinearForm minus = detail::sum_of(0, k, ps.minus(c)) + detail::sum_of(1, k, ps.minus(c));
        LinearForm plus = detail::sum_of(0, k, ps.plus(c)) + detail::sum_of(1, k, ps.plus(c));
        q += QuadraticForm::product(minus, minus - Rational(2) * plus);
    }
    q *= Rational(1, 2);
    return q;
}

/// E[Q(Z) 1{Z_k=0}] for a single process.
template <class Basis>
auto expect_single(const QuadraticForm& q, const MomentTable<typename Basis::value_type>& m, const Basis& basis) {
    using Real = typename Basis::value_type;
    Real out(0);
    for (auto& [key, c] : q.terms()) {
        const auto [u, v] = key;
        Real e = (u < 0 && v < 0) ? m.extinct() : (u < 0 ? m.first(v) : m.second(u, v));
        out = out + basis.scalar(c) * e;
    }
    return out;
}

/// E[Q(Z1; Z2) 1{Z1_k = Z2_k = 0}] for two independent processes; factorizes
/// into products of single-process moments.
template <class Basis>
auto expect_pair(const QuadraticForm& q, const MomentTable<typename Basis::value_type>& m, const Basis& basis) {
    using Real = typename Basis::value_type;
    const int n = m.k() + 1;
    auto proc = [n](int v) { return v / n; };
    auto gen = [n](int v) { return v % n; };
    Real out(0);
    for (auto& [key, c] : q.terms()) {
        const auto [u, v] = key;
        Real e;
        if (u < 0 && v < 0) e = m.extinct() * m.extinct();
        else if (u < 0) e = m.first(gen(v)) * m.extinct();
        else if (proc(u) == proc(v)) e = m.second(gen(u), gen(v)) * m.extinct();
        else e = m.first(gen(u)) * m.first(gen(v));
        out = out + basis.scalar(c) * e;
    }
    return out;
}

// --- the four constants ----------------------------------------------------

template <class Basis>
auto c_approx1(const Word& w, const Basis& basis) {
    return expect_single(q1_form(w), basis.moments(w.length()), basis);
}

template <class Basis>
auto c_approx2(const Word& w, const Basis& basis) {
    return expect_pair(q2_form(w), basis.moments(w.length()), basis);
}

namespace detail {

/// prod_{s=from}^{to} eta_{k-s}; empty products are 1.
template <class Basis>
auto eta_run(const Basis& basis, int k, int from, int to) {
    typename Basis::value_type out(1);
    for (int s = from; s <= to; ++s) out = out * basis.eta(k - s);
    return out;
}

} // namespace detail

/// 2 sum_M (prod_{s<i} eta_{k-s}) (prod_{s<j} eta_{k-s}) g_l(eta_{k-i-l} eta_{k-j-l}).
template <class Basis>
auto c_int(const Word& w, const Basis& basis) {
    using Real = typename Basis::value_type;
    const int k = w.length();
    Real out(0);
    for (auto& [i, j, l] : overlap_set(w).entries()) {
        Real term = detail::eta_run(basis, k, 0, i - 1) * detail::eta_run(basis, k, 0, j - 1) *
                    basis.g(l, basis.eta(k - i - l) * basis.eta(k - j - l));
        out = out + term + term;
    }
    return out;
}

/// Colinear vector x^{(t)}: x_s = eta_{k-j-l} where s = l - t (mod m), 1 elsewhere.
template <class Basis>
auto colinear_arguments(const Basis& basis, int k, int j, int l, int m, int t) {
    using Real = typename Basis::value_type;
    std::vector<Real> x(static_cast<std::size_t>(l + m) + 1, Real(1));
    const int residue = (((l - t) % m) + m) % m;
    for (int s = 0; s <= l + m; ++s)
        if (s % m == residue) x[static_cast<std::size_t>(s)] = basis.eta(k - j - l);
    return x;
}

/// sum_M (prod_{s<i} eta_{k-s}) [ branched + colinear ], m = j - i.
template <class Basis>
auto c_cyc(const Word& w, const Basis& basis) {
    using Real = typename Basis::value_type;
    const int k = w.length();
    Real out(0);
    for (auto& [i, j, l] : overlap_set(w).entries()) {
        const int m = j - i;
        Real branched(0);
        for (int t = 0; t <= i - 1; ++t) branched = branched + detail::eta_run(basis, k, t + 1, j - 1);
        branched = branched * basis.g(l, basis.eta(k - i - l) * basis.eta(k - j - l));
        Real colinear(1);
        for (int t = 0; t <= m - 1; ++t) colinear = colinear * basis.G(l + m, colinear_arguments(basis, k, j, l, m, t));
        out = out + detail::eta_run(basis, k, 0, i - 1) * (branched + colinear);
    }
    return out;
}

template <class Real>
struct ConstantBundle {
    Word word;
    unsigned digits = 0;
    Real cApprox1, cApprox2, cInt, cCyc, c, cTilde;
};

/// All six constants against one basis.
template <class Basis>
ConstantBundle<typename Basis::value_type> constants_in(const Word& w, const Basis& basis) {
    using Real = typename Basis::value_type;
    ConstantBundle<Real> b;
    b.word = w;
    const Real etak = basis.eta(w.length());
    b.cApprox1 = c_approx1(w, basis);
    b.cApprox2 = c_approx2(w, basis);
    b.cInt = c_int(w, basis);
    b.cCyc = c_cyc(w, basis);
    b.c = (Real(1) + b.cApprox1 + b.cApprox1 - etak) * etak - b.cApprox2 + b.cInt;
    b.cTilde = (Real(1) + b.cCyc + b.cCyc - etak) * etak - b.cApprox2 + b.cInt;
    return b;
}

// --- numeric basis ----------------------------------------------------------

/// Moment tables depend only on k (and the working precision); computed once
/// through the jet path and shared.
template <class Real>
std::shared_ptr<const MomentTable<Real>> cached_moments(int k) {
    static std::mutex mutex;
    static std::map<std::pair<int, unsigned>, std::shared_ptr<const MomentTable<Real>>> cache;
    unsigned prec = 0;
    if constexpr (!std::is_same_v<Real, double>) prec = Real::default_precision();
    std::lock_guard lock(mutex);
    auto& slot = cache[{k, prec}];
    if (!slot) slot = std::make_shared<const MomentTable<Real>>(MomentTable<Real>::from_jets(k));
    return slot;
}

template <class Real>
class NumericBasis {
public:
    using value_type = Real;

    explicit NumericBasis(const EtaSequence<Real>& eta) : eta_(&eta) {}

    Real eta(int i) const { return (*eta_)[i]; }
    Real g(int l, const Real& s) const { return g_eval<Real>(l, s); }
    Real G(int t, const std::vector<Real>& x) const { return G_eval<Real>(t, x); }
    Real scalar(const Rational& q) const { return from_rational<Real>(q); }

    const MomentTable<Real>& moments(int k) const {
        auto it = held_.find(k);
        if (it == held_.end()) it = held_.emplace(k, cached_moments<Real>(k)).first;
        return *it->second;
    }

private:
    const EtaSequence<Real>* eta_;
    mutable std::map<int, std::shared_ptr<const MomentTable<Real>>> held_;
};

/// Constants at the current working precision of Real (see PrecisionScope).
template <class Real>
ConstantBundle<Real> leading_constants(const Word& w, const EtaSequence<Real>& eta) {
    if (eta.max_index() < w.length()) throw InputError("eta sequence shorter than the word");
    return constants_in(w, NumericBasis<Real>(eta));
}

/// Convenience entry point: sets the precision for the duration of the call.
/// Not for use from several threads at once; the sweep sets the precision
/// once and calls the overload above.
inline ConstantBundle<HighFloat> leading_constants(const Word& w, unsigned digits = kDefaultDigits) {
    PrecisionScope scope(digits);
    auto eta = eta_sequence<HighFloat>(w.length());
    auto b = leading_constants(w, eta);
    b.digits = digits;
    return b;
}

} // namespace wordfn

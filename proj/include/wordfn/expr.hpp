#pragma once

#include <cctype>
#include <compare>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bgw.hpp"
#include "errors.hpp"
#include "numeric.hpp"

// Exact polynomials over the atoms eta_i and g_l(m), m a monomial in atoms.
// Coefficients are rationals.  Atoms are kept normalized:
//   g_0(s) = s, g_l(0) = eta_l, g_l(1) = 1, g_l(eta_q) = eta_{q+l},
//   g_l(g_l'(s)) = g_{l+l'}(s), and eta_0 = 0.

namespace wordfn {

class Monomial;

/// eta_i (i >= 1) or g_l(arg) (l >= 1, arg a monomial of degree >= 2 or a
/// non-atomic product).
class Atom {
public:
    enum class Kind { Eta, G };

    static Atom eta(int i) {
        if (i < 1) throw InputError("eta atom index must be >= 1");
        return Atom(Kind::Eta, i, nullptr);
    }
    static Atom g(int l, const Monomial& arg);

    Kind kind() const { return kind_; }
    bool is_eta() const { return kind_ == Kind::Eta; }
    int index() const { return index_; }  // i for eta_i, l for g_l
    const Monomial& arg() const { return *arg_; }

    friend std::strong_ordering operator<=>(const Atom& x, const Atom& y);
    friend bool operator==(const Atom& x, const Atom& y) { return (x <=> y) == 0; }

private:
    Atom(Kind kind, int index, std::shared_ptr<const Monomial> arg)
        : kind_(kind), index_(index), arg_(std::move(arg)) {}

    Kind kind_;
    int index_;
    std::shared_ptr<const Monomial> arg_;
};

/// Product of atoms with positive integer exponents; the empty product is 1.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(const Atom& a, int power = 1) {
        if (power > 0) factors_.emplace(a, power);
    }

    bool is_one() const { return factors_.empty(); }
    int power(const Atom& a) const {
        auto it = factors_.find(a);
        return it == factors_.end() ? 0 : it->second;
    }
    int degree() const {
        int d = 0;
        for (auto& [a, p] : factors_) d += p;
        return d;
    }
    const std::map<Atom, int>& factors() const { return factors_; }

    Monomial without(const Atom& a) const {
        Monomial out = *this;
        out.factors_.erase(a);
        return out;
    }

    friend Monomial operator*(Monomial x, const Monomial& y) {
        for (auto& [a, p] : y.factors_) x.factors_[a] += p;
        return x;
    }

    friend std::strong_ordering operator<=>(const Monomial& x, const Monomial& y) {
        // graded: lower total degree first, then atom-wise
        if (auto c = x.degree() <=> y.degree(); c != 0) return c;
        auto i = x.factors_.begin();
        auto j = y.factors_.begin();
        for (; i != x.factors_.end() && j != y.factors_.end(); ++i, ++j) {
            if (auto c = i->first <=> j->first; c != 0) return c;
            if (auto c = i->second <=> j->second; c != 0) return c;
        }
        return x.factors_.size() <=> y.factors_.size();
    }
    friend bool operator==(const Monomial& x, const Monomial& y) { return (x <=> y) == 0; }

private:
    std::map<Atom, int> factors_;
};

inline Atom Atom::g(int l, const Monomial& arg) {
    if (l < 1) throw InputError("g atom level must be >= 1");
    return Atom(Kind::G, l, std::make_shared<const Monomial>(arg));
}

inline std::strong_ordering operator<=>(const Atom& x, const Atom& y) {
    if (x.kind_ != y.kind_) return x.kind_ == Atom::Kind::Eta ? std::strong_ordering::less : std::strong_ordering::greater;
    if (auto c = x.index_ <=> y.index_; c != 0) return c;
    if (x.kind_ == Atom::Kind::Eta) return std::strong_ordering::equal;
    return *x.arg_ <=> *y.arg_;
}

class SymbolicExpr {
public:
    SymbolicExpr() = default;
    SymbolicExpr(int c) : SymbolicExpr(Rational(c)) {}
    SymbolicExpr(const Rational& c) {
        if (c != 0) terms_.emplace(Monomial{}, c);
    }
    SymbolicExpr(const Monomial& m, const Rational& c = Rational(1)) {
        if (c != 0) terms_.emplace(m, c);
    }

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// The single monomial of a one-term expression with coefficient 1.
    bool is_unit_monomial() const { return terms_.size() == 1 && terms_.begin()->second == 1; }
    const Monomial& leading() const { return terms_.begin()->first; }

    SymbolicExpr& operator+=(const SymbolicExpr& o) {
        for (auto& [m, c] : o.terms_) add(m, c);
        return *this;
    }
    SymbolicExpr& operator-=(const SymbolicExpr& o) {
        for (auto& [m, c] : o.terms_) add(m, -c);
        return *this;
    }
    SymbolicExpr& operator*=(const SymbolicExpr& o) { return *this = *this * o; }

    friend SymbolicExpr operator+(SymbolicExpr x, const SymbolicExpr& y) { return x += y; }
    friend SymbolicExpr operator-(SymbolicExpr x, const SymbolicExpr& y) { return x -= y; }
    friend SymbolicExpr operator-(const SymbolicExpr& x) { return SymbolicExpr{} - x; }
    friend SymbolicExpr operator*(const SymbolicExpr& x, const SymbolicExpr& y) {
        SymbolicExpr out;
        for (auto& [mx, cx] : x.terms_)
            for (auto& [my, cy] : y.terms_) out.add(mx * my, cx * cy);
        return out;
    }
    friend SymbolicExpr operator/(const SymbolicExpr& x, int d) {
        SymbolicExpr out;
        for (auto& [m, c] : x.terms_) out.add(m, c / d);
        return out;
    }

    bool operator==(const SymbolicExpr&) const = default;

private:
    void add(const Monomial& m, const Rational& c) {
        auto [it, fresh] = terms_.try_emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::map<Monomial, Rational> terms_;
};

// --- normalized constructors -------------------------------------------------

inline SymbolicExpr sym_eta(int i) {
    if (i < 0) throw InputError("eta index must be non-negative");
    if (i == 0) return SymbolicExpr{};
    return SymbolicExpr(Monomial(Atom::eta(i)));
}

/// g_l(s) for s = 0 or a single monomial with coefficient 1.
inline SymbolicExpr sym_g(int l, const SymbolicExpr& s) {
    if (l < 0) throw InputError("g level must be non-negative");
    if (l == 0) return s;
    if (s.is_zero()) return sym_eta(l);
    if (!s.is_unit_monomial()) throw StructuralError("g_l is only represented on monomials with unit coefficient");
    const Monomial& m = s.leading();
    if (m.is_one()) return SymbolicExpr(1);
    if (m.factors().size() == 1 && m.factors().begin()->second == 1) {
        const Atom& a = m.factors().begin()->first;
        if (a.is_eta()) return sym_eta(a.index() + l);
        return SymbolicExpr(Monomial(Atom::g(a.index() + l, a.arg())));
    }
    return SymbolicExpr(Monomial(Atom::g(l, m)));
}

/// G_t(x_0..x_t) = x_0 * g_1(G_{t-1}(x_1..x_t)) with symbolic arguments.
inline SymbolicExpr sym_G(int t, const std::vector<SymbolicExpr>& x) {
    if (x.size() != static_cast<std::size_t>(t) + 1) throw InputError("G_t dimension mismatch");
    SymbolicExpr y = x[static_cast<std::size_t>(t)];
    for (int p = t - 1; p >= 0; --p) y = x[static_cast<std::size_t>(p)] * sym_g(1, y);
    return y;
}

/// Indexable eta basis, so closed-form routines can run symbolically.
struct SymbolicEta {
    SymbolicExpr operator[](int i) const { return sym_eta(i); }
};

// --- evaluation --------------------------------------------------------------

template <class Real>
Real eval_atom(const Atom& a, const EtaSequence<Real>& eta);

template <class Real>
Real eval_monomial(const Monomial& m, const EtaSequence<Real>& eta) {
    Real out(1);
    for (auto& [a, p] : m.factors()) {
        Real v = eval_atom(a, eta);
        for (int r = 0; r < p; ++r) out *= v;
    }
    return out;
}

template <class Real>
Real eval_atom(const Atom& a, const EtaSequence<Real>& eta) {
    if (a.is_eta()) return eta[a.index()];
    return g_eval<Real>(a.index(), eval_monomial(a.arg(), eta));
}

template <class Real>
Real eval_symbolic(const SymbolicExpr& e, const EtaSequence<Real>& eta) {
    Real out(0);
    for (auto& [m, c] : e.terms()) out += from_rational<Real>(c) * eval_monomial(m, eta);
    return out;
}

// --- printing ----------------------------------------------------------------

std::string to_string(const Monomial& m);

inline std::string to_string(const Atom& a) {
    if (a.is_eta()) return "eta_" + std::to_string(a.index());
    return "g_" + std::to_string(a.index()) + "(" + to_string(a.arg()) + ")";
}

inline std::string to_string(const Monomial& m) {
    if (m.is_one()) return "1";
    std::string out;
    for (auto& [a, p] : m.factors()) {
        if (!out.empty()) out += '*';
        out += to_string(a);
        if (p > 1) out += '^' + std::to_string(p);
    }
    return out;
}

/// Terms in descending graded order, e.g. "-2*eta_1^2 + eta_1".
inline std::string to_string(const SymbolicExpr& e) {
    if (e.is_zero()) return "0";
    std::string out;
    for (auto it = e.terms().rbegin(); it != e.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        Rational mag = c < 0 ? Rational(-c) : c;
        if (out.empty()) out += c < 0 ? "-" : "";
        else out += c < 0 ? " - " : " + ";
        if (m.is_one()) out += rational_string(mag);
        else if (mag == 1) out += to_string(m);
        else out += rational_string(mag) + "*" + to_string(m);
    }
    return out;
}

// --- parsing -----------------------------------------------------------------

namespace detail {

class ExprParser {
public:
    explicit ExprParser(std::string_view text) : s_(text) {}

    SymbolicExpr parse() {
        SymbolicExpr e = sum();
        skip();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    SymbolicExpr sum() {
        skip();
        bool neg = false;
        if (peek() == '-' || peek() == '+') neg = (get() == '-');
        SymbolicExpr e = product();
        if (neg) e = -e;
        for (;;) {
            skip();
            if (peek() != '+' && peek() != '-') return e;
            bool minus = (get() == '-');
            SymbolicExpr t = product();
            e = minus ? e - t : e + t;
        }
    }

    SymbolicExpr product() {
        SymbolicExpr e = power();
        for (;;) {
            skip();
            if (peek() == '*') {
                ++pos_;
                e = e * power();
            } else if (peek() == '/') {
                ++pos_;
                skip();
                BigInt d = integer();
                if (d == 0) fail("division by zero");
                e = e * SymbolicExpr(Rational(1, d));
            } else {
                return e;
            }
        }
    }

    SymbolicExpr power() {
        SymbolicExpr base = primary();
        skip();
        if (peek() != '^') return base;
        ++pos_;
        skip();
        int p = static_cast<int>(integer());
        SymbolicExpr out(1);
        for (int r = 0; r < p; ++r) out = out * base;
        return out;
    }

    SymbolicExpr primary() {
        skip();
        if (std::isdigit(static_cast<unsigned char>(peek()))) return SymbolicExpr(Rational(integer()));
        if (peek() == '(') {
            ++pos_;
            SymbolicExpr e = sum();
            expect(')');
            return e;
        }
        if (s_.substr(pos_, 4) == "eta_") {
            pos_ += 4;
            return sym_eta(static_cast<int>(integer()));
        }
        if (s_.substr(pos_, 2) == "g_") {
            pos_ += 2;
            int l = static_cast<int>(integer());
            expect('(');
            SymbolicExpr arg = sum();
            expect(')');
            return sym_g(l, arg);
        }
        fail("expected a number, eta_i, g_l(...) or '('");
    }

    BigInt integer() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer");
        return BigInt(std::string(s_.substr(start, pos_ - start)));
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    char get() { return s_[pos_++]; }
    void expect(char c) {
        skip();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw InputError("expression parse error at offset " + std::to_string(pos_) + ": " + what);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Reads the printed notation back, e.g. "2*eta_3*g_1(eta_1*eta_2) - 3*eta_3^2".
inline SymbolicExpr parse_symbolic(std::string_view text) { return detail::ExprParser(text).parse(); }

} // namespace wordfn

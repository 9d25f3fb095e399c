#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <vector>

#include "errors.hpp"

namespace wordfn {

/// Monomial layout for jets in `vars` variables truncated at total degree `degree`.
class JetLayout {
public:
    JetLayout(int vars, int degree) : vars_(vars), degree_(degree) {
        std::vector<int> alpha(static_cast<std::size_t>(vars), 0);
        // graded order, constant term first
        for (int total = 0; total <= degree; ++total) fill(alpha, 0, total);
        for (std::size_t a = 0; a < monomials_.size(); ++a) index_[monomials_[a]] = a;
        for (std::size_t a = 0; a < monomials_.size(); ++a) {
            for (std::size_t b = 0; b < monomials_.size(); ++b) {
                std::vector<int> sum(static_cast<std::size_t>(vars));
                int total = 0;
                for (int v = 0; v < vars; ++v) {
                    sum[v] = monomials_[a][v] + monomials_[b][v];
                    total += sum[v];
                }
                if (total <= degree) products_.push_back({a, b, index_.at(sum)});
            }
        }
    }

    int vars() const { return vars_; }
    int degree() const { return degree_; }
    std::size_t size() const { return monomials_.size(); }
    const std::vector<int>& monomial(std::size_t a) const { return monomials_[a]; }
    std::size_t index_of(const std::vector<int>& alpha) const { return index_.at(alpha); }

    struct Product {
        std::size_t lhs, rhs, out;
    };
    const std::vector<Product>& products() const { return products_; }

private:
    void fill(std::vector<int>& alpha, int v, int remaining) {
        if (vars_ == 0) {
            if (remaining == 0) monomials_.push_back(alpha);
            return;
        }
        if (v == vars_ - 1) {
            alpha[v] = remaining;
            monomials_.push_back(alpha);
            alpha[v] = 0;
            return;
        }
        for (int e = remaining; e >= 0; --e) {
            alpha[v] = e;
            fill(alpha, v + 1, remaining - e);
        }
        alpha[v] = 0;
    }

    int vars_;
    int degree_;
    std::vector<std::vector<int>> monomials_;
    std::map<std::vector<int>, std::size_t> index_;
    std::vector<Product> products_;
};

/// Truncated multivariate Taylor polynomial about the origin.
template <class Real>
class Jet {
public:
    explicit Jet(std::shared_ptr<const JetLayout> layout, const Real& c = Real(0))
        : layout_(std::move(layout)), coef_(layout_->size(), Real(0)) {
        coef_[0] = c;
    }

    static Jet variable(std::shared_ptr<const JetLayout> layout, int v, const Real& value = Real(0)) {
        Jet j(layout, value);
        if (layout->degree() >= 1) {
            std::vector<int> alpha(static_cast<std::size_t>(layout->vars()), 0);
            alpha[static_cast<std::size_t>(v)] = 1;
            j.coef_[layout->index_of(alpha)] = Real(1);
        }
        return j;
    }

    const Real& constant() const { return coef_[0]; }
    const Real& coefficient(const std::vector<int>& alpha) const { return coef_[layout_->index_of(alpha)]; }

    /// Mixed partial derivative at the origin: alpha! * coefficient.
    Real derivative(const std::vector<int>& alpha) const {
        Real f(1);
        for (int e : alpha)
            for (int r = 2; r <= e; ++r) f *= Real(r);
        return f * coefficient(alpha);
    }

    Jet& operator+=(const Jet& o) {
        for (std::size_t a = 0; a < coef_.size(); ++a) coef_[a] += o.coef_[a];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        for (std::size_t a = 0; a < coef_.size(); ++a) coef_[a] -= o.coef_[a];
        return *this;
    }
    Jet& operator*=(const Real& s) {
        for (auto& c : coef_) c *= s;
        return *this;
    }
    Jet& add_constant(const Real& s) {
        coef_[0] += s;
        return *this;
    }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(Jet a, const Real& s) { return a *= s; }
    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet out(a.layout_);
        for (auto& p : a.layout_->products()) out.coef_[p.out] += a.coef_[p.lhs] * b.coef_[p.rhs];
        return out;
    }

    friend Jet exp(const Jet& x) {
        using std::exp;
        Jet nil = x;
        nil.coef_[0] = Real(0);
        Jet sum(x.layout_, Real(1));
        Jet term(x.layout_, Real(1));
        for (int r = 1; r <= x.layout_->degree(); ++r) {
            term = term * nil;
            term *= Real(1) / Real(r);
            sum += term;
        }
        return sum * Real(exp(x.coef_[0]));
    }

private:
    std::shared_ptr<const JetLayout> layout_;
    std::vector<Real> coef_;
};

} // namespace wordfn

#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "constants.hpp"
#include "expr.hpp"

namespace wordfn {

inline constexpr int kSymbolicMaxLength = 12;

/// Basis for constants_in() producing exact expressions.  Moments come from
/// the closed forms, not the jet path.
class SymbolicBasis {
public:
    using value_type = SymbolicExpr;

    SymbolicExpr eta(int i) const { return sym_eta(i); }
    SymbolicExpr g(int l, const SymbolicExpr& s) const { return sym_g(l, s); }
    SymbolicExpr G(int t, const std::vector<SymbolicExpr>& x) const { return sym_G(t, x); }
    SymbolicExpr scalar(const Rational& q) const { return SymbolicExpr(q); }

    const MomentTable<SymbolicExpr>& moments(int k) const {
        auto it = tables_.find(k);
        if (it == tables_.end())
            it = tables_.emplace(k, MomentTable<SymbolicExpr>::from_closed_forms(SymbolicEta{}, k)).first;
        return it->second;
    }

private:
    mutable std::map<int, MomentTable<SymbolicExpr>> tables_;
};

struct SymbolicConstants {
    SymbolicExpr c;
    SymbolicExpr cTilde;
};

inline ConstantBundle<SymbolicExpr> symbolic_bundle(const Word& w, int maxLength = kSymbolicMaxLength) {
    if (w.length() > maxLength)
        throw ComputationError("symbolic constants limited to length " + std::to_string(maxLength) + ", got " +
                               std::to_string(w.length()));
    return constants_in(w, SymbolicBasis{});
}

inline SymbolicConstants symbolic_constants(const Word& w, int maxLength = kSymbolicMaxLength) {
    auto b = symbolic_bundle(w, maxLength);
    return {std::move(b.c), std::move(b.cTilde)};
}

/// Sum of the monomials carrying eta_k to exactly the first power, with that
/// factor removed.
inline SymbolicExpr eta_linear_coefficient(const SymbolicExpr& e, int k) {
    const Atom ek = Atom::eta(k);
    SymbolicExpr out;
    for (auto& [m, c] : e.terms())
        if (m.power(ek) == 1) out += SymbolicExpr(m.without(ek), c);
    return out;
}

enum class ReconstructMode {
    Strict,          // any term outside types (a)/(b) is a StructuralError
    SkipUnclassified // such terms are recorded and ignored
};

struct Reconstruction {
    std::set<Word> candidates;        // {w, swap(w)}
    std::set<int> offsets;            // J: w_{k-j} = w_k iff j in J
    SymbolicExpr coefficient;         // the eta_k-linear coefficient
    std::vector<Monomial> unclassified;
};

namespace detail {

/// j for a term of type (a) eta_{k-1}..eta_{k-j} or type (b)
/// eta_{k-1}..eta_{k-j+1} g_l(...); 0 if the term has neither shape.
inline int classify_term(const Monomial& m, int k) {
    std::vector<int> etas;
    int gAtoms = 0;
    for (auto& [a, p] : m.factors()) {
        if (p != 1) return 0;
        if (a.is_eta()) etas.push_back(a.index());
        else ++gAtoms;
    }
    if (gAtoms > 1) return 0;
    // etas is sorted ascending; it must be exactly k-r .. k-1
    const int r = static_cast<int>(etas.size());
    for (int q = 0; q < r; ++q)
        if (etas[static_cast<std::size_t>(q)] != k - r + q) return 0;
    const int j = gAtoms == 0 ? r : r + 1;
    return (j >= 1 && j <= k - 1) ? j : 0;
}

} // namespace detail

/// Recovers the isomorphism class of a length-k word from its symbolic c (or
/// c~) expression by reading off which letters agree with w_k.
inline Reconstruction reconstruct(const SymbolicExpr& e, int k, ReconstructMode mode = ReconstructMode::Strict) {
    if (k < 1) throw InputError("word length must be positive");
    Reconstruction out;
    out.coefficient = eta_linear_coefficient(e, k);
    if (out.coefficient.coefficient(Monomial{}) == 0)
        throw StructuralError("eta_" + std::to_string(k) + " coefficient has no constant term");
    for (auto& [m, c] : out.coefficient.terms()) {
        if (m.is_one()) continue;
        int j = detail::classify_term(m, k);
        if (j == 0) {
            if (mode == ReconstructMode::Strict)
                throw StructuralError("unclassifiable term " + to_string(m) + " in the eta_" + std::to_string(k) +
                                      " coefficient");
            out.unclassified.push_back(m);
            continue;
        }
        out.offsets.insert(j);
    }
    std::string s(static_cast<std::size_t>(k), 'b');
    s[static_cast<std::size_t>(k - 1)] = 'a';
    for (int j : out.offsets) s[static_cast<std::size_t>(k - j - 1)] = 'a';
    Word w = Word::parse(s);
    out.candidates = {w, swap_alphabet(w)};
    return out;
}

inline std::set<Word> reconstruct_word(const SymbolicExpr& e, int k, ReconstructMode mode = ReconstructMode::Strict) {
    return reconstruct(e, k, mode).candidates;
}

} // namespace wordfn

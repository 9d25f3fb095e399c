#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace wordfn {

/// A non-empty word over {a, b}.
///
/// Letters are addressed 1-based (`at(1)` .. `at(k)`), which keeps index
/// arithmetic of the form w_{k+1-i-s} readable at the call sites.
class Word {
public:
    Word() = default;

    static Word parse(std::string_view text) {
        if (text.empty()) throw InputError("word must be non-empty");
        for (std::size_t p = 0; p < text.size(); ++p) {
            if (text[p] != 'a' && text[p] != 'b')
                throw InputError("invalid letter '" + std::string(1, text[p]) + "' at position " +
                                 std::to_string(p + 1) + " (alphabet is {a,b})");
        }
        Word w;
        w.letters_ = std::string(text);
        return w;
    }

    int length() const noexcept { return static_cast<int>(letters_.size()); }

    /// 1-based access, 1 <= i <= length().
    char at(int i) const { return letters_[static_cast<std::size_t>(i - 1)]; }

    const std::string& str() const noexcept { return letters_; }

    auto operator<=>(const Word&) const = default;
    bool operator==(const Word&) const = default;

private:
    std::string letters_;
};

inline Word parse_word(std::string_view text) { return Word::parse(text); }

inline Word swap_alphabet(const Word& w) {
    std::string s = w.str();
    for (char& c : s) c = (c == 'a') ? 'b' : 'a';
    return Word::parse(s);
}

/// Lexicographically smaller of {w, swap(w)}; always starts with 'a'.
inline Word canonical(const Word& w) {
    Word s = swap_alphabet(w);
    return std::min(w, s);
}

inline Word power(const Word& u, int d) {
    std::string s;
    for (int r = 0; r < d; ++r) s += u.str();
    return Word::parse(s);
}

struct ExponentRoot {
    int exponent;
    Word root;
};

/// Largest d with w = u^d, together with the primitive root u.
inline ExponentRoot exponent_and_root(const Word& w) {
    const int k = w.length();
    const std::string& s = w.str();
    for (int p = 1; p <= k; ++p) {
        if (k % p != 0) continue;
        bool periodic = true;
        for (int x = p; x < k && periodic; ++x) periodic = (s[x] == s[x - p]);
        if (periodic) return {k / p, Word::parse(s.substr(0, p))};
    }
    return {1, w};
}

/// All 2^k words of length k in lexicographic order.
inline std::vector<Word> all_words(int k) {
    std::vector<Word> out;
    out.reserve(std::size_t{1} << k);
    for (unsigned long mask = 0; mask < (1ul << k); ++mask) {
        std::string s(static_cast<std::size_t>(k), 'a');
        for (int p = 0; p < k; ++p)
            if (mask & (1ul << (k - 1 - p))) s[p] = 'b';
        out.push_back(Word::parse(s));
    }
    return out;
}

/// One representative per isomorphism class (the canonical one) for length k.
inline std::vector<Word> canonical_words(int k) {
    std::vector<Word> out;
    for (auto& w : all_words(k))
        if (w.at(1) == 'a') out.push_back(w);
    return out;
}

/// Layer index sets of a word, indexed by distance to the root of an in-ball.
///   plus(c)  = { 1 <= l <= k : w_{k-l+1} = c }
///   minus(c) = { 0 <= l <  k : w_{k-l}   = c }
struct PositionSets {
    std::vector<int> aPlus, bPlus, aMinus, bMinus;

    const std::vector<int>& plus(char c) const { return c == 'a' ? aPlus : bPlus; }
    const std::vector<int>& minus(char c) const { return c == 'a' ? aMinus : bMinus; }
};

inline PositionSets position_sets(const Word& w) {
    const int k = w.length();
    PositionSets ps;
    for (int l = 1; l <= k; ++l) (w.at(k - l + 1) == 'a' ? ps.aPlus : ps.bPlus).push_back(l);
    for (int l = 0; l < k; ++l) (w.at(k - l) == 'a' ? ps.aMinus : ps.bMinus).push_back(l);
    return ps;
}

/// Maximal self-overlap set: pairs (i, j), 0 <= i < j <= k-1, with i = 0 or
/// w_{k+1-i} != w_{k+1-j}, mapped to the largest overlap length l <= k-j with
/// w_{k+1-i-s} = w_{k+1-j-s} for s = 1..l.  Empty for k = 1.
class OverlapSet {
public:
    using Key = std::pair<int, int>;

    struct Entry {
        int i, j, length;
        bool operator==(const Entry&) const = default;
    };

    void insert(int i, int j, int length) { entries_[{i, j}] = length; }

    bool contains(int i, int j) const { return entries_.count({i, j}) != 0; }
    int length(int i, int j) const { return entries_.at({i, j}); }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    std::vector<Entry> entries() const {
        std::vector<Entry> out;
        out.reserve(entries_.size());
        for (auto& [key, len] : entries_) out.push_back({key.first, key.second, len});
        return out;
    }

    bool operator==(const OverlapSet&) const = default;

private:
    std::map<Key, int> entries_;
};

/// Computed by the leftward common-extension recurrence
///   ext(i, j) = 0                         if j = k or w_{k-i} != w_{k-j}
///             = 1 + ext(i+1, j+1)         otherwise,
/// which is automatically capped at k - j.
inline OverlapSet overlap_set(const Word& w) {
    const int k = w.length();
    OverlapSet out;
    if (k < 2) return out;
    // ext[i][j] for 0 <= i < j <= k
    std::vector<std::vector<int>> ext(static_cast<std::size_t>(k + 1), std::vector<int>(static_cast<std::size_t>(k + 1), 0));
    for (int i = k - 1; i >= 0; --i) {
        for (int j = k - 1; j > i; --j) {
            if (w.at(k - i) == w.at(k - j)) ext[i][j] = 1 + ext[i + 1][j + 1];
        }
    }
    for (int j = 1; j <= k - 1; ++j) {
        for (int i = 0; i < j; ++i) {
            if (i == 0 || w.at(k + 1 - i) != w.at(k + 1 - j)) out.insert(i, j, ext[i][j]);
        }
    }
    return out;
}

/// Rebuilds a word (starting with 'a' at position k) from the overlap
/// lengths l_{0,j}: w_{k-j} = w_k iff l_{0,j} >= 1.
inline Word word_from_first_row(const OverlapSet& m, int k) {
    std::string s(static_cast<std::size_t>(k), 'a');
    for (int j = 1; j < k; ++j) s[static_cast<std::size_t>(k - j - 1)] = (m.length(0, j) >= 1) ? 'a' : 'b';
    return Word::parse(s);
}

} // namespace wordfn

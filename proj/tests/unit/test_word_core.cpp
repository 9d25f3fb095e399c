#include <gtest/gtest.h>

#include <set>

#include "wordfn/oracle.hpp"
#include "wordfn/word.hpp"

using namespace wordfn;

TEST(Word, ParsesLetters) {
    EXPECT_EQ(Word::parse("a").length(), 1);
    const Word w = Word::parse("aaabaa");
    EXPECT_EQ(w.length(), 6);
    EXPECT_EQ(w.at(4), 'b');
    EXPECT_EQ(w.str(), "aaabaa");
}

TEST(Word, RejectsForeignLetterWithPosition) {
    try {
        Word::parse("abc");
        FAIL() << "no exception";
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("position 3"), std::string::npos) << e.what();
    }
    EXPECT_THROW(Word::parse(""), InputError);
}

TEST(Word, ExponentAndRoot) {
    auto r = exponent_and_root(Word::parse("abab"));
    EXPECT_EQ(r.exponent, 2);
    EXPECT_EQ(r.root.str(), "ab");
    r = exponent_and_root(Word::parse("a"));
    EXPECT_EQ(r.exponent, 1);
    EXPECT_EQ(r.root.str(), "a");
    EXPECT_EQ(exponent_and_root(Word::parse("aaabaa")).exponent, 1);
    EXPECT_EQ(exponent_and_root(Word::parse("aaaaaa")).exponent, 6);
    EXPECT_EQ(exponent_and_root(Word::parse("abaaba")).exponent, 2);
}

// Brute force: largest d dividing k with w = (first k/d letters)^d.
TEST(Word, ExponentMatchesDivisorScan) {
    for (int k = 1; k <= 10; ++k)
        for (auto& w : all_words(k)) {
            int best = 1;
            for (int d = 1; d <= k; ++d) {
                if (k % d) continue;
                if (power(Word::parse(w.str().substr(0, static_cast<std::size_t>(k / d))), d) == w) best = d;
            }
            auto r = exponent_and_root(w);
            ASSERT_EQ(r.exponent, best) << w.str();
            ASSERT_EQ(exponent_and_root(r.root).exponent, 1) << w.str();
            ASSERT_EQ(power(r.root, r.exponent), w);
        }
}

TEST(Word, SwapAlphabet) {
    EXPECT_EQ(swap_alphabet(Word::parse("ab")).str(), "ba");
    EXPECT_EQ(swap_alphabet(Word::parse("aaabaa")).str(), "bbbabb");
    const Word w = Word::parse("aab");
    EXPECT_EQ(swap_alphabet(swap_alphabet(w)), w);
}

TEST(Word, CanonicalWordsCount) {
    for (int k = 1; k <= 9; ++k) {
        auto ws = canonical_words(k);
        EXPECT_EQ(ws.size(), std::size_t{1} << (k - 1));
        for (auto& w : ws) EXPECT_EQ(w.at(1), 'a');
    }
}

TEST(PositionSets, SmallWords) {
    auto p = position_sets(Word::parse("a"));
    EXPECT_EQ(p.aPlus, std::vector<int>{1});
    EXPECT_EQ(p.aMinus, std::vector<int>{0});
    EXPECT_TRUE(p.bPlus.empty());
    EXPECT_TRUE(p.bMinus.empty());

    p = position_sets(Word::parse("ab"));
    EXPECT_EQ(p.aPlus, std::vector<int>{2});
    EXPECT_EQ(p.bPlus, std::vector<int>{1});
    EXPECT_EQ(p.aMinus, std::vector<int>{1});
    EXPECT_EQ(p.bMinus, std::vector<int>{0});

    p = position_sets(Word::parse("aaba"));
    EXPECT_EQ(p.aPlus, (std::vector<int>{1, 3, 4}));
    EXPECT_EQ(p.bPlus, std::vector<int>{2});
    EXPECT_EQ(p.aMinus, (std::vector<int>{0, 2, 3}));
    EXPECT_EQ(p.bMinus, std::vector<int>{1});
}

TEST(PositionSets, CardinalitiesSumToLength) {
    for (int k = 1; k <= 10; ++k)
        for (auto& w : all_words(k)) {
            auto p = position_sets(w);
            ASSERT_EQ(p.aPlus.size() + p.bPlus.size(), static_cast<std::size_t>(k));
            ASSERT_EQ(p.aMinus.size() + p.bMinus.size(), static_cast<std::size_t>(k));
        }
}

TEST(OverlapSet, PublishedExampleAbabaa) {
    const auto m = overlap_set(Word::parse("ababaa"));
    const std::set<std::pair<int, int>> keys{{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {1, 3},
                                             {1, 5}, {2, 3}, {2, 5}, {3, 4}, {4, 5}};
    EXPECT_EQ(m.size(), keys.size());
    for (auto [i, j] : keys) {
        ASSERT_TRUE(m.contains(i, j)) << i << "," << j;
        int want = 0;
        if ((i == 0 && (j == 1 || j == 3 || j == 5)) || (i == 1 && j == 5)) want = 1;
        if (i == 1 && j == 3) want = 3;
        EXPECT_EQ(m.length(i, j), want) << i << "," << j;
    }
}

TEST(OverlapSet, TinyWords) {
    EXPECT_TRUE(overlap_set(Word::parse("a")).empty());
    auto aa = overlap_set(Word::parse("aa"));
    ASSERT_EQ(aa.size(), 1u);
    EXPECT_EQ(aa.length(0, 1), 1);
    auto ab = overlap_set(Word::parse("ab"));
    ASSERT_EQ(ab.size(), 1u);
    EXPECT_EQ(ab.length(0, 1), 0);
}

TEST(OverlapSet, AgreesWithNaiveScanUpToLength10) {
    int checked = 0;
    for (int k = 1; k <= 10; ++k)
        for (auto& w : all_words(k)) {
            ASSERT_EQ(overlap_set(w), brute_overlap_check(w)) << w.str();
            ++checked;
        }
    EXPECT_EQ(checked, 2046);
}

TEST(OverlapSet, AlphabetSymmetricAndMaximal) {
    for (int k = 1; k <= 10; ++k)
        for (auto& w : all_words(k)) {
            const auto m = overlap_set(w);
            ASSERT_EQ(m, overlap_set(swap_alphabet(w)));
            for (auto [i, j, l] : m.entries()) {
                const bool atEnd = l == k - j;
                const bool differs = !atEnd && w.at(k - i - l) != w.at(k - j - l);
                ASSERT_TRUE(atEnd || differs) << w.str() << " (" << i << "," << j << ")";
            }
        }
}

TEST(OverlapSet, FirstRowDeterminesWordUpToSwap) {
    for (int k = 1; k <= 10; ++k)
        for (auto& w : all_words(k))
            ASSERT_EQ(canonical(word_from_first_row(overlap_set(w), k)), canonical(w)) << w.str();
}

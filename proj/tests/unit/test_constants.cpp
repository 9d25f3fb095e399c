#include <gtest/gtest.h>

#include <algorithm>

#include "frozen.hpp"
#include "wordfn/constants.hpp"

using namespace wordfn;

TEST(Constants, SingleLetterHandValues) {
    PrecisionScope scope(50);
    auto eta = eta_sequence<HighFloat>(1);
    auto b = leading_constants(Word::parse("a"), eta);
    const HighFloat e1 = frozen::eta(1), tol("1e-40");
    EXPECT_LT(abs(b.cApprox1 - e1 / 2), tol);
    EXPECT_LT(abs(b.cApprox2 - 2 * e1 * e1), tol);
    EXPECT_EQ(b.cInt, 0);
    EXPECT_EQ(b.cCyc, 0);
    EXPECT_LT(abs(b.c - (e1 - 2 * e1 * e1)), tol);
    // (1 + 2 c_approx1 - eta_1) eta_1 - c_approx2 + c_int
    EXPECT_LT(abs((1 + 2 * b.cApprox1 - e1) * e1 - b.cApprox2 + b.cInt - b.c), tol);
    EXPECT_NEAR(to_double(b.c), 0.097209, 5e-7);
    EXPECT_NEAR(to_double(b.cTilde), -0.038126, 5e-7);
    EXPECT_NEAR(to_double(b.cApprox1), 0.18394, 5e-6);
    EXPECT_NEAR(to_double(b.cApprox2), 0.27067, 5e-6);
}

TEST(Constants, IntersectingTermForAa) {
    PrecisionScope scope(50);
    auto eta = eta_sequence<HighFloat>(2);
    auto b = leading_constants(Word::parse("aa"), eta);
    EXPECT_LT(abs(b.cInt - 2 * frozen::eta(1) * frozen::eta(2)), HighFloat("1e-40"));
}

TEST(Constants, CyclicTermVanishesOnPowersOfOneLetter) {
    PrecisionScope scope(40);
    auto eta = eta_sequence<HighFloat>(9);
    for (int k = 1; k <= 9; ++k) {
        auto b = leading_constants(Word::parse(std::string(static_cast<std::size_t>(k), 'a')), eta);
        EXPECT_LT(abs(b.cCyc), HighFloat("1e-35")) << k;
    }
}

TEST(Constants, PublishedTables) {
    for (auto& row : frozen::kTableC)
        EXPECT_NEAR(to_double(leading_constants(Word::parse(row.word)).c), row.value, 5e-7) << row.word;
    for (auto& row : frozen::kTableCTilde)
        EXPECT_NEAR(to_double(leading_constants(Word::parse(row.word)).cTilde), row.value, 5e-7) << row.word;
}

TEST(Constants, AaabaaAgreesWithPrintedClosedForm) {
    auto b = leading_constants(Word::parse("aaabaa"), 50);
    PrecisionScope scope(50);
    EXPECT_LT(abs(b.c - frozen::value(frozen::kCAaabaaClosedForm)), HighFloat("1e-40"));
}

TEST(Constants, BundleIdentitiesUpToLength9) {
    PrecisionScope scope(40);
    auto eta = eta_sequence<HighFloat>(9);
    const HighFloat tol("1e-30");
    for (int k = 1; k <= 9; ++k) {
        const HighFloat& ek = eta[k];
        for (auto& w : canonical_words(k)) {
            auto b = leading_constants(w, eta);
            ASSERT_LT(abs(b.c - ((1 + 2 * b.cApprox1 - ek) * ek - b.cApprox2 + b.cInt)), tol) << w.str();
            ASSERT_LT(abs(b.cTilde - ((1 + 2 * b.cCyc - ek) * ek - b.cApprox2 + b.cInt)), tol) << w.str();
            ASSERT_LT(abs(b.cTilde - b.c - 2 * ek * (b.cCyc - b.cApprox1)), tol) << w.str();
            ASSERT_GT(b.cApprox1, 0) << w.str();
        }
    }
}

TEST(Constants, IsomorphismInvariantUpToLength8) {
    PrecisionScope scope(40);
    auto eta = eta_sequence<HighFloat>(8);
    for (int k = 1; k <= 8; ++k)
        for (auto& w : canonical_words(k)) {
            auto x = leading_constants(w, eta), y = leading_constants(swap_alphabet(w), eta);
            ASSERT_EQ(x.c, y.c) << w.str();
            ASSERT_EQ(x.cTilde, y.cTilde) << w.str();
        }
}

TEST(Constants, DistinctValuesAndExtremalityUpToLength9) {
    PrecisionScope scope(60);
    auto eta = eta_sequence<HighFloat>(9);
    std::vector<HighFloat> allC, allT;
    for (int k = 1; k <= 9; ++k) {
        HighFloat best = -1;
        Word arg;
        for (auto& w : canonical_words(k)) {
            auto b = leading_constants(w, eta);
            allC.push_back(b.c);
            allT.push_back(b.cTilde);
            if (b.c > best) {
                best = b.c;
                arg = w;
            }
        }
        EXPECT_EQ(arg.str(), std::string(static_cast<std::size_t>(k), 'a'));
    }
    for (auto* v : {&allC, &allT}) {
        std::sort(v->begin(), v->end());
        for (std::size_t q = 1; q < v->size(); ++q) ASSERT_GT((*v)[q] - (*v)[q - 1], HighFloat("1e-12"));
    }
    EXPECT_EQ(allC.size(), 511u);
}

TEST(Constants, MomentCacheIsKeyedByPrecision) {
    std::shared_ptr<const MomentTable<HighFloat>> lo, hi;
    {
        PrecisionScope scope(20);
        lo = cached_moments<HighFloat>(3);
    }
    {
        PrecisionScope scope(80);
        hi = cached_moments<HighFloat>(3);
    }
    EXPECT_NE(lo.get(), hi.get());
}

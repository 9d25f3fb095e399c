#include <gtest/gtest.h>

#include <cmath>

#include "wordfn/bgw.hpp"
#include "wordfn/estimators.hpp"

using namespace wordfn;

TEST(GuessLength, Examples) {
    auto eta = eta_sequence<double>(9);
    EXPECT_EQ(guess_length(10'000'000, 3'678'794, 9, eta), 1);
    EXPECT_EQ(guess_length(100, 53, 9, eta), 2);
    EXPECT_EQ(guess_length(10, 0, 9, eta), 1);
    EXPECT_THROW(guess_length(10, 11, 9, eta), InputError);
    EXPECT_THROW(guess_length(10, 1, 10, eta), InputError);
}

TEST(GuessLength, ScaleConsistent) {
    auto eta = eta_sequence<double>(9);
    for (std::uint64_t n : {10'000ull, 123'457ull, 1'000'000ull})
        for (int k = 1; k <= 9; ++k)
            EXPECT_EQ(guess_length(n, static_cast<std::uint64_t>(std::llround(eta[k] * static_cast<double>(n))), 9, eta), k);
}

TEST(Rho, PublishedSequence) {
    const std::vector<Rational> want{1, Rational(3, 2), Rational(5, 3), 2, Rational(9, 5), Rational(5, 2),
                                     Rational(13, 7), Rational(5, 2), Rational(7, 3), Rational(27, 10)};
    for (int d = 1; d <= 10; ++d) EXPECT_EQ(rho(d, 1, {Rational(1)}), want[static_cast<std::size_t>(d - 1)]) << d;
    EXPECT_EQ(rho(6, 1, {Rational(1)}), rho(8, 1, {Rational(1)}));
}

TEST(Rho, OneIsPeriodAverage) {
    const Rational z0(2, 3), z1(7, 5);
    EXPECT_EQ(rho(1, 2, {z0, z1}), (z0 + z1) / 2);
}

TEST(Rho, InvariantUnderMultiplesOfPeriod) {
    for (int d = 1; d <= 6; ++d)
        for (int g = 1; g <= 6; ++g) {
            std::vector<Rational> z;
            for (int r = 0; r < g; ++r) z.emplace_back(r * r + 1, r + 2);
            const Rational base = rho(d, g, z);
            for (int m : {2, 3}) {
                std::vector<Rational> zz;
                for (int r = 0; r < m * g; ++r) zz.push_back(z[static_cast<std::size_t>(r % g)]);
                ASSERT_EQ(rho(d, m * g, zz), base) << d << "," << g << "," << m;
            }
        }
}

TEST(CoprimeDivisors, Small) {
    EXPECT_EQ(coprime_divisors(6, 1), 4);
    EXPECT_EQ(coprime_divisors(6, 2), 2);
    EXPECT_EQ(coprime_divisors(6, 6), 1);
}

TEST(GuessExponent, ExactOnLimitMeans) {
    for (int L : {20, 60, 1000})
        for (int d = 1; d <= 6; ++d) {
            std::vector<double> means(static_cast<std::size_t>(L) + 1, 0.0);
            for (int j = 1; j <= L; ++j) means[static_cast<std::size_t>(j)] = coprime_divisors(d, j) / static_cast<double>(j);
            auto g = guess_exponent(means, L, 6);
            EXPECT_EQ(g.d, d) << "L=" << L;
            EXPECT_NEAR(g.distance[static_cast<std::size_t>(d - 1)], 0.0, 1e-24);
        }
}

TEST(GuessExponent, AllZeroIsLowConfidence) {
    CycleCounts zero{100, 20, std::vector<std::uint64_t>(21, 0)};
    auto g = guess_exponent(zero, 20, 4);
    EXPECT_EQ(g.d, 1);
    EXPECT_TRUE(g.lowConfidence);
}

TEST(GuessExponent, FeaturesAndModulus) {
    CycleCounts c{100, 30, std::vector<std::uint64_t>(31, 1)};
    auto g = guess_exponent(c, 30, 4);
    EXPECT_EQ(g.g, 12);
    EXPECT_EQ(g.features, (std::vector<int>{1, 2, 3, 5, 7, 11}));
    EXPECT_EQ(g.distance.size(), 4u);
    EXPECT_THROW(guess_exponent(c, 31, 4), InputError);
    EXPECT_THROW(guess_exponent(c, 1, 4), InputError);
}

TEST(FiniteLimitMean, MatchesDirectSum) {
    double s = 0;
    for (int j = 1; j <= 1000; ++j) s += coprime_divisors(2, j) / static_cast<double>(j);
    EXPECT_DOUBLE_EQ(finite_limit_mean<double>(2, 1000, 1, {1.0}), s);
    // harmonic number for d = 1
    double h = 0;
    for (int j = 1; j <= 50; ++j) h += 1.0 / j;
    EXPECT_NEAR(finite_limit_mean<double>(1, 50, 1, {1.0}), h, 1e-14);
}

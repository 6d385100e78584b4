#include "oppenheim/stats.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace oppenheim;
using namespace oppenheim::stats;

TEST(Ks, UniformGridAgainstUniformCdf) {
    // Points (i - 1/2)/m sit in the middle of each step: distance 1/(2m).
    std::vector<double> x;
    for (int i = 1; i <= 10; ++i) x.push_back((i - 0.5) / 10.0);
    EXPECT_NEAR(ks_distance(x, [](double v) { return v; }), 0.05, 1e-15);
}

TEST(Ks, TakesBothSides) {
    EXPECT_DOUBLE_EQ(ks_distance({0.9}, [](double v) { return v; }), 0.9);
    EXPECT_DOUBLE_EQ(ks_distance({0.2}, [](double v) { return v; }), 0.8);
    EXPECT_THROW(ks_distance({}, [](double v) { return v; }), ArgumentError);
}

TEST(Ks, OrderDoesNotMatter) {
    auto F = [](double v) { return 1.0 - std::exp(-v); };
    EXPECT_DOUBLE_EQ(ks_distance({3.0, 0.1, 1.0, 0.5}, F), ks_distance({0.1, 0.5, 1.0, 3.0}, F));
}

TEST(KsTwoSample, Examples) {
    EXPECT_DOUBLE_EQ(ks_two_sample({1, 2, 3}, {1, 2, 3}), 0.0);
    EXPECT_DOUBLE_EQ(ks_two_sample({1, 2}, {3, 4}), 1.0);
    EXPECT_DOUBLE_EQ(ks_two_sample({1, 3}, {2, 4}), 0.5);
    EXPECT_DOUBLE_EQ(ks_two_sample({1, 1, 2, 2}, {1, 2}), 0.0);
    EXPECT_THROW(ks_two_sample({}, {1}), ArgumentError);
}

TEST(Median, OddAndEven) {
    EXPECT_DOUBLE_EQ(median({5, 1, 3}), 3.0);
    EXPECT_DOUBLE_EQ(median({4, 1, 3, 2}), 2.5);
    EXPECT_DOUBLE_EQ(median({7}), 7.0);
    EXPECT_THROW(median({}), ArgumentError);
}

TEST(EmpiricalCharFn, Values) {
    const std::vector<double> x{0.0, 0.0};
    EXPECT_EQ(empirical_char_fn(x, 3.0), std::complex<double>(1.0, 0.0));
    const std::vector<double> y{-1.0, 1.0};
    const auto e = empirical_char_fn(y, 0.7);
    EXPECT_NEAR(e.real(), std::cos(0.7), 1e-15);
    EXPECT_NEAR(e.imag(), 0.0, 1e-15);
    const std::vector<double> z{2.0};
    EXPECT_NEAR(std::abs(empirical_char_fn(z, 1.3) - std::polar(1.0, 2.6)), 0.0, 1e-15);
}

TEST(Exceedance, StrictInequality) {
    const std::vector<double> x{0.0, 0.5, 1.0, 1.5, 2.0};
    EXPECT_DOUBLE_EQ(exceedance(x, 1.0, 0.5), 0.4);
    EXPECT_DOUBLE_EQ(exceedance(x, 1.0, 2.0), 0.0);
    EXPECT_THROW(exceedance(std::vector<double>{}, 0.0, 1.0), ArgumentError);
}

#include "oppenheim/distributions.hpp"
#include "oppenheim/stats.hpp"

#include "oracles.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace oppenheim;
using namespace oppenheim::distributions;

namespace {

const double kG = specfun::kEulerGamma;

DistributionFamily mobius(double c) { return DistributionFamily::mobius_clamped(ParamSequence::constant(c)); }
DistributionFamily remark2(double c) { return DistributionFamily::mobius_remark2(ParamSequence::constant(c)); }
DistributionFamily discrete(double b) { return DistributionFamily::discrete_beta(ParamSequence::constant(b)); }

} // namespace

TEST(DiscreteBetaPmf, LurothValues) {
    EXPECT_DOUBLE_EQ(discrete_beta_pmf(0.0, 2), 0.5);
    EXPECT_DOUBLE_EQ(discrete_beta_pmf(0.0, 5), 1.0 / 20.0);
}

TEST(DiscreteBetaPmf, SumsToOne) {
    double s = 0.0;
    for (long long k = 2; k <= 1'000'000; ++k) s += discrete_beta_pmf(0.5, k);
    EXPECT_NEAR(s, 1.0, 1e-6);
    EXPECT_NEAR(1.0 - s, discrete_beta_tail(0.5, 1'000'000), 1e-9);
}

TEST(DiscreteBetaPmf, RejectsBadArguments) {
    EXPECT_THROW(discrete_beta_pmf(0.5, 1), DomainError);
    EXPECT_THROW(discrete_beta_pmf(1.0, 3), DomainError);
}

TEST(DistributionFamily, CdfAxioms) {
    for (const auto& f : {DistributionFamily::uniform(), mobius(1.0), mobius(3.0), remark2(0.5), discrete(0.0), discrete(0.7)}) {
        EXPECT_EQ(f.cdf(1, 0.0), 0.0) << f.id();
        EXPECT_EQ(f.cdf(1, 1.0), 1.0) << f.id();
        double prev = 0.0;
        for (double t = 1e-4; t <= 1.0; t *= 1.1) {
            const double v = f.cdf(1, t);
            EXPECT_GE(v, prev) << f.id() << " t=" << t;
            EXPECT_LE(v, 1.0);
            prev = v;
        }
    }
}

TEST(DistributionFamily, ParameterDomains) {
    EXPECT_THROW(mobius(0.4).cdf(1, 0.1), DomainError);
    EXPECT_THROW(remark2(-1.0).alpha(1), DomainError);
    EXPECT_THROW(discrete(1.0).alpha(1), DomainError);
    EXPECT_THROW(DistributionFamily::uniform().param(0), DomainError);
}

TEST(DistributionFamily, AlphaFollowsParameterSequence) {
    const auto f = DistributionFamily::mobius_clamped(ParamSequence::parse("linear:n"));
    EXPECT_EQ(f.alpha(7), 7.0);
    EXPECT_EQ(discrete(0.25).alpha(3), 0.75);
}

TEST(DistributionFamily, AtomsOfDiscreteFamily) {
    const auto a = discrete(0.0).atoms(1, 3);
    ASSERT_EQ(a.size(), 3u);
    EXPECT_DOUBLE_EQ(a[0].point, 0.5);
    EXPECT_DOUBLE_EQ(a[0].mass, 0.5);
    EXPECT_DOUBLE_EQ(a[2].point, 0.25);
    EXPECT_TRUE(DistributionFamily::uniform().atoms(1, 3).empty());
}

TEST(DistributionFamily, SamplersMatchTheirCdf) {
    for (const auto& f : {DistributionFamily::uniform(), mobius(1.0), mobius(2.5), remark2(0.7), discrete(0.3)}) {
        RandomStream rng(99, 1);
        std::vector<double> x(100'000);
        for (auto& v : x) v = f.sample(1, rng);
        if (f.is_discrete()) {
            // Compare atom frequencies instead of a KS distance against a step CDF.
            for (long long k = 2; k <= 8; ++k) {
                const double p = discrete_beta_pmf(0.3, k);
                double hits = 0;
                for (double v : x) hits += std::abs(1.0 / v - static_cast<double>(k)) < 1e-9;
                const double sd = std::sqrt(p * (1 - p) / x.size());
                EXPECT_NEAR(hits / x.size(), p, 4 * sd) << k;
            }
        } else {
            EXPECT_LT(stats::ks_distance(x, [&](double t) { return f.cdf(1, t); }), 0.02) << f.id();
        }
    }
}

TEST(DistributionFamily, DiscreteReciprocalIsInteger) {
    RandomStream rng(5, 5);
    const auto f = discrete(0.5);
    for (int i = 0; i < 1000; ++i) {
        const double z = f.sample_reciprocal(1, rng);
        EXPECT_EQ(z, std::floor(z));
        EXPECT_GE(z, 2.0);
    }
}

TEST(DistributionFamily, CustomFamilyDelegates) {
    const auto f = DistributionFamily::custom(
        "square", [](std::size_t, double t) { return std::min(1.0, t * t); }, [](std::size_t) { return 0.0; },
        [](std::size_t, RandomStream& r) { return std::sqrt(r.uniform_open_closed()); });
    EXPECT_EQ(f.cdf(1, 0.5), 0.25);
    EXPECT_EQ(f.id(), "custom(square)");
    EXPECT_FALSE(f.density(1, 0.5).has_value());
}

TEST(ConditionI, UniformIsExactlyZero) {
    const auto p = condition_i_profile(DistributionFamily::uniform(), 10, {0.1, 0.01, 0.001});
    for (const auto& r : p.rows) EXPECT_EQ(r.value, 0.0);
    EXPECT_TRUE(p.passes(1e-12));
}

TEST(ConditionI, MobiusClosedForm) {
    const auto p = condition_i_profile(mobius(1.0), 5, {0.1, 0.01});
    EXPECT_NEAR(p.rows[1].value, 1.0 / 0.99 - 1.0, 1e-14);
    EXPECT_TRUE(p.passes(0.05));
}

TEST(ConditionI, FlagsUnboundedAlpha) {
    const auto p = condition_i_profile(DistributionFamily::mobius_clamped(ParamSequence::parse("linear:n")), 40, {0.01});
    EXPECT_TRUE(p.alpha_unbounded);
    EXPECT_FALSE(p.passes(1.0));
}

TEST(ConditionI, FlagsVanishingAlpha) {
    const auto f = DistributionFamily::discrete_beta(ParamSequence::values({0.0, 0.5, 0.75, 0.875, 0.9375, 0.96875, 0.984375, 0.9921875}));
    const auto p = condition_i_profile(f, 8, {0.01});
    EXPECT_TRUE(p.alpha_vanishing);
}

TEST(ConditionI, RejectsBadGrids) {
    EXPECT_THROW(condition_i_profile(DistributionFamily::uniform(), 3, {}), ArgumentError);
    EXPECT_THROW(condition_i_profile(DistributionFamily::uniform(), 3, {1.5}), ArgumentError);
}

TEST(ConditionII, MobiusIsMinusLogOfComplement) {
    EXPECT_NEAR(regularity_integral(mobius(1.0), 1, 0.1), -std::log(0.9), 1e-9);
    const auto p = condition_ii_profile(mobius(1.0), 3, {0.1, 0.05, 0.01});
    EXPECT_TRUE(p.decreasing_trend());
    EXPECT_TRUE(p.passes(0.05));
}

TEST(ConditionII, UniformIsZero) {
    for (const auto& r : condition_ii_profile(DistributionFamily::uniform(), 3, {0.5, 0.1}).rows) EXPECT_EQ(r.value, 0.0);
}

TEST(ConditionII, DiscreteMatchesDirectSum) {
    // On (1/m, 1/(m-1)] F = p = (1-b)/(m-1-b) and p/u > 1-b, so each piece is p - (1-b) log(m/(m-1)).
    const double b = 0.5, t = 0.1;
    long double direct = 0;
    for (long m = 11; m < 4'000'000; ++m) {
        const long double p = (1 - b) / (m - 1 - b);
        direct += p - (1 - b) * std::log1p(1.0L / (m - 1));
    }
    EXPECT_NEAR(regularity_integral(discrete(b), 1, t), static_cast<double>(direct), 1e-6);
}

TEST(FamilyConstants, UniformIsOneMinusGamma) {
    const auto c = family_constants(DistributionFamily::uniform(), 1);
    EXPECT_EQ(c.b, 0.0);
    EXPECT_NEAR(c.c, 0.422784, 1e-6);
}

TEST(FamilyConstants, MobiusClampedClosedForm) {
    // b = c log 2 + 2c - 1 - c log(2c).
    for (double c : {0.5, 1.0, 2.0, 5.0}) {
        const auto fc = family_constants(mobius(c), 1);
        EXPECT_NEAR(fc.b, c * std::log(2.0) + 2 * c - 1 - c * std::log(2 * c), 1e-9) << c;
        EXPECT_NEAR(fc.c, 1 - c * kG + fc.b, 1e-15);
    }
    EXPECT_NEAR(family_constants(mobius(1.0), 1).c, 1.4228, 1e-4);
}

TEST(FamilyConstants, MobiusRemarkClosedForm) {
    // b = c - c log c.
    for (double c : {0.25, 1.0, 3.0}) EXPECT_NEAR(family_constants(remark2(c), 1).b, c - c * std::log(c), 1e-9) << c;
}

TEST(FamilyConstants, DiscreteMatchesDigamma) {
    // b = -(1-beta) psi(1-beta); beta = 0 gives b = gamma and c = 1.
    for (double b : {0.0, 0.2, 0.5, 0.9}) {
        const auto fc = family_constants(discrete(b), 1);
        EXPECT_NEAR(fc.b, -(1 - b) * boost::math::digamma(1 - b), 1e-10) << b;
        EXPECT_NEAR(fc.c - 1.0, specfun::c2_discrete(b), 1e-9) << b;
    }
    EXPECT_NEAR(family_constants(discrete(0.0), 1).c, 1.0, 1e-10);
}

TEST(FamilyConstants, Deterministic) {
    const auto a = family_constants(mobius(1.3), 1), b = family_constants(mobius(1.3), 1);
    EXPECT_EQ(a.b, b.b);
    EXPECT_EQ(a.c, b.c);
}

TEST(CharComponents, ZeroAtOrigin) {
    const auto c = char_components(mobius(1.0), 1, 0.0);
    EXPECT_EQ(c.A, 0.0);
    EXPECT_EQ(c.B, 0.0);
}

TEST(CharComponents, UniformMatchesSineCosineIntegrals) {
    // A = cos t - 1 - t(pi/2 - Si t), B = sin t - t Ci t.
    for (double t : {0.01, 0.3, 1.0, 2.5, 7.0}) {
        const auto c = char_components(DistributionFamily::uniform(), 1, t);
        EXPECT_NEAR(c.A, std::cos(t) - 1 - t * (std::numbers::pi / 2 - oracles::si_series(t)), 1e-9) << t;
        EXPECT_NEAR(c.B, std::sin(t) - t * oracles::ci_series(t), 1e-9) << t;
    }
}

TEST(CharComponents, OddInT) {
    const auto p = char_components(mobius(1.0), 1, 0.7), m = char_components(mobius(1.0), 1, -0.7);
    EXPECT_EQ(p.A, m.A);
    EXPECT_EQ(p.B, -m.B);
}

TEST(CharComponents, DiscreteMatchesDirectSummation) {
    for (double b : {0.0, 0.5}) {
        for (double t : {0.05, 1.0, 7.0}) {
            long double A = 0, B = 0;
            for (long k = 2; k < 4'000'000; ++k) {
                const long double p = discrete_beta_pmf(b, k);
                A += p * (std::cos(t * k) - 1);
                B += p * std::sin(t * k);
            }
            const auto c = char_components(discrete(b), 1, t);
            EXPECT_NEAR(c.A, static_cast<double>(A), 2e-6) << b << " " << t;
            EXPECT_NEAR(c.B, static_cast<double>(B), 2e-6) << b << " " << t;
        }
    }
}

TEST(CharComponents, BoundsAndSmallTLinearity) {
    for (const auto& f : {DistributionFamily::uniform(), mobius(1.0), discrete(0.5)}) {
        for (double t : {0.001, 0.01, 0.1, 0.5, 0.9, 3.0, 20.0}) {
            const auto c = char_components(f, 1, t);
            EXPECT_LE(c.A, 1e-12);
            EXPECT_GE(c.A, -2.0);
            EXPECT_LE(std::abs(c.B), 1.0);
            if (t < 1.0) {
                EXPECT_LE(std::abs(c.A), 3.0 * t) << f.id() << " " << t;
            }
        }
    }
}

TEST(SineCentering, UniformLimitIsOneMinusGamma) {
    const auto p = sine_centering_profile(DistributionFamily::uniform(), 1, {0.1, 0.05, 0.02, 0.01, 0.005});
    EXPECT_NEAR(p.extrapolated_limit, 1 - kG, 1e-3);
    const auto c01 = p.rows[3];
    EXPECT_NEAR(c01.value, 1 - kG, 0.05);
}

TEST(SineCentering, ProfileApproachesFamilyConstant) {
    for (const auto& f : {mobius(1.0), discrete(0.5)}) {
        const auto p = sine_centering_profile(f, 1, {0.1, 0.05, 0.02, 0.01, 0.005});
        const double cf = family_constants(f, 1).c;
        for (std::size_t i = 1; i < p.rows.size(); ++i)
            EXPECT_LT(std::abs(p.rows[i].value - cf), std::abs(p.rows[i - 1].value - cf)) << f.id();
    }
}

TEST(SineCentering, LogarithmicGrowth) {
    // (1/t) int sin(t/u) dF ~ -alpha log t: within 10% at t = 1e-3 for the uniform law, and the
    // ratio falls towards 1 as t shrinks for every family.
    const double t = 1e-3;
    const auto u = char_components(DistributionFamily::uniform(), 1, t);
    EXPECT_NEAR((u.B / t) / -std::log(t), 1.0, 0.1);
    for (const auto& f : {mobius(1.0), discrete(0.5)}) {
        double prev = INFINITY;
        for (double s : {1e-2, 1e-3, 1e-4, 1e-6}) {
            const double ratio = (char_components(f, 1, s).B / s) / (-f.alpha(1) * std::log(s));
            EXPECT_LT(ratio, prev) << f.id();
            EXPECT_GT(ratio, 1.0) << f.id();
            prev = ratio;
        }
    }
}

TEST(SineCentering, RejectsBadGrid) {
    EXPECT_THROW(sine_centering_profile(DistributionFamily::uniform(), 1, {}), ArgumentError);
    EXPECT_THROW(sine_centering_profile(DistributionFamily::uniform(), 1, {1.0}), ArgumentError);
}

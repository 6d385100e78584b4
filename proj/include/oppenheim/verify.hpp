#pragma once

/**
 * @file verify.hpp
 * @brief The deterministic identity suite behind `oppenheim verify`.
 *
 * Each check compares a library value with an independent closed form or
 * series and reports the achieved error against its tolerance.
 */

#include "oppenheim/distributions.hpp"
#include "oppenheim/errors.hpp"
#include "oppenheim/experiments.hpp"
#include "oppenheim/specfun.hpp"

#include <boost/math/special_functions/digamma.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace oppenheim::verify {

struct IdentityCheck {
    std::string name;
    std::string description;
    double value = 0.0;
    double error = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    /// Set when the computation itself threw.
    std::string failure;
};

namespace detail {

// sum_k (1-beta)/(k+1-beta) z^k, truncated once terms drop below 1e-18.
inline std::complex<double> hypergeometric_series(double beta, std::complex<double> z) {
    std::complex<double> s = 0.0, zk = 1.0;
    for (int k = 0; k < 100000; ++k) {
        const auto term = (1.0 - beta) / (k + 1.0 - beta) * zk;
        s += term;
        if (std::abs(term) < 1e-18) break;
        zk *= z;
    }
    return s;
}

inline IdentityCheck run_check(const std::string& name, const std::string& description, double tolerance,
                               const std::function<std::pair<double, double>()>& body) {
    IdentityCheck c{name, description, 0.0, 0.0, tolerance, false, {}};
    try {
        const auto [value, error] = body();
        c.value = value;
        c.error = error;
        c.passed = error <= tolerance;
    } catch (const std::exception& e) {
        c.failure = e.what();
        c.error = INFINITY;
    }
    return c;
}

} // namespace detail

/// Runs every identity; `tolerance` replaces each check's own tolerance when set.
inline std::vector<IdentityCheck> identity_suite(std::optional<double> tolerance = std::nullopt) {
    using std::complex;
    const double g = specfun::kEulerGamma;
    auto tol = [&](double own) { return tolerance.value_or(own); };
    std::vector<IdentityCheck> out;

    out.push_back(detail::run_check("sine_split_constants", "|A + B - (1 - gamma)|", tol(1e-8), [&] {
        const auto s = specfun::sine_split_constants();
        return std::pair{s.sum, std::abs(s.sum - (1.0 - g))};
    }));

    out.push_back(detail::run_check("cin_identity", "max |Cin(x) + Ci(x) - log x - gamma|, x in {0.1..10}", tol(1e-10), [&] {
        double e = 0.0;
        for (double x : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0})
            e = std::max(e, std::abs(specfun::cin(x) + specfun::cosine_integral(x) - std::log(x) - g));
        return std::pair{e, e};
    }));

    out.push_back(detail::run_check("hypergeometric_beta_zero", "max |2F1 - (-log(1-z)/z)| at 4 points", tol(1e-10), [&] {
        double e = 0.0;
        for (complex<double> z : {complex<double>(0.5, 0.0), complex<double>(-0.9, 0.0), complex<double>(0.3, 0.4),
                                  complex<double>(0.0, 0.95)})
            e = std::max(e, std::abs(specfun::gauss_2f1_unit(0.0, z) + std::log(1.0 - z) / z));
        return std::pair{e, e};
    }));

    out.push_back(detail::run_check("hypergeometric_beta_half", "max |2F1 - power series| at 4 points", tol(1e-10), [&] {
        double e = 0.0;
        for (complex<double> z : {complex<double>(0.5, 0.0), complex<double>(-0.9, 0.0), complex<double>(0.3, 0.4),
                                  complex<double>(0.0, 0.95)})
            e = std::max(e, std::abs(specfun::gauss_2f1_unit(0.5, z) - detail::hypergeometric_series(0.5, z)));
        return std::pair{e, e};
    }));

    out.push_back(detail::run_check("c2_discrete_digamma", "max |c2(beta) - (1-beta)(psi(1) - psi(1-beta))|", tol(1e-8), [&] {
        double e = 0.0;
        for (double b : {0.25, 0.5, 0.75}) {
            const double oracle = (1.0 - b) * (boost::math::digamma(1.0) - boost::math::digamma(1.0 - b));
            e = std::max(e, std::abs(specfun::c2_discrete(b) - oracle));
        }
        return std::pair{specfun::c2_discrete(0.5), e};
    }));

    out.push_back(detail::run_check("gamma_recovery", "|(log n - H_n) + gamma|, n = 1e6", tol(1e-6), [&] {
        const double v = experiments::gamma_from_harmonic(1'000'000);
        return std::pair{v, std::abs(v + g)};
    }));

    using distributions::DistributionFamily;
    const std::vector<std::pair<std::string, DistributionFamily>> families{
        {"uniform", DistributionFamily::uniform()},
        {"mobius_clamped", DistributionFamily::mobius_clamped(ParamSequence::constant(1.0))},
        {"discrete_beta", DistributionFamily::discrete_beta(ParamSequence::constant(0.5))}};
    for (const auto& [label, fam] : families) {
        out.push_back(detail::run_check("sine_centering_" + label, "|t -> 0 limit of the sine profile - c_F|", tol(1e-7), [&] {
            const auto p = distributions::sine_centering_profile(fam, 1, {4e-4, 2e-4, 1e-4});
            const double cf = distributions::family_constants(fam, 1).c;
            return std::pair{p.extrapolated_limit, std::abs(p.extrapolated_limit - cf)};
        }));
    }
    return out;
}

inline bool all_passed(const std::vector<IdentityCheck>& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

} // namespace oppenheim::verify

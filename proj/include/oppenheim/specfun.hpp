#pragma once

/**
 * @file specfun.hpp
 * @brief Cosine integrals, Euler's constant, the (1, 1-beta, 2-beta) slice of
 *        Gauss' hypergeometric function and the discrete centering integral.
 *
 * All values are obtained by quadrature (never by the closed forms they are
 * tested against). Oscillatory integrals over [x, inf) are split at the zeros
 * of the oscillating factor and the resulting alternating series of chunk
 * integrals is accelerated with Wynn's epsilon algorithm.
 */

#include "oppenheim/errors.hpp"
#include "oppenheim/quadrature.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

namespace oppenheim::specfun {

/// Euler-Mascheroni constant to 30 significant digits.
inline constexpr long double kEulerGammaLong = 0.577215664901532860606512090082L;
inline constexpr double kEulerGamma = static_cast<double>(kEulerGammaLong);

namespace detail {

inline void require_converged(const QuadResult<double>& r, const char* what) {
    if (!r.converged) throw AccuracyError(std::string(what) + ": quadrature did not converge", r.error);
}

inline void require_converged(const QuadResult<std::complex<double>>& r, const char* what) {
    if (!r.converged) throw AccuracyError(std::string(what) + ": quadrature did not converge", r.error);
}

// (sin x - x) / x^2 without cancellation near 0.
inline double sin_minus_id_over_sq(double x) {
    if (std::abs(x) < 0.05) {
        const double x2 = x * x;
        return x * (-1.0 / 6.0 + x2 * (1.0 / 120.0 + x2 * (-1.0 / 5040.0 + x2 / 362880.0)));
    }
    return (std::sin(x) - x) / (x * x);
}

} // namespace detail

/**
 * Ci(x) = -int_x^inf cos(t)/t dt for x > 0.
 * Chunks run between consecutive zeros (k + 1/2) pi of cos.
 */
inline QuadResult<double> cosine_integral_detailed(double x, const QuadratureSpec& spec = {}) {
    spec.validate();
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("cosine_integral: x must be positive and finite");
    const double pi = std::numbers::pi;
    const double first_zero_index = std::max(0.0, std::ceil(x / pi - 0.5));
    double z0 = (first_zero_index + 0.5) * pi;
    if (z0 <= x) z0 += pi;
    const QuadratureSpec chunk_spec = spec.tightened(0.01);
    auto integrand = [](double t) { return std::cos(t) / t; };
    auto chunk = [&](int k) {
        const double a = (k == 0) ? x : z0 + (k - 1) * pi;
        const double b = z0 + k * pi;
        return integrate(integrand, a, b, chunk_spec);
    };
    QuadResult<double> r;
    if (spec.oscillation_chunking) {
        r = sum_oscillatory_chunks(chunk, spec);
    } else {
        // Plain truncated sum; the tail past T is bounded by 2/T (integration by parts).
        const int chunks = std::min(spec.max_subdivisions, 100'000);
        for (int k = 0; k < chunks; ++k) {
            auto c = chunk(k);
            r.value += c.value;
            r.error += c.error;
            r.evaluations += c.evaluations;
        }
        r.error += 2.0 / (z0 + chunks * pi);
        r.converged = r.error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(r.value));
    }
    r.value = -r.value;
    return r;
}

inline double cosine_integral(double x, const QuadratureSpec& spec = {}) {
    auto r = cosine_integral_detailed(x, spec);
    detail::require_converged(r, "cosine_integral");
    return r.value;
}

/// Cin(x) = int_0^x (1 - cos t)/t dt, integrand written as 2 sin^2(t/2)/t.
inline double cin(double x, const QuadratureSpec& spec = {}) {
    spec.validate();
    if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("cin: x must be nonnegative and finite");
    if (x == 0.0) return 0.0;
    auto integrand = [](double t) {
        const double s = std::sin(0.5 * t);
        return 2.0 * s * s / t;
    };
    std::vector<double> cuts;
    for (double p = std::numbers::pi; p < x; p += std::numbers::pi) cuts.push_back(p);
    auto r = integrate(integrand, 0.0, x, spec, cuts);
    detail::require_converged(r, "cin");
    return r.value;
}

struct SineSplitConstants {
    double A = 0.0;   ///< int_0^1 (sin x - x)/x^2 dx
    double B = 0.0;   ///< int_1^inf sin x / x^2 dx
    double sum = 0.0; ///< A + B
    double error = 0.0;
};

/// A = int_0^1 (sin x - x)/x^2 dx and B = int_1^inf sin x/x^2 dx, each by its own quadrature. A + B = 1 - gamma.
inline SineSplitConstants sine_split_constants(const QuadratureSpec& spec = {}) {
    spec.validate();
    const QuadratureSpec tight = spec.tightened(0.01);
    auto a = integrate(detail::sin_minus_id_over_sq, 0.0, 1.0, tight);
    detail::require_converged(a, "sine_split_constants (A)");

    const double pi = std::numbers::pi;
    auto integrand = [](double t) { return std::sin(t) / (t * t); };
    auto chunk = [&](int k) {
        const double lo = (k == 0) ? 1.0 : k * pi;
        return integrate(integrand, lo, (k + 1) * pi, tight);
    };
    auto b = sum_oscillatory_chunks(chunk, tight);
    detail::require_converged(b, "sine_split_constants (B)");
    return {a.value, b.value, a.value + b.value, a.error + b.error};
}

/**
 * 2F1(1, 1-beta, 2-beta; z) for |z| <= 1, z != 1, from
 * (1-beta) int_0^1 xi^{-beta} / (1 - xi z) dxi. The substitution
 * xi = s^{1/(1-beta)} absorbs the endpoint singularity, leaving
 * int_0^1 ds / (1 - s^{1/(1-beta)} z).
 */
inline std::complex<double> gauss_2f1_unit(double beta, std::complex<double> z, const QuadratureSpec& spec = {}) {
    spec.validate();
    if (!(beta >= 0.0 && beta < 1.0)) throw DomainError("gauss_2f1_unit: beta must lie in [0, 1)");
    if (z == std::complex<double>(1.0, 0.0)) throw DomainError("gauss_2f1_unit: z = 1 is a pole");
    if (std::abs(z) > 1.0 + 1e-14) throw DomainError("gauss_2f1_unit: |z| must be <= 1");
    if (z == std::complex<double>(0.0, 0.0)) return {1.0, 0.0};

    const double p = 1.0 / (1.0 - beta);
    auto integrand = [&](double s) -> std::complex<double> {
        const double xi = std::pow(s, p);
        return 1.0 / (1.0 - xi * z);
    };
    // The integrand peaks within |1 - z| of xi = 1; place breakpoints on that scale.
    std::vector<double> cuts;
    const double d = std::abs(1.0 - z);
    for (double m : {1.0, 4.0, 16.0, 64.0}) {
        const double xi = 1.0 - m * d;
        if (xi > 0.0) cuts.push_back(std::pow(xi, 1.0 - beta));
    }
    auto r = integrate(integrand, 0.0, 1.0, spec, cuts);
    detail::require_converged(r, "gauss_2f1_unit");
    return r.value;
}

/**
 * (1-beta) int_0^1 (1 - x^beta) / (x^beta (1-x)) dx, split at 1/2.
 * Left half uses x = s^{1/(1-beta)}, right half uses x = 1 - y.
 */
inline double c2_discrete(double beta, const QuadratureSpec& spec = {}) {
    spec.validate();
    if (!(beta >= 0.0 && beta < 1.0)) throw DomainError("c2_discrete: beta must lie in [0, 1)");
    if (beta == 0.0) return 0.0;
    const double p = 1.0 / (1.0 - beta);
    const QuadratureSpec tight = spec.tightened(0.1);
    auto left = [&](double s) {
        const double x = std::pow(s, p);
        return -std::expm1(beta * std::log(x)) / (1.0 - x);
    };
    auto right = [&](double y) {
        const double lg = std::log1p(-y);
        return -std::expm1(beta * lg) / (std::exp(beta * lg) * y);
    };
    auto l = integrate(left, 0.0, std::pow(0.5, 1.0 - beta), tight);
    auto r = integrate(right, 0.0, 0.5, tight);
    detail::require_converged(l, "c2_discrete (left)");
    detail::require_converged(r, "c2_discrete (right)");
    return l.value + (1.0 - beta) * r.value;
}

} // namespace oppenheim::specfun

#pragma once

/**
 * @file distributions.hpp
 * @brief Indexed families {F_n} of distribution functions on [0, 1], the
 *        small-t regularity conditions they must satisfy, and the constants
 *        b_F, c_F and characteristic components A_n(t), B_n(t) built from them.
 *
 * Built-in families:
 *   - uniform:          F(t) = t, alpha = 1
 *   - mobius_clamped:   F(t) = c t / (1 - c t) on [0, 1/(2c)), alpha = c (c >= 1/2)
 *   - mobius_remark2:   F(t) = c t / (1 - t)   on [0, 1/(1+c)), alpha = c
 *   - discrete_beta:    U = 1/Z with P(Z >= k) = (1-beta)/(k-1-beta), alpha = 1 - beta
 *
 * Discrete families are never integrated against a step CDF: every integral
 * is summed piece by piece between consecutive atoms with an asymptotic tail.
 */

#include "oppenheim/errors.hpp"
#include "oppenheim/quadrature.hpp"
#include "oppenheim/rng.hpp"
#include "oppenheim/sequence.hpp"
#include "oppenheim/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace oppenheim::distributions {

enum class FamilyKind { uniform, mobius_clamped, mobius_remark2, discrete_beta, custom };

inline std::string to_string(FamilyKind k) {
    switch (k) {
    case FamilyKind::uniform: return "uniform";
    case FamilyKind::mobius_clamped: return "mobius_clamped";
    case FamilyKind::mobius_remark2: return "mobius_remark2";
    case FamilyKind::discrete_beta: return "discrete_beta";
    case FamilyKind::custom: return "custom";
    }
    return "unknown";
}

struct Atom {
    double point;
    double mass;
};

/// p_{beta,k} = (1-beta)/(k-beta) = P(Z > k) for the discrete family.
inline double discrete_beta_tail(double beta, double k) { return (1.0 - beta) / (k - beta); }

/// P(Z = k) = p_{beta,k-1} - p_{beta,k}, k >= 2.
inline double discrete_beta_pmf(double beta, long long k) {
    if (!(beta >= 0.0 && beta < 1.0)) throw DomainError("discrete_beta_pmf: beta must lie in [0, 1)");
    if (k < 2) throw DomainError("discrete_beta_pmf: k must be >= 2");
    const double kk = static_cast<double>(k);
    // (1-beta) / ((k-1-beta)(k-beta)) avoids the cancellation of the plain difference.
    return (1.0 - beta) / ((kk - 1.0 - beta) * (kk - beta));
}

class DistributionFamily {
public:
    using CdfFn = std::function<double(std::size_t, double)>;
    using AlphaFn = std::function<double(std::size_t)>;
    using SamplerFn = std::function<double(std::size_t, RandomStream&)>;
    using DensityFn = std::function<double(std::size_t, double)>;

    static DistributionFamily uniform() { return DistributionFamily(FamilyKind::uniform, ParamSequence::constant(1.0)); }
    static DistributionFamily mobius_clamped(ParamSequence c) { return {FamilyKind::mobius_clamped, std::move(c)}; }
    static DistributionFamily mobius_remark2(ParamSequence c) { return {FamilyKind::mobius_remark2, std::move(c)}; }
    static DistributionFamily discrete_beta(ParamSequence beta) { return {FamilyKind::discrete_beta, std::move(beta)}; }

    /// Continuous custom family. `density` may be empty, then A/B use a derivative-free fallback.
    static DistributionFamily custom(std::string id, CdfFn cdf, AlphaFn alpha, SamplerFn sampler,
                                     DensityFn density = {}, double support_upper = 1.0) {
        DistributionFamily f(FamilyKind::custom, ParamSequence::constant(0.0));
        f.custom_id_ = std::move(id);
        f.cdf_ = std::move(cdf);
        f.alpha_ = std::move(alpha);
        f.sampler_ = std::move(sampler);
        f.density_ = std::move(density);
        f.custom_upper_ = support_upper;
        return f;
    }

    FamilyKind kind() const { return kind_; }
    const ParamSequence& parameter() const { return param_; }
    bool is_discrete() const { return kind_ == FamilyKind::discrete_beta; }

    std::string id() const {
        switch (kind_) {
        case FamilyKind::uniform: return "uniform";
        case FamilyKind::mobius_clamped: return "mobius_clamped(c=" + param_.to_string() + ")";
        case FamilyKind::mobius_remark2: return "mobius_remark2(c=" + param_.to_string() + ")";
        case FamilyKind::discrete_beta: return "discrete_beta(beta=" + param_.to_string() + ")";
        case FamilyKind::custom: return "custom(" + custom_id_ + ")";
        }
        return {};
    }

    /// Parameter value at index n after domain validation.
    double param(std::size_t n) const {
        if (n < 1) throw DomainError("family index n must be >= 1");
        const double v = param_(n);
        switch (kind_) {
        case FamilyKind::mobius_clamped:
            if (!(v >= 0.5) || !std::isfinite(v))
                throw DomainError("mobius_clamped: c_n must be >= 1/2 so that F_n(1) = 1");
            break;
        case FamilyKind::mobius_remark2:
            if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("mobius_remark2: c_n must be positive");
            break;
        case FamilyKind::discrete_beta:
            if (!(v >= 0.0 && v < 1.0)) throw DomainError("discrete_beta: beta_n must lie in [0, 1)");
            break;
        default: break;
        }
        return v;
    }

    double alpha(std::size_t n) const {
        switch (kind_) {
        case FamilyKind::uniform: return 1.0;
        case FamilyKind::mobius_clamped:
        case FamilyKind::mobius_remark2: return param(n);
        case FamilyKind::discrete_beta: return 1.0 - param(n);
        case FamilyKind::custom: return alpha_(n);
        }
        return 1.0;
    }

    /// Right end of the support of F_n.
    double support_upper(std::size_t n) const {
        switch (kind_) {
        case FamilyKind::uniform: return 1.0;
        case FamilyKind::mobius_clamped: return 0.5 / param(n);
        case FamilyKind::mobius_remark2: return 1.0 / (1.0 + param(n));
        case FamilyKind::discrete_beta: return 0.5;
        case FamilyKind::custom: return custom_upper_;
        }
        return 1.0;
    }

    double cdf(std::size_t n, double t) const {
        if (t <= 0.0) return 0.0;
        switch (kind_) {
        case FamilyKind::uniform: return std::min(t, 1.0);
        case FamilyKind::mobius_clamped: {
            const double c = param(n);
            return t < 0.5 / c ? c * t / (1.0 - c * t) : 1.0;
        }
        case FamilyKind::mobius_remark2: {
            const double c = param(n);
            return t < 1.0 / (1.0 + c) ? c * t / (1.0 - t) : 1.0;
        }
        case FamilyKind::discrete_beta: {
            const double beta = param(n);
            const double inv = 1.0 / t;
            const double m = std::max(2.0, std::ceil(inv));
            return m > 9.0e15 ? (1.0 - beta) * t : discrete_beta_tail(beta, m - 1.0);
        }
        case FamilyKind::custom: return cdf_(n, t);
        }
        return 0.0;
    }

    /// Lebesgue density on (0, support_upper) for continuous kinds.
    std::optional<double> density(std::size_t n, double u) const {
        switch (kind_) {
        case FamilyKind::uniform: return (u > 0.0 && u <= 1.0) ? 1.0 : 0.0;
        case FamilyKind::mobius_clamped: {
            const double c = param(n);
            if (u <= 0.0 || u >= 0.5 / c) return 0.0;
            const double d = 1.0 - c * u;
            return c / (d * d);
        }
        case FamilyKind::mobius_remark2: {
            const double c = param(n);
            if (u <= 0.0 || u >= 1.0 / (1.0 + c)) return 0.0;
            const double d = 1.0 - u;
            return c / (d * d);
        }
        case FamilyKind::discrete_beta: return std::nullopt;
        case FamilyKind::custom:
            if (density_) return density_(n, u);
            return std::nullopt;
        }
        return std::nullopt;
    }

    /// First `count` atoms (point 1/k, mass P(Z = k)) of a discrete family; empty for continuous ones.
    std::vector<Atom> atoms(std::size_t n, std::size_t count) const {
        std::vector<Atom> out;
        if (!is_discrete()) return out;
        const double beta = param(n);
        out.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
            const long long k = static_cast<long long>(i) + 2;
            out.push_back({1.0 / static_cast<double>(k), discrete_beta_pmf(beta, k)});
        }
        return out;
    }

    /// Draws U_n ~ F_n, a value in (0, 1].
    double sample(std::size_t n, RandomStream& rng) const {
        if (kind_ == FamilyKind::discrete_beta) return 1.0 / sample_reciprocal(n, rng);
        if (kind_ == FamilyKind::custom) return sampler_(n, rng);
        const double u = rng.uniform_open_closed();
        switch (kind_) {
        case FamilyKind::uniform: return u;
        case FamilyKind::mobius_clamped: return u / (param(n) * (1.0 + u));
        case FamilyKind::mobius_remark2: return u / (param(n) + u);
        default: return u;
        }
    }

    /// Draws Y_n = 1/U_n. Discrete families return the integer Z exactly.
    double sample_reciprocal(std::size_t n, RandomStream& rng) const {
        if (kind_ == FamilyKind::discrete_beta) {
            const double beta = param(n);
            const double u = rng.uniform_open_closed();
            return std::floor((1.0 - beta) / u + beta) + 1.0;
        }
        if (kind_ == FamilyKind::uniform) return 1.0 / rng.uniform_open_closed();
        return 1.0 / sample(n, rng);
    }

private:
    DistributionFamily(FamilyKind k, ParamSequence p) : kind_(k), param_(std::move(p)) {}

    FamilyKind kind_;
    ParamSequence param_;
    std::string custom_id_;
    CdfFn cdf_;
    AlphaFn alpha_;
    SamplerFn sampler_;
    DensityFn density_;
    double custom_upper_ = 1.0;
};

// ---------------------------------------------------------------------------
// Discrete family helpers: piecewise-exact integrals between atoms.
// ---------------------------------------------------------------------------
namespace detail {

// sum_{m >= M} m^{-s} by Euler-Maclaurin (M large).
inline double zeta_tail(double s, double M) {
    return std::pow(M, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(M, -s) + s / 12.0 * std::pow(M, -s - 1.0) -
           s * (s + 1.0) * (s + 2.0) / 720.0 * std::pow(M, -s - 3.0);
}

// Integral over the atom gap [1/(m+1), 1/m) of (1/u)(F(u)/u - alpha) du, where F = p_m there:
// p_m - alpha log(1 + 1/m). Nonnegative for the discrete_beta family.
inline double discrete_piece(double beta, double m) {
    return discrete_beta_tail(beta, m) - (1.0 - beta) * std::log1p(1.0 / m);
}

// sum_{m >= M} discrete_piece(beta, m) via its 1/m expansion.
inline double discrete_piece_tail(double beta, double M) {
    const double a = 1.0 - beta;
    return a * ((beta + 0.5) * zeta_tail(2.0, M) + (beta * beta - 1.0 / 3.0) * zeta_tail(3.0, M) +
                (beta * beta * beta + 0.25) * zeta_tail(4.0, M) +
                (beta * beta * beta * beta - 0.2) * zeta_tail(5.0, M));
}

inline constexpr double kDiscreteExplicitTerms = 100000.0;

// sum_{m >= m0} discrete_piece(beta, m).
inline double discrete_pieces_from(double beta, double m0) {
    if (m0 >= kDiscreteExplicitTerms) return discrete_piece_tail(beta, m0);
    double s = 0.0;
    // Smallest terms first.
    for (double m = kDiscreteExplicitTerms - 1.0; m >= m0; m -= 1.0) s += discrete_piece(beta, m);
    return s + discrete_piece_tail(beta, kDiscreteExplicitTerms);
}

// int_0^t (1/u)(F(u)/u - alpha) du for the discrete family, 0 < t <= 1.
inline double discrete_regularity_integral(double beta, double t) {
    const double alpha = 1.0 - beta;
    if (t >= 1.0) return discrete_pieces_from(beta, 1.0);
    // t lies in the gap [1/(m+1), 1/m) with F = p_m there.
    const double m = std::floor(1.0 / t);
    const double p = (m >= 1.0) ? discrete_beta_tail(beta, m) : 1.0;
    const double lo = 1.0 / (m + 1.0);
    const double partial = p * (1.0 / lo - 1.0 / t) - alpha * std::log(t / lo);
    return partial + discrete_pieces_from(beta, m + 1.0);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Regularity conditions
// ---------------------------------------------------------------------------

struct ProfileRow {
    double t;
    double value;
};

struct ConditionProfile {
    std::vector<ProfileRow> rows;
    double alpha_min = 0.0;
    double alpha_max = 0.0;
    /// sup_n alpha_n grows without bound over the indices examined.
    bool alpha_unbounded = false;
    /// inf_n alpha_n tends to 0 over the indices examined.
    bool alpha_vanishing = false;

    /// Values shrink as t decreases (least-squares slope against log t is >= 0).
    bool decreasing_trend() const {
        if (rows.size() < 2) return true;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const auto& r : rows) {
            const double x = std::log(r.t);
            sx += x;
            sy += r.value;
            sxx += x * x;
            sxy += x * r.value;
        }
        const double k = static_cast<double>(rows.size());
        const double denom = k * sxx - sx * sx;
        if (denom == 0.0) return true;
        return (k * sxy - sx * sy) / denom >= -1e-12;
    }

    /// Value at the smallest t of the grid.
    double smallest_t_value() const {
        auto it = std::min_element(rows.begin(), rows.end(), [](auto& a, auto& b) { return a.t < b.t; });
        return it == rows.end() ? 0.0 : it->value;
    }

    bool passes(double tolerance) const {
        return !alpha_unbounded && !alpha_vanishing && smallest_t_value() < tolerance && decreasing_trend();
    }
};

namespace detail {

inline void validate_grid(std::size_t n_max, const std::vector<double>& t_grid) {
    if (t_grid.empty()) throw ArgumentError("condition profile: t_grid is empty");
    if (n_max < 1) throw ArgumentError("condition profile: n_max must be >= 1");
    for (double t : t_grid)
        if (!(t > 0.0 && t <= 1.0)) throw ArgumentError("condition profile: t_grid must lie in (0, 1]");
}

inline void fill_alpha_flags(const DistributionFamily& f, std::size_t n_max, ConditionProfile& p) {
    std::vector<double> alphas(n_max);
    for (std::size_t n = 1; n <= n_max; ++n) alphas[n - 1] = f.alpha(n);
    p.alpha_min = *std::min_element(alphas.begin(), alphas.end());
    p.alpha_max = *std::max_element(alphas.begin(), alphas.end());
    if (n_max < 4) return;
    // Compare the tail quarter against the head quarter of the index range.
    const std::size_t q = std::max<std::size_t>(1, n_max / 4);
    double head_max = 0, tail_min = std::numeric_limits<double>::infinity();
    double head_min = std::numeric_limits<double>::infinity(), tail_max = 0;
    for (std::size_t i = 0; i < q; ++i) {
        head_max = std::max(head_max, alphas[i]);
        head_min = std::min(head_min, alphas[i]);
    }
    for (std::size_t i = n_max - q; i < n_max; ++i) {
        tail_min = std::min(tail_min, alphas[i]);
        tail_max = std::max(tail_max, alphas[i]);
    }
    const bool increasing = std::is_sorted(alphas.begin(), alphas.end());
    const bool decreasing = std::is_sorted(alphas.rbegin(), alphas.rend());
    p.alpha_unbounded = increasing && tail_min > 2.0 * head_max;
    p.alpha_vanishing = decreasing && tail_max < 0.5 * head_min;
}

} // namespace detail

/// Rows (t, sup_{n <= n_max} |F_n(t)/t - alpha_n|).
inline ConditionProfile condition_i_profile(const DistributionFamily& family, std::size_t n_max,
                                            const std::vector<double>& t_grid) {
    detail::validate_grid(n_max, t_grid);
    ConditionProfile p;
    const std::size_t n_eval = family.parameter().is_constant() ? 1 : n_max;
    for (double t : t_grid) {
        double sup = 0.0;
        for (std::size_t n = 1; n <= n_eval; ++n) sup = std::max(sup, std::abs(family.cdf(n, t) / t - family.alpha(n)));
        p.rows.push_back({t, sup});
    }
    detail::fill_alpha_flags(family, n_max, p);
    return p;
}

/// int_0^t (1/u)|F_n(u)/u - alpha_n| du for a single index.
inline double regularity_integral(const DistributionFamily& family, std::size_t n, double t,
                                  const QuadratureSpec& spec = {}) {
    if (family.is_discrete()) return detail::discrete_regularity_integral(family.param(n), t);
    const double alpha = family.alpha(n);
    // u = e^{-s}: (1/u)|F/u - alpha| du  ->  |F(e^{-s}) e^{s} - alpha| ds.
    auto integrand = [&](double s) {
        const double u = std::exp(-s);
        return std::abs(family.cdf(n, u) / u - alpha);
    };
    const double s_lo = -std::log(t);
    const double s_hi = std::max(s_lo, 0.0) + 60.0;
    std::vector<double> cuts{-std::log(family.support_upper(n))};
    for (double s = std::ceil(s_lo); s < s_hi; s += 5.0) cuts.push_back(s);
    auto r = integrate(integrand, s_lo, s_hi, spec, cuts);
    if (!r.converged) throw AccuracyError("regularity_integral: quadrature did not converge", r.error);
    return r.value;
}

/// Rows (t, sup_{n <= n_max} int_0^t (1/u)|F_n(u)/u - alpha_n| du).
inline ConditionProfile condition_ii_profile(const DistributionFamily& family, std::size_t n_max,
                                             const std::vector<double>& t_grid, const QuadratureSpec& spec = {}) {
    detail::validate_grid(n_max, t_grid);
    ConditionProfile p;
    const std::size_t n_eval = family.parameter().is_constant() ? 1 : n_max;
    for (double t : t_grid) {
        double sup = 0.0;
        for (std::size_t n = 1; n <= n_eval; ++n) sup = std::max(sup, regularity_integral(family, n, t, spec));
        p.rows.push_back({t, sup});
    }
    detail::fill_alpha_flags(family, n_max, p);
    return p;
}

// ---------------------------------------------------------------------------
// Constants b_F, c_F
// ---------------------------------------------------------------------------

struct FamilyConstants {
    std::size_t n = 1;
    double b = 0.0;
    double c = 0.0;
    double quadrature_error = 0.0;
};

/// b = int_0^1 (1/u)(F_n(u)/u - alpha_n) du and c = 1 - alpha_n gamma + b.
inline FamilyConstants family_constants(const DistributionFamily& family, std::size_t n,
                                        const QuadratureSpec& spec = {}) {
    spec.validate();
    const double alpha = family.alpha(n);
    FamilyConstants out;
    out.n = n;
    if (family.is_discrete()) {
        const double beta = family.param(n);
        out.b = detail::discrete_pieces_from(beta, 1.0);
        out.quadrature_error = 1e-14;
    } else {
        auto integrand = [&](double s) {
            const double u = std::exp(-s);
            return family.cdf(n, u) / u - alpha;
        };
        const double s_hi = 60.0;
        std::vector<double> cuts{-std::log(family.support_upper(n))};
        for (double s = 5.0; s < s_hi; s += 5.0) cuts.push_back(s);
        auto r = integrate(integrand, 0.0, s_hi, spec.tightened(0.1), cuts);
        if (!r.converged) throw AccuracyError("family_constants: quadrature did not converge", r.error);
        // Neglected piece beyond s_hi is at most |F(u)/u - alpha| there times the remaining length scale.
        out.b = r.value;
        out.quadrature_error = r.error + std::abs(integrand(s_hi));
    }
    out.c = 1.0 - alpha * specfun::kEulerGamma + out.b;
    return out;
}

// ---------------------------------------------------------------------------
// Characteristic components of Y_n = 1/U_n
// ---------------------------------------------------------------------------

struct CharComponents {
    double A = 0.0; ///< int (cos(t/u) - 1) dF_n(u)
    double B = 0.0; ///< int sin(t/u) dF_n(u)
    double error = 0.0;

    std::complex<double> psi() const { return {1.0 + A, B}; }
};

namespace detail {

inline CharComponents discrete_char_components(double beta, double t, const QuadratureSpec& spec) {
    // psi(t) = e^{it} + (e^{it} - 1) h(e^{it}),  h(z) = z 2F1(1, 1-beta, 2-beta; z).
    const std::complex<double> z = std::polar(1.0, t);
    const std::complex<double> zm1 = z - 1.0;
    if (std::abs(zm1) < 1e-13) return {0.0, 0.0, 0.0};
    const std::complex<double> h = z * specfun::gauss_2f1_unit(beta, z, spec);
    const std::complex<double> psi = z + zm1 * h;
    return {psi.real() - 1.0, psi.imag(), spec.abs_tol};
}

} // namespace detail

/**
 * A_n(t) and B_n(t). Continuous families go through v = t/u, which turns the
 * integrals into t int (cos v - 1 | sin v) f(t/v) / v^2 dv over [t/u_max, inf),
 * summed over half periods. Discrete families use the generating function of
 * the tail probabilities.
 */
inline CharComponents char_components(const DistributionFamily& family, std::size_t n, double t,
                                      const QuadratureSpec& spec = {}) {
    spec.validate();
    if (t == 0.0) return {};
    if (t < 0.0) {
        auto r = char_components(family, n, -t, spec);
        r.B = -r.B;
        return r;
    }
    if (family.is_discrete()) return detail::discrete_char_components(family.param(n), t, spec);

    const double u_max = family.support_upper(n);
    const double v0 = t / u_max;
    const double pi = std::numbers::pi;
    const QuadratureSpec chunk_spec = spec.tightened(0.01);

    std::function<double(double)> weight;
    if (auto d = family.density(n, 0.5 * u_max); d.has_value()) {
        weight = [&family, n, t](double v) { return *family.density(n, t / v); };
    } else {
        // Finite-difference density for custom families without one.
        weight = [&family, n, t, u_max](double v) {
            const double u = t / v;
            const double h = 1e-6 * std::max(u, 1e-12);
            const double hi = std::min(u + h, u_max);
            const double lo = std::max(u - h, 0.0);
            return (family.cdf(n, hi) - family.cdf(n, lo)) / (hi - lo);
        };
    }

    // A = t int cos(v) w(v)/v^2 dv - F(u_max); the -1/v^2 part integrates to -F(u_max)/t exactly.
    auto cos_part = [&](double v) { return std::cos(v) * weight(v) / (v * v); };
    auto sin_part = [&](double v) { return std::sin(v) * weight(v) / (v * v); };

    const double first_cos_zero = (std::floor(v0 / pi - 0.5) + 1.5) * pi;
    auto cos_chunk = [&](int k) {
        const double a = (k == 0) ? v0 : first_cos_zero + (k - 1) * pi;
        return integrate(cos_part, a, first_cos_zero + k * pi, chunk_spec);
    };
    const double first_sin_zero = (std::floor(v0 / pi) + 1.0) * pi;
    auto sin_chunk = [&](int k) {
        const double a = (k == 0) ? v0 : first_sin_zero + (k - 1) * pi;
        return integrate(sin_part, a, first_sin_zero + k * pi, chunk_spec);
    };

    // Relative tolerance on the v-integrals is scaled by t so A and B come out with absolute accuracy.
    QuadratureSpec sum_spec = spec;
    sum_spec.abs_tol = spec.abs_tol / t;
    auto a = sum_oscillatory_chunks(cos_chunk, sum_spec);
    auto b = sum_oscillatory_chunks(sin_chunk, sum_spec);
    if (!a.converged || !b.converged)
        throw AccuracyError("char_components: oscillatory quadrature did not converge", t * (a.error + b.error));
    CharComponents out;
    out.A = t * a.value - family.cdf(n, u_max);
    out.B = t * b.value;
    out.error = t * (a.error + b.error);
    return out;
}

struct SineCenteringProfile {
    std::vector<ProfileRow> rows;
    double extrapolated_limit = 0.0;
};

/// Rows (t, (1/t) int sin(t/u) dF_n(u) + alpha_n log t) and the t -> 0 limit extrapolated from the three smallest t.
inline SineCenteringProfile sine_centering_profile(const DistributionFamily& family, std::size_t n,
                                             const std::vector<double>& t_grid, const QuadratureSpec& spec = {}) {
    if (t_grid.empty()) throw ArgumentError("sine_centering_profile: t_grid is empty");
    SineCenteringProfile p;
    const double alpha = family.alpha(n);
    for (double t : t_grid) {
        if (!(t > 0.0 && t < 1.0)) throw ArgumentError("sine_centering_profile: t_grid must lie in (0, 1)");
        const auto cc = char_components(family, n, t, spec);
        p.rows.push_back({t, cc.B / t + alpha * std::log(t)});
    }
    auto sorted = p.rows;
    std::sort(sorted.begin(), sorted.end(), [](auto& a, auto& b) { return a.t < b.t; });
    const std::size_t k = std::min<std::size_t>(3, sorted.size());
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < k; ++i) {
        xs.push_back(sorted[i].t);
        ys.push_back(sorted[i].value);
    }
    p.extrapolated_limit = extrapolate_to_zero(xs, ys);
    return p;
}

} // namespace oppenheim::distributions

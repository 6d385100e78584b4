#pragma once

/**
 * @file stats.hpp
 * @brief Kolmogorov-Smirnov distances, empirical characteristic functions and
 *        small order-statistic helpers.
 */

#include "oppenheim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

namespace oppenheim::stats {

/// sup_x |ECDF(x) - F(x)| over sorted data, taking both one-sided gaps at each jump.
template <class Cdf>
double ks_sorted(std::span<const double> sorted, Cdf&& cdf) {
    if (sorted.empty()) throw ArgumentError("ks distance: sample is empty");
    const double m = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        d = std::max({d, static_cast<double>(i + 1) / m - f, f - static_cast<double>(i) / m});
    }
    return d;
}

template <class Cdf>
double ks_distance(std::vector<double> samples, Cdf&& cdf) {
    std::sort(samples.begin(), samples.end());
    return ks_sorted(samples, std::forward<Cdf>(cdf));
}

/// Two-sample statistic sup_x |F_a(x) - F_b(x)|.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw ArgumentError("two-sample ks: a sample is empty");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

inline double median(std::vector<double> v) {
    if (v.empty()) throw ArgumentError("median: sample is empty");
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    const double hi = v[mid];
    if (v.size() % 2 == 1) return hi;
    const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lo + hi);
}

/// (1/M) sum_j exp(i t x_j).
inline std::complex<double> empirical_char_fn(std::span<const double> x, double t) {
    if (x.empty()) throw ArgumentError("empirical_char_fn: sample is empty");
    double re = 0.0, im = 0.0;
    for (double v : x) {
        re += std::cos(t * v);
        im += std::sin(t * v);
    }
    const double m = static_cast<double>(x.size());
    return {re / m, im / m};
}

/// Fraction of |x_j - center| > eps.
inline double exceedance(std::span<const double> x, double center, double eps) {
    if (x.empty()) throw ArgumentError("exceedance: sample is empty");
    std::size_t c = 0;
    for (double v : x)
        if (std::abs(v - center) > eps) ++c;
    return static_cast<double>(c) / static_cast<double>(x.size());
}

} // namespace oppenheim::stats

#pragma once

/**
 * @file quadrature.hpp
 * @brief Adaptive Gauss-Kronrod quadrature and half-period chunking for
 *        oscillatory tails.
 *
 * Everything here is a pure function of its arguments. The integrators are
 * templated on the integrand's value type so the same code handles real and
 * complex integrands (the hypergeometric slice is complex valued).
 */

#include "oppenheim/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <queue>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

namespace oppenheim {

/// Tolerances shared by every quadrature in the library.
struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 1'000'000;
    /// Integrate oscillatory tails chunk by chunk with epsilon-algorithm acceleration.
    bool oscillation_chunking = true;

    void validate() const {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
            throw ArgumentError("QuadratureSpec: tolerances must be positive");
        if (max_subdivisions < 1)
            throw ArgumentError("QuadratureSpec: max_subdivisions must be >= 1");
    }

    QuadratureSpec tightened(double factor) const {
        QuadratureSpec s = *this;
        s.abs_tol *= factor;
        s.rel_tol *= factor;
        return s;
    }
};

template <class V>
struct QuadResult {
    V value{};
    double error = 0.0;
    long evaluations = 0;
    bool converged = true;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15 tables).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class V>
struct Segment {
    double a;
    double b;
    V value;
    double error;
    /// Rounding floor 50 eps int |f| below which `error` cannot fall.
    double roundoff;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <class V, class F>
Segment<V> gk15(F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const V fc = f(center);
    V resk = fc * kWgk[7];
    V resg = fc * kWg[3];
    double resabs = std::abs(fc) * kWgk[7];
    std::array<V, 7> f1{}, f2{};
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        f1[j] = f(center - dx);
        f2[j] = f(center + dx);
        const V sum = f1[j] + f2[j];
        resk += sum * kWgk[j];
        resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) resg += sum * kWg[j / 2];
    }
    const V mean = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

    const double ah = std::abs(half);
    resk *= half;
    resabs *= ah;
    resasc *= ah;
    double err = std::abs((resk - resg * half));
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    const double roundoff = 50.0 * eps * resabs;
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(err, roundoff);
    return {a, b, resk, err, roundoff};
}

} // namespace detail

/**
 * Globally adaptive Gauss-Kronrod (7/15) integration over [a, b] with optional
 * interior breakpoints. The interval with the largest error estimate is
 * bisected until the summed estimate meets max(abs_tol, rel_tol*|I|) or the
 * subdivision budget runs out (then `converged` is false).
 */
template <class F>
auto integrate(F&& f, double a, double b, const QuadratureSpec& spec = {},
               std::span<const double> breakpoints = {}) {
    using V = std::decay_t<decltype(f(a))>;
    QuadResult<V> out;
    if (a == b) return out;
    if (a > b) {
        auto r = integrate(std::forward<F>(f), b, a, spec, breakpoints);
        r.value = -r.value;
        return r;
    }

    std::vector<double> cuts{a};
    for (double p : breakpoints)
        if (p > a && p < b) cuts.push_back(p);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::priority_queue<detail::Segment<V>> heap;
    V total{};
    double total_err = 0.0, total_roundoff = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        auto s = detail::gk15<V>(f, cuts[i], cuts[i + 1]);
        total += s.value;
        total_err += s.error;
        total_roundoff += s.roundoff;
        heap.push(s);
    }
    out.evaluations = 15L * static_cast<long>(heap.size());

    // Tolerances below the rounding floor are met once only rounding error remains.
    int splits = 0;
    while (total_err > std::max({spec.abs_tol, spec.rel_tol * std::abs(total), 2.0 * total_roundoff})) {
        if (splits >= spec.max_subdivisions) {
            out.converged = false;
            break;
        }
        auto worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // Interval is at floating point resolution; further bisection is meaningless.
            out.converged = total_err <= 1e3 * std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
            break;
        }
        heap.pop();
        auto left = detail::gk15<V>(f, worst.a, mid);
        auto right = detail::gk15<V>(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        total_roundoff += left.roundoff + right.roundoff - worst.roundoff;
        heap.push(left);
        heap.push(right);
        out.evaluations += 30;
        ++splits;
    }

    // Re-sum from the heap to shed accumulated cancellation in `total`.
    V resum{};
    double err = 0.0;
    while (!heap.empty()) {
        resum += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    out.value = resum;
    out.error = err;
    return out;
}

/// Wynn's epsilon algorithm; returns the highest even-column entry of the table.
inline double wynn_epsilon(std::span<const double> partial_sums) {
    if (partial_sums.empty()) return 0.0;
    std::vector<double> prev(partial_sums.size() + 1, 0.0);
    std::vector<double> cur(partial_sums.begin(), partial_sums.end());
    double best = cur.back();
    for (int k = 1; cur.size() > 1; ++k) {
        std::vector<double> next(cur.size() - 1);
        for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
            const double diff = cur[i + 1] - cur[i];
            if (diff == 0.0) return (k % 2 == 1) ? cur[i + 1] : best;
            next[i] = prev[i + 1] + 1.0 / diff;
        }
        prev = std::move(cur);
        cur = std::move(next);
        if (k % 2 == 0) best = cur.back();
    }
    return best;
}

/**
 * Sum of an alternating series of chunk integrals sum_{k>=0} c_k, where
 * c_k = chunk(k) integrates one half period. Partial sums are accelerated
 * with the epsilon algorithm; iteration stops once two successive
 * extrapolations agree within tolerance.
 */
template <class Chunk>
QuadResult<double> sum_oscillatory_chunks(Chunk&& chunk, const QuadratureSpec& spec,
                                          int min_chunks = 12, int max_chunks = 400) {
    QuadResult<double> out;
    std::vector<double> partial;
    partial.reserve(static_cast<std::size_t>(max_chunks));
    double running = 0.0;
    double chunk_err = 0.0;
    double last_est = std::numeric_limits<double>::quiet_NaN();
    for (int k = 0; k < max_chunks; ++k) {
        QuadResult<double> c = chunk(k);
        out.evaluations += c.evaluations;
        chunk_err += c.error;
        if (!c.converged) out.converged = false;
        running += c.value;
        partial.push_back(running);
        if (k + 1 < min_chunks) continue;
        // Only the trailing window feeds the epsilon table; older sums add nothing.
        const std::size_t window = std::min<std::size_t>(partial.size(), 40);
        const double est = wynn_epsilon(std::span<const double>(partial).last(window));
        const double diff = std::abs(est - last_est);
        last_est = est;
        if (diff <= std::max(spec.abs_tol, spec.rel_tol * std::abs(est))) {
            out.value = est;
            out.error = diff + chunk_err;
            return out;
        }
    }
    out.value = last_est;
    out.error = std::abs(partial.back() - last_est) + chunk_err;
    out.converged = false;
    return out;
}

/// Neville extrapolation to x = 0 of the points (x_i, y_i).
inline double extrapolate_to_zero(std::vector<double> x, std::vector<double> y) {
    const std::size_t k = x.size();
    for (std::size_t level = 1; level < k; ++level)
        for (std::size_t i = 0; i + level < k; ++i)
            y[i] = (x[i + level] * y[i] - x[i] * y[i + 1]) / (x[i + level] - x[i]);
    return y.empty() ? 0.0 : y[0];
}

} // namespace oppenheim

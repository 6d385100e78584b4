#pragma once

// Independent reference values used by the unit tests: power series in long
// double, asymptotic expansions and direct sums. None of them call the library.

#include <cmath>
#include <complex>
#include <numbers>

namespace oracles {

inline constexpr long double kGamma = 0.577215664901532860606512090082L;

/// Ci(x) = gamma + log x + sum_{k>=1} (-1)^k x^{2k} / (2k (2k)!), fine for x <= 12.
inline double ci_series(double xd) {
    const long double x = xd;
    long double term = 1.0L, sum = 0.0L;
    for (int k = 1; k < 200; ++k) {
        term *= -x * x / ((2.0L * k - 1) * (2.0L * k));
        const long double add = term / (2.0L * k);
        sum += add;
        if (std::fabs(add) < 1e-30L) break;
    }
    return static_cast<double>(kGamma + std::log(x) + sum);
}

/// Si(x) = sum_{k>=0} (-1)^k x^{2k+1} / ((2k+1)(2k+1)!).
inline double si_series(double xd) {
    const long double x = xd;
    long double term = x, sum = x;
    for (int k = 1; k < 200; ++k) {
        term *= -x * x / ((2.0L * k) * (2.0L * k + 1));
        const long double add = term / (2.0L * k + 1);
        sum += add;
        if (std::fabs(add) < 1e-30L) break;
    }
    return static_cast<double>(sum);
}

/// Ci(x) for large x from the auxiliary asymptotic series, truncated at the smallest term.
inline double ci_asymptotic(double xd) {
    const long double x = xd;
    long double f = 0, g = 0, term = 1.0L / x, prev = INFINITY;
    for (int k = 0; k < 60; ++k) {
        // term = (2k)! / x^{2k+1} for f, (2k+1)!/x^{2k+2} for g
        const long double tf = term, tg = term * (2 * k + 1) / x;
        if (std::fabs(tg) > prev) break;
        f += (k % 2 ? -tf : tf);
        g += (k % 2 ? -tg : tg);
        prev = std::fabs(tg);
        term = tg * (2 * k + 2) / x;
    }
    return static_cast<double>(f * std::sin(x) - g * std::cos(x));
}

/// (1 - beta) sum_k z^k / (k + 1 - beta), |z| < 1.
inline std::complex<double> hyp_series(double beta, std::complex<double> z) {
    std::complex<long double> s = 0, zk = 1, zz(z.real(), z.imag());
    for (int k = 0; k < 20000; ++k) {
        const auto t = zk * static_cast<long double>((1.0L - beta) / (k + 1.0L - beta));
        s += t;
        if (std::abs(t) < 1e-24L) break;
        zk *= zz;
    }
    return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

} // namespace oracles

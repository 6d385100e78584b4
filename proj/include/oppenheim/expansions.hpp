#pragma once

/**
 * @file expansions.hpp
 * @brief Lüroth, Engel, Sylvester and continued-fraction digits of exact
 *        rationals, and random digit paths of the general Oppenheim scheme.
 *
 * Deterministic extraction runs on arbitrary-precision rationals so every
 * expansion resums bit-exactly to its input. Sampling comes in two flavours:
 * an exact one (big-integer digits, exact ratios) and a double-precision fast
 * path for Monte Carlo work.
 *
 * Digit conventions:
 *   - Lüroth:  d = k iff x in (1/k, 1/(k-1)],  x' = d(d-1)x - (d-1)
 *   - Engel:   q = floor(1/x) + 1,             x' = q x - 1
 *   - Sylvester: q = floor(1/x) + 1,           x' = x - 1/q
 *   - continued fraction: a = floor(1/x),     x' = 1/x - a
 *
 * The general scheme works with Theta_n = D_n - 1. Given Theta_n = h and Q_n = q,
 *   delta_n(h, k, q) = phi_n(h)(1 + q) / (k + phi_n(h) q),
 * Theta_{n+1} = k iff delta_n(h, k+1, q) < U_n <= delta_n(h, k, q) with U_n ~ F_n,
 * and R_n = 1 / delta_n(Theta_n, Theta_{n+1}, Q_n). Engel is phi(h) = h and
 * Sylvester is phi(h) = h(h+1), both with q = 0.
 */

#include "oppenheim/distributions.hpp"
#include "oppenheim/errors.hpp"
#include "oppenheim/rng.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace oppenheim::expansions {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class ExpansionKind { luroth, engel, sylvester, continued_fraction, oppenheim_general };

inline std::string to_string(ExpansionKind k) {
    switch (k) {
    case ExpansionKind::luroth: return "luroth";
    case ExpansionKind::engel: return "engel";
    case ExpansionKind::sylvester: return "sylvester";
    case ExpansionKind::continued_fraction: return "continued_fraction";
    case ExpansionKind::oppenheim_general: return "oppenheim_general";
    }
    return "unknown";
}

inline ExpansionKind parse_kind(std::string_view s) {
    if (s == "luroth") return ExpansionKind::luroth;
    if (s == "engel") return ExpansionKind::engel;
    if (s == "sylvester") return ExpansionKind::sylvester;
    if (s == "continued_fraction" || s == "cf") return ExpansionKind::continued_fraction;
    if (s == "oppenheim_general") return ExpansionKind::oppenheim_general;
    throw ArgumentError("unknown expansion kind '" + std::string(s) + "'");
}

struct DeterministicOrigin {
    Rational x;
};

struct SampledOrigin {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    std::string family_id;
};

struct DigitSequence {
    ExpansionKind kind = ExpansionKind::luroth;
    std::vector<BigInt> digits;
    /// The remainder reached 0: the expansion is finite and `digits` is complete.
    bool terminated = false;
    /// Remainder after the last emitted digit (deterministic extraction only).
    Rational remainder = 0;
    std::variant<DeterministicOrigin, SampledOrigin> origin = DeterministicOrigin{};
};

inline BigInt floor_of(const Rational& r) {
    BigInt q = numerator(r) / denominator(r); // truncates toward zero
    if (r < 0 && Rational(q) != r) q -= 1;
    return q;
}

/// Parses "p/q", an integer, or a decimal string such as "0.75" or "2.5e-3" into an exact rational.
inline Rational parse_rational(std::string_view text) {
    auto fail = [&] { return ArgumentError("cannot parse '" + std::string(text) + "' as a rational number"); };
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    if (text.empty()) throw fail();
    auto parse_int = [&](std::string_view s) -> BigInt {
        s = trim(s);
        bool neg = false;
        if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
            neg = s.front() == '-';
            s.remove_prefix(1);
        }
        if (s.empty()) throw fail();
        BigInt v = 0;
        for (char c : s) {
            if (!std::isdigit(static_cast<unsigned char>(c))) throw fail();
            v = v * 10 + (c - '0');
        }
        return neg ? BigInt(-v) : v;
    };
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        const BigInt p = parse_int(text.substr(0, slash));
        const BigInt q = parse_int(text.substr(slash + 1));
        if (q == 0) throw ArgumentError("rational '" + std::string(text) + "' has zero denominator");
        return Rational(p, q);
    }
    long long exponent = 0;
    std::string_view mant = text;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        const BigInt ex = parse_int(text.substr(e + 1));
        if (ex > 100000 || ex < -100000) throw fail();
        exponent = ex.convert_to<long long>();
        mant = text.substr(0, e);
    }
    bool neg = false;
    if (!mant.empty() && (mant.front() == '-' || mant.front() == '+')) {
        neg = mant.front() == '-';
        mant.remove_prefix(1);
    }
    BigInt digits = 0;
    bool seen_digit = false, seen_point = false;
    for (char c : mant) {
        if (c == '.') {
            if (seen_point) throw fail();
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits = digits * 10 + (c - '0');
            seen_digit = true;
            if (seen_point) --exponent;
        } else {
            throw fail();
        }
    }
    if (!seen_digit) throw fail();
    Rational v(digits);
    const BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
    v = exponent < 0 ? v / Rational(scale) : v * Rational(scale);
    return neg ? Rational(-v) : v;
}

namespace detail {

inline void check_unit_interval(const Rational& x, const char* what) {
    if (!(x > 0 && x <= 1)) throw DomainError(std::string(what) + ": x must lie in (0, 1]");
}

inline void check_count(std::size_t count, const char* what) {
    if (count < 1) throw ArgumentError(std::string(what) + ": count must be >= 1");
}

} // namespace detail

inline DigitSequence luroth_digits(const Rational& x0, std::size_t count) {
    detail::check_unit_interval(x0, "luroth_digits");
    detail::check_count(count, "luroth_digits");
    DigitSequence out{ExpansionKind::luroth, {}, false, 0, DeterministicOrigin{x0}};
    Rational x = x0;
    for (std::size_t i = 0; i < count; ++i) {
        if (x == 0) {
            out.terminated = true;
            break;
        }
        // d = k iff x in (1/k, 1/(k-1)]  <=>  k - 1 <= 1/x < k  <=>  k = floor(1/x) + 1.
        const BigInt d = floor_of(Rational(1) / x) + 1;
        out.digits.push_back(d);
        x = Rational(d * (d - 1)) * x - Rational(d - 1);
    }
    out.remainder = x;
    if (x == 0) out.terminated = true;
    return out;
}

inline DigitSequence engel_digits(const Rational& x0, std::size_t count) {
    detail::check_unit_interval(x0, "engel_digits");
    detail::check_count(count, "engel_digits");
    DigitSequence out{ExpansionKind::engel, {}, false, 0, DeterministicOrigin{x0}};
    Rational x = x0;
    for (std::size_t i = 0; i < count && x != 0; ++i) {
        const BigInt q = floor_of(Rational(1) / x) + 1;
        out.digits.push_back(q);
        x = Rational(q) * x - 1;
    }
    out.remainder = x;
    out.terminated = (x == 0);
    return out;
}

inline DigitSequence sylvester_digits(const Rational& x0, std::size_t count) {
    detail::check_unit_interval(x0, "sylvester_digits");
    detail::check_count(count, "sylvester_digits");
    DigitSequence out{ExpansionKind::sylvester, {}, false, 0, DeterministicOrigin{x0}};
    Rational x = x0;
    for (std::size_t i = 0; i < count && x != 0; ++i) {
        const BigInt q = floor_of(Rational(1) / x) + 1;
        out.digits.push_back(q);
        x -= Rational(BigInt(1), q);
    }
    out.remainder = x;
    out.terminated = (x == 0);
    return out;
}

inline DigitSequence continued_fraction_digits(const Rational& x0, std::size_t count) {
    if (!(x0 > 0 && x0 < 1)) throw DomainError("continued_fraction_digits: x must lie in (0, 1)");
    detail::check_count(count, "continued_fraction_digits");
    DigitSequence out{ExpansionKind::continued_fraction, {}, false, 0, DeterministicOrigin{x0}};
    Rational x = x0;
    for (std::size_t i = 0; i < count && x != 0; ++i) {
        const Rational inv = Rational(1) / x;
        const BigInt a = floor_of(inv);
        out.digits.push_back(a);
        x = inv - Rational(a);
    }
    out.remainder = x;
    out.terminated = (x == 0);
    return out;
}

/// Continued fraction of a double, taken exactly from its binary value.
inline DigitSequence continued_fraction_digits(double x, std::size_t count) {
    if (!std::isfinite(x)) throw DomainError("continued_fraction_digits: x must be finite");
    return continued_fraction_digits(Rational(x), count);
}

inline DigitSequence expand(ExpansionKind kind, const Rational& x, std::size_t count) {
    switch (kind) {
    case ExpansionKind::luroth: return luroth_digits(x, count);
    case ExpansionKind::engel: return engel_digits(x, count);
    case ExpansionKind::sylvester: return sylvester_digits(x, count);
    case ExpansionKind::continued_fraction: return continued_fraction_digits(x, count);
    case ExpansionKind::oppenheim_general:
        throw ArgumentError("expand: oppenheim_general digits are only produced by sampling");
    }
    throw ArgumentError("expand: unknown kind");
}

/**
 * Rebuilds x from digits plus the stored remainder:
 *   Lüroth     sum 1/(s_1..s_{k-1} d_k) + x_{n+1}/(s_1..s_n),  s = d(d-1)
 *   Engel      sum 1/(q_1..q_k) + x_{n+1}/(q_1..q_n)
 *   Sylvester  sum 1/q_k + x_{n+1}
 *   CF         [0; a_1, ..., a_n + x_{n+1}]
 */
inline Rational resum(const DigitSequence& seq) {
    const auto& d = seq.digits;
    switch (seq.kind) {
    case ExpansionKind::luroth: {
        Rational sum = 0, prod = 1;
        for (const auto& di : d) {
            sum += Rational(BigInt(1)) / (prod * Rational(di));
            prod *= Rational(di * (di - 1));
        }
        return sum + seq.remainder / prod;
    }
    case ExpansionKind::engel: {
        Rational sum = 0, prod = 1;
        for (const auto& qi : d) {
            prod *= Rational(qi);
            sum += Rational(1) / prod;
        }
        return sum + seq.remainder / prod;
    }
    case ExpansionKind::sylvester: {
        Rational sum = seq.remainder;
        for (const auto& qi : d) sum += Rational(BigInt(1), qi);
        return sum;
    }
    case ExpansionKind::continued_fraction: {
        Rational v = seq.remainder;
        for (auto it = d.rbegin(); it != d.rend(); ++it) v = Rational(1) / (Rational(*it) + v);
        return v;
    }
    case ExpansionKind::oppenheim_general: break;
    }
    throw ArgumentError("resum: digits of this kind carry no deterministic series");
}

/**
 * Ratio variables from a digit sequence:
 *   Lüroth     R_k = D_{k+1} - 1
 *   Engel      R_k = (D_{k+1} - 1)/(D_k - 1)
 *   Sylvester  R_k = (D_{k+1} - 1)/(D_k (D_k - 1))
 * One ratio per consecutive digit pair.
 */
inline std::vector<Rational> ratios(ExpansionKind kind, std::span<const BigInt> d) {
    std::vector<Rational> r;
    for (std::size_t k = 0; k + 1 < d.size(); ++k) {
        switch (kind) {
        case ExpansionKind::luroth: r.emplace_back(d[k + 1] - 1); break;
        case ExpansionKind::engel:
            if (d[k] == 1) throw SchemeError("ratios: Engel digit equal to 1 makes the ratio degenerate");
            r.emplace_back(d[k + 1] - 1, d[k] - 1);
            break;
        case ExpansionKind::sylvester:
            if (d[k] <= 1) throw SchemeError("ratios: Sylvester digit <= 1 makes the ratio degenerate");
            r.emplace_back(d[k + 1] - 1, d[k] * (d[k] - 1));
            break;
        default: throw ArgumentError("ratios: unsupported kind " + to_string(kind));
        }
    }
    return r;
}

inline std::vector<Rational> ratios(const DigitSequence& seq) { return ratios(seq.kind, seq.digits); }

// ---------------------------------------------------------------------------
// General scheme
// ---------------------------------------------------------------------------

struct OppenheimScheme {
    std::string name = "custom";
    /// phi_j(h), exact.
    std::function<Rational(std::size_t, const BigInt&)> phi;
    /// phi_j(h) in double precision, for the fast sampler.
    std::function<double(std::size_t, double)> phi_fast;
    /// q_j(history); empty means q = 0.
    std::function<Rational(std::size_t, std::span<const BigInt>)> q;
    /// Observable X_k from (Theta_k, Theta_{k+1}) used by weak-law runs; empty means X_k = R_k.
    std::function<double(double, double)> observable;
    distributions::DistributionFamily digit_family = distributions::DistributionFamily::uniform();

    Rational delta(std::size_t level, const BigInt& h, const BigInt& k, const Rational& qv) const {
        const Rational p = phi(level, h);
        return p * (1 + qv) / (Rational(k) + p * qv);
    }

    static OppenheimScheme engel() {
        OppenheimScheme s;
        s.name = "engel";
        s.phi = [](std::size_t, const BigInt& h) { return Rational(h); };
        s.phi_fast = [](std::size_t, double h) { return h; };
        // D_{k+1}/D_k with D = Theta + 1.
        s.observable = [](double h, double k) { return (k + 1.0) / (h + 1.0); };
        return s;
    }

    static OppenheimScheme sylvester() {
        OppenheimScheme s;
        s.name = "sylvester";
        s.phi = [](std::size_t, const BigInt& h) { return Rational(h * (h + 1)); };
        s.phi_fast = [](std::size_t, double h) { return h * (h + 1.0); };
        // D_{k+1}/D_k^2 with D = Theta + 1.
        s.observable = [](double h, double k) { return (k + 1.0) / ((h + 1.0) * (h + 1.0)); };
        return s;
    }

    /// phi = 0, Q = 0. Rejected by the general sampler; Lüroth digits are sampled directly.
    static OppenheimScheme luroth() {
        OppenheimScheme s;
        s.name = "luroth";
        s.phi = [](std::size_t, const BigInt&) { return Rational(0); };
        s.phi_fast = [](std::size_t, double) { return 0.0; };
        return s;
    }
};

struct SampledExpansion {
    /// Theta_1 .. Theta_{n+1}.
    DigitSequence digits;
    /// R_1 .. R_n.
    std::vector<Rational> ratios;
};

namespace detail {

[[noreturn]] inline void phi_degenerate(const std::string& name) {
    throw SchemeError("scheme '" + name +
                      "': phi = 0 makes delta identically 0; sample Lüroth digits with sample_luroth_digits instead");
}

} // namespace detail

/**
 * Exact digit path of the general scheme. Theta_1 is `start` when given, else
 * floor(1/U_0) with U_0 uniform (the first Engel digit law minus one).
 * Each U_n is drawn from scheme.digit_family at index n and taken as the
 * exact binary rational it is.
 */
inline SampledExpansion sample_oppenheim(const OppenheimScheme& scheme, std::size_t n, RandomStream& rng,
                                         std::optional<BigInt> start = std::nullopt) {
    if (n < 1) throw ArgumentError("sample_oppenheim: n must be >= 1");
    if (!scheme.phi) throw ArgumentError("sample_oppenheim: scheme has no phi");
    SampledExpansion out;
    out.digits.kind = ExpansionKind::oppenheim_general;
    out.digits.origin = SampledOrigin{0, 0, scheme.digit_family.id()};
    BigInt theta = start ? *start : floor_of(Rational(1) / Rational(rng.uniform_open_closed()));
    out.digits.digits.push_back(theta);
    for (std::size_t level = 1; level <= n; ++level) {
        const Rational p = scheme.phi(level, theta);
        if (p <= 0) detail::phi_degenerate(scheme.name);
        const Rational qv = scheme.q ? scheme.q(level, out.digits.digits) : Rational(0);
        const Rational u(scheme.digit_family.sample(level, rng));
        const BigInt k = floor_of(p * (1 + qv) / u - p * qv);
        out.ratios.push_back((Rational(k) + p * qv) / (p * (1 + qv)));
        out.digits.digits.push_back(k);
        theta = k;
    }
    return out;
}

/**
 * Double-precision digit path with q = 0, writing R_1..R_n into `ratios` and
 * the scheme observable into `observables` (may be empty). Once phi(Theta)
 * reaches 2^52 digits are no longer representable; from then on R = 1/U,
 * which is exact to within 1/phi.
 */
inline void sample_oppenheim_fast(const OppenheimScheme& scheme, RandomStream& rng, std::span<double> ratios,
                                  std::span<double> observables = {}, double start = 0.0) {
    if (!scheme.phi_fast) throw ArgumentError("sample_oppenheim_fast: scheme has no double-precision phi");
    if (scheme.q) throw ArgumentError("sample_oppenheim_fast: only q = 0 schemes are supported");
    constexpr double kLarge = 0x1.0p52;
    double theta = start > 0.0 ? start : std::floor(1.0 / rng.uniform_open_closed());
    bool large = false;
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        const std::size_t level = i + 1;
        const double u = scheme.digit_family.sample(level, rng);
        double r;
        if (large) {
            r = 1.0 / u;
            if (!observables.empty()) observables[i] = r;
        } else {
            const double p = scheme.phi_fast(level, theta);
            if (!(p > 0.0)) detail::phi_degenerate(scheme.name);
            if (p >= kLarge) {
                large = true;
                r = 1.0 / u;
                if (!observables.empty()) observables[i] = r;
            } else {
                const double k = std::floor(p / u);
                r = k / p;
                if (!observables.empty()) observables[i] = scheme.observable ? scheme.observable(theta, k) : r;
                theta = k;
            }
        }
        ratios[i] = r;
    }
}

/// Lüroth digit D = floor(1/U) + 1 of a uniform point.
inline double luroth_digit(RandomStream& rng) { return std::floor(1.0 / rng.uniform_open_closed()) + 1.0; }

/// i.i.d. Lüroth digits D_1..D_n of a uniform point.
inline void sample_luroth_digits(RandomStream& rng, std::span<double> out) {
    for (auto& d : out) d = luroth_digit(rng);
}

} // namespace oppenheim::expansions

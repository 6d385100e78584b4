#pragma once

/**
 * @file weights.hpp
 * @brief Triangular weight arrays a_{k,n}, normalizers rho_n, iterated
 *        alpha-weighted means and finite-n checkers for the weight conditions
 *        of the weak laws and the stable limit law.
 */

#include "oppenheim/errors.hpp"
#include "oppenheim/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace oppenheim::weights {

enum class WeightKind { cesaro, power_alpha, iterated, custom_table };

enum class RhoKind { constant, loglog };

class WeightScheme {
public:
    using Table = std::map<std::pair<std::size_t, std::size_t>, double>;
    using EntryFn = std::function<double(std::size_t, std::size_t)>;

    /// a_{k,n} = 1/n.
    static WeightScheme cesaro() { return WeightScheme(WeightKind::cesaro); }

    /// a_{k,n} = k^{-alpha} / W_n, W_n = sum_{j<=n} j^{-alpha}.
    static WeightScheme power_alpha(double alpha) {
        if (!(alpha < 1.0)) throw ArgumentError("power_alpha: alpha must be < 1");
        WeightScheme s(WeightKind::power_alpha);
        s.alpha_ = alpha;
        return s;
    }

    /// Row n holds the coefficients of D^{(alpha,r)}_n as a combination of the inputs.
    static WeightScheme iterated(double alpha, int r) {
        if (!(alpha < 1.0)) throw ArgumentError("iterated: alpha must be < 1");
        if (r < 1) throw ArgumentError("iterated: r must be >= 1");
        WeightScheme s(WeightKind::iterated);
        s.alpha_ = alpha;
        s.order_ = r;
        return s;
    }

    /// Entries from a table keyed by (k, n); every row used must be complete.
    static WeightScheme custom_table(Table table, std::string id = "table") {
        WeightScheme s(WeightKind::custom_table);
        s.table_ = std::make_shared<const Table>(std::move(table));
        s.id_ = std::move(id);
        return s;
    }

    /// Entries from a function (k, n) -> a_{k,n}.
    static WeightScheme custom(EntryFn fn, std::string id = "custom") {
        WeightScheme s(WeightKind::custom_table);
        s.fn_ = std::move(fn);
        s.id_ = std::move(id);
        return s;
    }

    /// Reads a CSV with header "k,n,a" (column order free, extra columns ignored).
    static WeightScheme from_csv(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError(path, "cannot open weight table");
        std::string line;
        if (!std::getline(in, line)) throw ConfigError(path, "empty weight table");
        auto split = [](const std::string& l) {
            std::vector<std::string> out;
            std::stringstream ss(l);
            std::string cell;
            while (std::getline(ss, cell, ',')) {
                cell.erase(0, cell.find_first_not_of(" \t\r"));
                cell.erase(cell.find_last_not_of(" \t\r") + 1);
                out.push_back(cell);
            }
            return out;
        };
        const auto header = split(line);
        int ik = -1, in_ = -1, ia = -1;
        for (int i = 0; i < static_cast<int>(header.size()); ++i) {
            if (header[i] == "k") ik = i;
            if (header[i] == "n") in_ = i;
            if (header[i] == "a") ia = i;
        }
        if (ik < 0 || in_ < 0 || ia < 0) throw ConfigError(path, "weight table header must name columns k, n, a");
        Table t;
        int lineno = 1;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            const auto cells = split(line);
            const auto need = static_cast<std::size_t>(std::max({ik, in_, ia}));
            if (cells.size() <= need) throw ConfigError(path + ":" + std::to_string(lineno), "too few columns");
            try {
                const auto k = static_cast<std::size_t>(std::stoull(cells[ik]));
                const auto n = static_cast<std::size_t>(std::stoull(cells[in_]));
                const double a = std::stod(cells[ia]);
                if (k < 1 || k > n) throw ConfigError(path + ":" + std::to_string(lineno), "need 1 <= k <= n");
                t[{k, n}] = a;
            } catch (const std::logic_error&) {
                throw ConfigError(path + ":" + std::to_string(lineno), "malformed number");
            }
        }
        return custom_table(std::move(t), path);
    }

    WeightScheme& with_rho(RhoKind kind, double value = 1.0) {
        if (kind == RhoKind::constant && !(value > 0.0)) throw ArgumentError("rho: constant must be positive");
        rho_kind_ = kind;
        rho_value_ = value;
        return *this;
    }

    WeightKind kind() const { return kind_; }
    RhoKind rho_kind() const { return rho_kind_; }
    double alpha() const { return alpha_; }
    int order() const { return order_; }

    std::string id() const {
        std::string base;
        switch (kind_) {
        case WeightKind::cesaro: base = "cesaro"; break;
        case WeightKind::power_alpha: base = "power_alpha(" + fmt(alpha_) + ")"; break;
        case WeightKind::iterated: base = "iterated(" + fmt(alpha_) + "," + std::to_string(order_) + ")"; break;
        case WeightKind::custom_table: base = "custom(" + id_ + ")"; break;
        }
        if (rho_kind_ == RhoKind::loglog) return base + ";rho=loglog";
        if (rho_value_ != 1.0) return base + ";rho=" + fmt(rho_value_);
        return base;
    }

    double rho(std::size_t n) const {
        if (rho_kind_ == RhoKind::loglog) return std::log(std::log(static_cast<double>(std::max<std::size_t>(n, 3))));
        return rho_value_;
    }

    /// (a_{1,n}, ..., a_{n,n}).
    std::vector<double> row(std::size_t n) const {
        if (n < 1) throw ArgumentError("weights_row: n must be >= 1");
        std::vector<double> a(n);
        switch (kind_) {
        case WeightKind::cesaro: std::fill(a.begin(), a.end(), 1.0 / static_cast<double>(n)); break;
        case WeightKind::power_alpha: {
            double W = 0.0;
            for (std::size_t k = n; k >= 1; --k) {
                a[k - 1] = std::pow(static_cast<double>(k), -alpha_);
                W += a[k - 1];
            }
            for (auto& x : a) x /= W;
            break;
        }
        case WeightKind::iterated: a = iterated_row(n); break;
        case WeightKind::custom_table:
            for (std::size_t k = 1; k <= n; ++k) {
                if (fn_) {
                    a[k - 1] = fn_(k, n);
                } else {
                    auto it = table_->find({k, n});
                    if (it == table_->end())
                        throw ArgumentError("weights_row: table has no entry for k=" + std::to_string(k) +
                                            ", n=" + std::to_string(n));
                    a[k - 1] = it->second;
                }
            }
            break;
        }
        return a;
    }

private:
    explicit WeightScheme(WeightKind k) : kind_(k) {}

    // a_{k,n} = (w_k/W_n) h_{r-1}(v_k, ..., v_n), v_m = w_m/W_m, with h_j the complete
    // homogeneous symmetric polynomial, built backwards: H_j(k) = H_j(k+1) + v_k H_{j-1}(k).
    std::vector<double> iterated_row(std::size_t n) const {
        std::vector<double> w(n), W(n), v(n);
        double acc = 0.0;
        for (std::size_t k = 1; k <= n; ++k) {
            w[k - 1] = std::pow(static_cast<double>(k), -alpha_);
            acc += w[k - 1];
            W[k - 1] = acc;
            v[k - 1] = w[k - 1] / acc;
        }
        const int r = order_;
        std::vector<double> H(static_cast<std::size_t>(r), 0.0);
        H[0] = 1.0;
        std::vector<double> a(n);
        for (std::size_t k = n; k >= 1; --k) {
            for (int j = 1; j < r; ++j) H[j] = H[j] + v[k - 1] * H[j - 1];
            a[k - 1] = w[k - 1] / W[n - 1] * H[r - 1];
        }
        return a;
    }

    static std::string fmt(double v) {
        std::ostringstream os;
        os << v;
        return os.str();
    }

    WeightKind kind_;
    double alpha_ = 0.0;
    int order_ = 1;
    std::shared_ptr<const Table> table_;
    EntryFn fn_;
    std::string id_;
    RhoKind rho_kind_ = RhoKind::constant;
    double rho_value_ = 1.0;
};

inline std::vector<double> weights_row(const WeightScheme& s, std::size_t n) { return s.row(n); }

/// sum_k a_{k,n}.
inline double kappa(const WeightScheme& s, std::size_t n) {
    const auto a = s.row(n);
    double sum = 0.0;
    for (double x : a) sum += x;
    return sum;
}

/// m_n = max_k a_{k,n}.
inline double max_weight(const WeightScheme& s, std::size_t n) {
    const auto a = s.row(n);
    return *std::max_element(a.begin(), a.end());
}

/// D^{(alpha,r)}: r-fold application of D_n -> sum_{k<=n} w_k D_k / W_n, w_k = k^{-alpha}.
inline std::vector<double> iterated_mean(std::vector<double> values, double alpha, int r) {
    if (!(alpha < 1.0)) throw ArgumentError("iterated_mean: alpha must be < 1");
    if (values.empty()) throw ArgumentError("iterated_mean: values are empty");
    if (r < 0) throw ArgumentError("iterated_mean: r must be >= 0");
    for (int pass = 0; pass < r; ++pass) {
        double num = 0.0, W = 0.0;
        for (std::size_t k = 1; k <= values.size(); ++k) {
            const double w = std::pow(static_cast<double>(k), -alpha);
            num += w * values[k - 1];
            W += w;
            values[k - 1] = num / W;
        }
    }
    return values;
}

struct ProfilePoint {
    std::size_t n;
    double value;
};

/// Three-point polynomial extrapolation in x = 1/log n from the last three grid points.
inline double extrapolate_in_inverse_log(const std::vector<ProfilePoint>& rows) {
    if (rows.empty()) return 0.0;
    const std::size_t k = std::min<std::size_t>(3, rows.size());
    std::vector<double> xs, ys;
    for (std::size_t i = rows.size() - k; i < rows.size(); ++i) {
        xs.push_back(1.0 / std::log(static_cast<double>(std::max<std::size_t>(rows[i].n, 2))));
        ys.push_back(rows[i].value);
    }
    return extrapolate_to_zero(xs, ys);
}

struct EllProfile {
    std::vector<ProfilePoint> rows;
    double extrapolated = 0.0;
};

/**
 * Rows (n, -sum_k alpha_k a_{k,n} log(alpha_k a_{k,n}) / (rho_n log n)). With
 * `alpha_inside_log` false the logarithm is of a_{k,n} alone; both variants
 * share the same limit for bounded alpha.
 */
inline EllProfile ell_profile(const WeightScheme& s, const std::function<double(std::size_t)>& alphas,
                              const std::vector<std::size_t>& n_grid, bool alpha_inside_log = true) {
    EllProfile p;
    for (std::size_t n : n_grid) {
        if (n < 2) throw ArgumentError("ell_profile: n must be >= 2");
        const auto a = s.row(n);
        double sum = 0.0;
        for (std::size_t k = 1; k <= n; ++k) {
            const double al = alphas(k);
            const double x = a[k - 1];
            sum += al * x * std::log(alpha_inside_log ? al * x : x);
        }
        p.rows.push_back({n, -sum / (s.rho(n) * std::log(static_cast<double>(n)))});
    }
    p.extrapolated = extrapolate_in_inverse_log(p.rows);
    return p;
}

// ---------------------------------------------------------------------------
// Condition checkers
// ---------------------------------------------------------------------------

enum class Verdict { pass, fail, inconclusive };

inline std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

struct ConditionCheck {
    std::string name;
    std::string description;
    std::vector<ProfilePoint> rows;
    Verdict verdict = Verdict::inconclusive;
    /// Extrapolated limit where the condition asks for one.
    double limit = 0.0;
};

struct ConditionReport {
    std::vector<ConditionCheck> checks;

    /// No condition shows clear evidence of failure.
    bool acceptable() const {
        return std::none_of(checks.begin(), checks.end(), [](auto& c) { return c.verdict == Verdict::fail; });
    }
    bool all_pass() const {
        return std::all_of(checks.begin(), checks.end(), [](auto& c) { return c.verdict == Verdict::pass; });
    }
    const ConditionCheck* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
    const ConditionCheck* first_failure() const {
        for (const auto& c : checks)
            if (c.verdict == Verdict::fail) return &c;
        return nullptr;
    }
};

namespace detail {

inline std::vector<std::size_t> geometric_grid(std::size_t n_max) {
    if (n_max < 10) throw ArgumentError("condition check: n_max must be >= 10");
    std::vector<std::size_t> g;
    for (double n = 10.0; n < static_cast<double>(n_max) * 0.99; n *= std::sqrt(10.0))
        g.push_back(static_cast<std::size_t>(std::llround(n)));
    g.push_back(n_max);
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

inline double loglog_slope(const std::vector<ProfilePoint>& rows) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& r : rows) {
        const double x = std::log(static_cast<double>(r.n));
        const double y = std::log(std::max(std::abs(r.value), 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double k = static_cast<double>(rows.size());
    const double d = k * sxx - sx * sx;
    return d == 0.0 ? 0.0 : (k * sxy - sx * sy) / d;
}

inline bool monotone(const std::vector<ProfilePoint>& r, int sign) {
    for (std::size_t i = 0; i + 1 < r.size(); ++i)
        if (sign * (r[i + 1].value - r[i].value) < 0.0) return false;
    return true;
}

// Limit exists: constant, or monotone with contracting steps. Monotone with
// non-contracting steps is divergence; anything else is inconclusive.
inline Verdict limit_verdict(const std::vector<ProfilePoint>& r) {
    if (r.size() < 3) return Verdict::inconclusive;
    double scale = 0.0;
    for (const auto& p : r) scale = std::max(scale, std::abs(p.value));
    const double flat = 1e-9 * std::max(1.0, scale);
    bool constant = true;
    for (std::size_t i = 0; i + 1 < r.size(); ++i)
        if (std::abs(r[i + 1].value - r[i].value) > flat) constant = false;
    if (constant) return Verdict::pass;
    if (!monotone(r, +1) && !monotone(r, -1)) return Verdict::inconclusive;
    const double first = std::abs(r[1].value - r[0].value);
    const double last = std::abs(r.back().value - r[r.size() - 2].value);
    return last < first ? Verdict::pass : Verdict::fail;
}

// Bounded: power-law growth with monotone increase fails; small spread passes.
inline Verdict bounded_verdict(const std::vector<ProfilePoint>& r) {
    if (r.empty()) return Verdict::inconclusive;
    double lo = r[0].value, hi = r[0].value;
    for (const auto& p : r) {
        lo = std::min(lo, p.value);
        hi = std::max(hi, p.value);
    }
    if (monotone(r, +1) && loglog_slope(r) > 0.25) return Verdict::fail;
    if (hi <= 10.0 * std::max(std::abs(r.front().value), 1e-300) || hi - lo <= 1e-9 * std::max(1.0, std::abs(hi)))
        return Verdict::pass;
    return Verdict::inconclusive;
}

inline Verdict vanishing_verdict(const std::vector<ProfilePoint>& r) {
    if (r.size() < 2) return Verdict::inconclusive;
    if (monotone(r, +1)) return Verdict::fail;
    if (monotone(r, -1) && loglog_slope(r) < -0.1) return Verdict::pass;
    return Verdict::inconclusive;
}

} // namespace detail

/**
 * Finite-n verdicts for the weak-law conditions on (a_{k,n}, rho_n) given the
 * family's alpha_k: rho_n log n diverges, the absolute entropy ratio stays
 * bounded, the entropy ratio has a limit -ell, sum alpha_k a_{k,n} is bounded,
 * and sup_n max_k a_{k,n} is finite (needed for the Engel and Sylvester ratios).
 */
inline ConditionReport check_weak_law_conditions(const WeightScheme& s, const std::function<double(std::size_t)>& alphas,
                                                 std::size_t n_max) {
    const auto grid = detail::geometric_grid(n_max);
    ConditionCheck rho{"rho_log_divergence", "rho_n log n grows without bound", {}, Verdict::inconclusive, 0};
    ConditionCheck abs_ent{"entropy_bounded", "sum alpha a |log(alpha a)| / (rho_n log n) bounded", {},
                           Verdict::inconclusive, 0};
    ConditionCheck ent{"entropy_limit", "-sum alpha a log(alpha a) / (rho_n log n) converges to ell", {},
                       Verdict::inconclusive, 0};
    ConditionCheck bnd{"weighted_sum_bounded", "sum alpha_k a_{k,n} bounded in n", {}, Verdict::inconclusive, 0};
    ConditionCheck mw{"max_weight_bounded", "sup_n max_k a_{k,n} finite", {}, Verdict::inconclusive, 0};
    for (std::size_t n : grid) {
        const auto a = s.row(n);
        const double denom = s.rho(n) * std::log(static_cast<double>(n));
        double e = 0, ea = 0, sum = 0, mx = 0;
        for (std::size_t k = 1; k <= n; ++k) {
            const double al = alphas(k);
            const double x = al * a[k - 1];
            e += x * std::log(x);
            ea += x * std::abs(std::log(x));
            sum += x;
            mx = std::max(mx, a[k - 1]);
        }
        rho.rows.push_back({n, denom});
        abs_ent.rows.push_back({n, ea / denom});
        ent.rows.push_back({n, -e / denom});
        bnd.rows.push_back({n, sum});
        mw.rows.push_back({n, mx});
    }
    rho.verdict = (detail::monotone(rho.rows, +1) && rho.rows.back().value > rho.rows.front().value)
                      ? Verdict::pass
                      : (detail::monotone(rho.rows, -1) ? Verdict::fail : Verdict::inconclusive);
    abs_ent.verdict = detail::bounded_verdict(abs_ent.rows);
    ent.verdict = detail::limit_verdict(ent.rows);
    ent.limit = extrapolate_in_inverse_log(ent.rows);
    bnd.verdict = detail::bounded_verdict(bnd.rows);
    mw.verdict = detail::bounded_verdict(mw.rows);
    return {{rho, abs_ent, ent, bnd, mw}};
}

/**
 * Finite-n verdicts for the stable-limit conditions: sum_k a_{k,n} -> kappa,
 * m_n = max_k a_{k,n} -> 0, and sum_k a_{k,n} c1_k -> ell.
 */
inline ConditionReport check_stable_limit_conditions(const WeightScheme& s, const std::function<double(std::size_t)>& c1,
                                                     std::size_t n_max) {
    const auto grid = detail::geometric_grid(n_max);
    ConditionCheck kap{"kappa_limit", "sum_k a_{k,n} converges to kappa", {}, Verdict::inconclusive, 0};
    ConditionCheck mw{"max_weight_vanishes", "max_k a_{k,n} tends to 0", {}, Verdict::inconclusive, 0};
    ConditionCheck ell{"ell_limit", "sum_k a_{k,n} c1_k converges to ell", {}, Verdict::inconclusive, 0};
    for (std::size_t n : grid) {
        const auto a = s.row(n);
        double sum = 0, mx = 0, sc = 0;
        for (std::size_t k = 1; k <= n; ++k) {
            sum += a[k - 1];
            mx = std::max(mx, a[k - 1]);
            sc += a[k - 1] * c1(k);
        }
        kap.rows.push_back({n, sum});
        mw.rows.push_back({n, mx});
        ell.rows.push_back({n, sc});
    }
    kap.verdict = detail::limit_verdict(kap.rows);
    kap.limit = extrapolate_in_inverse_log(kap.rows);
    mw.verdict = detail::vanishing_verdict(mw.rows);
    ell.verdict = detail::limit_verdict(ell.rows);
    ell.limit = extrapolate_in_inverse_log(ell.rows);
    return {{kap, mw, ell}};
}

} // namespace oppenheim::weights

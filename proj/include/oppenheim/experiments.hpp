#pragma once

/**
 * @file experiments.hpp
 * @brief Monte Carlo runs for the weak laws and the stable limit laws,
 *        reproducible run records, and a few deterministic companions
 *        (centering constants, harmonic-sum recovery of gamma, the joint
 *        characteristic-function distance of ratio variables).
 *
 * Replication j always draws from RandomStream(master_seed, j), and one
 * replication's path is shared by every n of the grid (prefixes of the same
 * sequence). Results land in per-replication slots, so statistics do not
 * depend on how replications were spread over workers.
 */

#include "oppenheim/distributions.hpp"
#include "oppenheim/errors.hpp"
#include "oppenheim/expansions.hpp"
#include "oppenheim/limitlaw.hpp"
#include "oppenheim/rng.hpp"
#include "oppenheim/specfun.hpp"
#include "oppenheim/stats.hpp"
#include "oppenheim/weights.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace oppenheim::experiments {

using json = nlohmann::json;

inline constexpr const char* kVersion = "oppenheim-0.1.0";
inline constexpr std::uint64_t kDefaultSeed = 271828;

enum class RunKind { weak_law, distributional };

/// Weak-law summands: Y_k = 1/U_k, or digit observables D_{k+1}, D_{k+1}/D_k, D_{k+1}/D_k^2.
enum class WeakLawMode { reciprocal, luroth, engel, sylvester };

/**
 * classical_luroth   V = (1/n) sum D_k - log n - 1, limit c = 1
 * general_weighted   V = sum a Y - (kappa + sum a (c_F - 1)) + sum a alpha log a, limit c = lim sum a alpha
 * reciprocal_family  as general_weighted with constant alpha, limit c = alpha kappa
 * discrete_beta      V = sum a Z - (kappa + sum a c2(beta)) + sum a (1 - beta) log a, limit c = lim sum a (1 - beta)
 * levy_cf            V = (1/n) sum A_k - log n / log 2 for continued-fraction digits, limit c = 1/log 2, delta = gamma/log 2
 */
enum class DistMode { classical_luroth, general_weighted, reciprocal_family, discrete_beta, levy_cf };

inline std::string to_string(RunKind k) { return k == RunKind::weak_law ? "weak_law" : "distributional"; }

inline std::string to_string(WeakLawMode m) {
    switch (m) {
    case WeakLawMode::reciprocal: return "reciprocal";
    case WeakLawMode::luroth: return "luroth";
    case WeakLawMode::engel: return "engel";
    case WeakLawMode::sylvester: return "sylvester";
    }
    return "?";
}

inline std::string to_string(DistMode m) {
    switch (m) {
    case DistMode::classical_luroth: return "classical_luroth";
    case DistMode::general_weighted: return "general_weighted";
    case DistMode::reciprocal_family: return "reciprocal_family";
    case DistMode::discrete_beta: return "discrete_beta";
    case DistMode::levy_cf: return "levy_cf";
    }
    return "?";
}

inline std::optional<WeakLawMode> parse_weak_mode(const std::string& s) {
    for (auto m : {WeakLawMode::reciprocal, WeakLawMode::luroth, WeakLawMode::engel, WeakLawMode::sylvester})
        if (to_string(m) == s) return m;
    return std::nullopt;
}

inline std::optional<DistMode> parse_dist_mode(const std::string& s) {
    for (auto m : {DistMode::classical_luroth, DistMode::general_weighted, DistMode::reciprocal_family,
                   DistMode::discrete_beta, DistMode::levy_cf})
        if (to_string(m) == s) return m;
    return std::nullopt;
}

struct FamilySpec {
    std::string kind = "uniform";
    std::string param = "constant:1";

    distributions::DistributionFamily make() const {
        using distributions::DistributionFamily;
        if (kind == "uniform") return DistributionFamily::uniform();
        const auto seq = ParamSequence::parse(param);
        if (kind == "mobius_clamped") return DistributionFamily::mobius_clamped(seq);
        if (kind == "mobius_remark2") return DistributionFamily::mobius_remark2(seq);
        if (kind == "discrete_beta") return DistributionFamily::discrete_beta(seq);
        throw ConfigError("family.kind", "unknown family kind '" + kind + "'");
    }

    json to_json() const { return {{"kind", kind}, {"param", param}}; }
};

struct WeightSpec {
    std::string kind = "cesaro";
    double alpha = 0.0;
    int r = 1;
    std::string rho = "constant";
    double rho_value = 1.0;
    std::string table;

    weights::WeightScheme make() const {
        using weights::WeightScheme;
        WeightScheme s = [&] {
            if (kind == "cesaro") return WeightScheme::cesaro();
            if (kind == "power_alpha") return WeightScheme::power_alpha(alpha);
            if (kind == "iterated") return WeightScheme::iterated(alpha, r);
            if (kind == "custom_table") return WeightScheme::from_csv(table);
            throw ConfigError("weights.kind", "unknown weight kind '" + kind + "'");
        }();
        if (rho == "loglog") s.with_rho(weights::RhoKind::loglog);
        else if (rho == "constant") s.with_rho(weights::RhoKind::constant, rho_value);
        else throw ConfigError("weights.rho", "rho must be \"constant\" or \"loglog\"");
        return s;
    }

    json to_json() const {
        json j{{"kind", kind}, {"rho", rho}, {"rho_value", rho_value}};
        if (kind == "power_alpha" || kind == "iterated") j["alpha"] = alpha;
        if (kind == "iterated") j["r"] = r;
        if (kind == "custom_table") j["table"] = table;
        return j;
    }
};

struct ExperimentConfig {
    std::string name = "unnamed";
    RunKind kind = RunKind::weak_law;
    std::string mode = "luroth";
    std::uint64_t master_seed = kDefaultSeed;
    std::vector<std::size_t> n_grid{100, 1000, 10000};
    std::size_t replications = 200;
    FamilySpec family;
    WeightSpec weights;
    double epsilon = 0.3;
    std::vector<double> t_grid{0.5, 1.0, 2.0};
    /// Overrides the weight-derived limit ell (weak laws) or scale (distributional runs).
    std::optional<double> ell;
    bool check_conditions = true;

    void validate() const {
        if (n_grid.empty()) throw ConfigError("n_grid", "must not be empty");
        for (std::size_t i = 0; i < n_grid.size(); ++i) {
            if (n_grid[i] < 2) throw ConfigError("n_grid", "entries must be >= 2");
            if (i && n_grid[i] <= n_grid[i - 1]) throw ConfigError("n_grid", "must be strictly increasing");
        }
        if (replications < 1) throw ConfigError("replications", "must be >= 1");
        if (kind == RunKind::distributional && replications < 100)
            throw ConfigError("replications", "distributional runs need at least 100 replications");
        if (!(epsilon > 0.0)) throw ConfigError("epsilon", "must be positive");
        if (kind == RunKind::weak_law && !parse_weak_mode(mode))
            throw ConfigError("mode", "weak_law mode must be reciprocal, luroth, engel or sylvester");
        if (kind == RunKind::distributional && !parse_dist_mode(mode))
            throw ConfigError("mode", "distributional mode must be classical_luroth, general_weighted, "
                                      "reciprocal_family, discrete_beta or levy_cf");
        if (ell && !(*ell >= 0.0)) throw ConfigError("ell", "must be >= 0");
    }

    /// Canonical form: every field present, keys sorted.
    json to_json() const {
        json j{{"name", name},
               {"kind", to_string(kind)},
               {"mode", mode},
               {"master_seed", master_seed},
               {"n_grid", n_grid},
               {"replications", replications},
               {"family", family.to_json()},
               {"weights", weights.to_json()},
               {"epsilon", epsilon},
               {"t_grid", t_grid},
               {"check_conditions", check_conditions}};
        j["ell"] = ell ? json(*ell) : json(nullptr);
        return j;
    }
};

/// FNV-1a, 64 bit.
inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

/// Hex digest of canonical config + worker count + version.
inline std::string config_digest(const ExperimentConfig& cfg, unsigned threads) {
    const std::string text = cfg.to_json().dump() + "|threads=" + std::to_string(threads) + "|" + kVersion;
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(text)));
    return buf;
}

struct NStats {
    std::size_t n = 0;
    double exceedance = std::numeric_limits<double>::quiet_NaN();
    double ks = std::numeric_limits<double>::quiet_NaN();
    double ecf_error = std::numeric_limits<double>::quiet_NaN();
    double median = 0.0;
    /// Weak laws: rho_n log n. Distributional runs: kappa + sum a c2.
    double subtractor = 0.0;
    /// Distributional runs: sum a c1 log a.
    double log_term = 0.0;
};

struct RunRecord {
    std::string digest;
    std::string version = kVersion;
    unsigned threads = 1;
    ExperimentConfig config;
    /// Limit ell (weak laws) or the limit law's (c, delta).
    double limit_c = 0.0;
    double limit_delta = 0.0;
    std::vector<NStats> rows;
    std::vector<std::pair<std::string, std::string>> conditions;
    double wall_time = 0.0;

    json to_json() const {
        auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
        json rs = json::array();
        for (const auto& r : rows)
            rs.push_back({{"n", r.n},
                          {"exceedance", num(r.exceedance)},
                          {"ks", num(r.ks)},
                          {"ecf_error", num(r.ecf_error)},
                          {"median", num(r.median)},
                          {"subtractor", num(r.subtractor)},
                          {"log_term", num(r.log_term)}});
        json conds = json::object();
        for (const auto& [k, v] : conditions) conds[k] = v;
        return {{"digest", digest},        {"version", version}, {"threads", threads},
                {"config", config.to_json()}, {"limit", {{"c", limit_c}, {"delta", limit_delta}}},
                {"rows", rs},              {"conditions", conds}, {"wall_time", wall_time}};
    }

    /// Equality of everything except wall_time.
    bool operator==(const RunRecord& o) const {
        auto a = to_json(), b = o.to_json();
        a.erase("wall_time");
        b.erase("wall_time");
        return a == b;
    }

    /// One row per n: n, exceedance, ks, max_ecf_error.
    std::string to_csv() const {
        std::ostringstream os;
        os << "n,exceedance,ks,max_ecf_error\n";
        auto cell = [](double v) {
            if (!std::isfinite(v)) return std::string();
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            return std::string(buf);
        };
        for (const auto& r : rows) os << r.n << ',' << cell(r.exceedance) << ',' << cell(r.ks) << ',' << cell(r.ecf_error) << '\n';
        return os.str();
    }
};

struct RunResult {
    RunRecord record;
    /// samples[i][j]: statistic of replication j at n_grid[i].
    std::vector<std::vector<double>> samples;
};

// ---------------------------------------------------------------------------
// Deterministic companions
// ---------------------------------------------------------------------------

/// log n - H_n, which increases to -gamma.
inline double gamma_from_harmonic(std::size_t n) {
    if (n < 1) throw ArgumentError("gamma_from_harmonic: n must be >= 1");
    double h = 0.0;
    for (std::size_t k = n; k >= 1; --k) h += 1.0 / static_cast<double>(k);
    return std::log(static_cast<double>(n)) - h;
}

struct Centering {
    double subtractor = 0.0; ///< kappa + sum_k a_{k,n} c2_k
    double log_term = 0.0;   ///< sum_k a_{k,n} c1_k log a_{k,n}
};

namespace detail {

// Memoised (c1, c2) per parameter value; constant sequences cost one evaluation.
class CoefficientCache {
public:
    CoefficientCache(DistMode mode, const distributions::DistributionFamily& f) : mode_(mode), family_(f) {}

    std::pair<double, double> operator()(std::size_t k) {
        if (mode_ == DistMode::classical_luroth || mode_ == DistMode::levy_cf) return {1.0, 0.0};
        const double key = family_.kind() == distributions::FamilyKind::uniform ? 0.0 : family_.param(k);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        std::pair<double, double> v;
        if (mode_ == DistMode::discrete_beta) {
            if (!family_.is_discrete()) throw ConfigError("family.kind", "discrete_beta mode needs a discrete_beta family");
            v = {1.0 - key, specfun::c2_discrete(key)};
        } else {
            if (family_.is_discrete())
                throw ConfigError("family.kind", "reciprocal modes need a continuous family; use discrete_beta mode");
            const auto fc = distributions::family_constants(family_, k);
            v = {family_.alpha(k), fc.c - 1.0};
        }
        memo_.emplace(key, v);
        return v;
    }

private:
    DistMode mode_;
    const distributions::DistributionFamily& family_;
    std::map<double, std::pair<double, double>> memo_;
};

} // namespace detail

/**
 * subtractor = kappa + sum a c2, log_term = sum a c1 log a, with
 * (c1, c2) = (alpha_k, c_{F_k} - 1) for the reciprocal modes and
 * (1 - beta_k, c2_discrete(beta_k)) for discrete_beta. kappa defaults to the row sum.
 */
inline Centering centering_constants(DistMode mode, const distributions::DistributionFamily& family,
                                     const weights::WeightScheme& w, std::size_t n,
                                     std::optional<double> kappa = std::nullopt) {
    const auto a = w.row(n);
    detail::CoefficientCache coef(mode, family);
    double row_sum = 0.0, sub = 0.0, lt = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        const auto [c1, c2] = coef(k);
        row_sum += a[k - 1];
        sub += a[k - 1] * c2;
        lt += a[k - 1] * c1 * std::log(a[k - 1]);
    }
    return {(kappa ? *kappa : row_sum) + sub, lt};
}

// ---------------------------------------------------------------------------
// Worker pool
// ---------------------------------------------------------------------------

inline unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Calls body(j, worker) for j in [0, count) on `threads` workers; rethrows the first exception.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    auto work = [&](unsigned worker) {
        try {
            for (std::size_t j; !failed && (j = next.fetch_add(1)) < count;) body(j, worker);
        } catch (...) {
            if (!failed.exchange(true)) error = std::current_exception();
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);
}

// ---------------------------------------------------------------------------
// Runs
// ---------------------------------------------------------------------------

namespace detail {

inline std::string describe_failure(const weights::ConditionReport& rep) {
    std::string s;
    for (const auto& c : rep.checks)
        if (c.verdict == weights::Verdict::fail) s += (s.empty() ? "" : "; ") + c.name + " (" + c.description + ")";
    return s;
}

inline void record_conditions(RunRecord& rec, const weights::ConditionReport& rep) {
    for (const auto& c : rep.checks) rec.conditions.emplace_back(c.name, weights::to_string(c.verdict));
}

inline void check_family(const distributions::DistributionFamily& f, std::size_t n_max, RunRecord& rec) {
    const std::vector<double> grid{0.1, 0.01, 0.001};
    const std::size_t nm = std::min<std::size_t>(n_max, 64);
    const auto p1 = distributions::condition_i_profile(f, nm, grid);
    const auto p2 = distributions::condition_ii_profile(f, nm, grid);
    const bool ok1 = p1.passes(0.05), ok2 = p2.passes(0.05);
    rec.conditions.emplace_back("family_linear_near_zero", ok1 ? "pass" : "fail");
    rec.conditions.emplace_back("family_uniform_integrability", ok2 ? "pass" : "fail");
    if (!ok1) throw ConditionError("family " + f.id() + " fails the small-t linearity condition F_n(t)/t -> alpha_n");
    if (!ok2) throw ConditionError("family " + f.id() + " fails uniform integrability of (1/u)(F_n(u)/u - alpha_n)");
}

// Fills x[0..n) with the summands of one replication.
struct PathSampler {
    RunKind kind;
    WeakLawMode weak = WeakLawMode::luroth;
    DistMode dist = DistMode::classical_luroth;
    const distributions::DistributionFamily* family = nullptr;
    const expansions::OppenheimScheme* scheme = nullptr;

    void operator()(RandomStream& rng, std::vector<double>& x, std::vector<double>& scratch) const {
        const std::size_t n = x.size();
        if (kind == RunKind::weak_law) {
            switch (weak) {
            case WeakLawMode::reciprocal:
                for (std::size_t k = 0; k < n; ++k) x[k] = family->sample_reciprocal(k + 1, rng);
                return;
            case WeakLawMode::luroth:
                // D_{k+1}; D_1 is drawn and discarded so the summands match the digit sequence.
                expansions::luroth_digit(rng);
                for (auto& v : x) v = expansions::luroth_digit(rng);
                return;
            case WeakLawMode::engel:
            case WeakLawMode::sylvester:
                scratch.resize(n);
                expansions::sample_oppenheim_fast(*scheme, rng, scratch, x);
                return;
            }
        }
        switch (dist) {
        case DistMode::classical_luroth:
            for (auto& v : x) v = expansions::luroth_digit(rng);
            return;
        case DistMode::levy_cf: {
            // Gauss-map orbit in double precision, restarted if it reaches 0.
            double y = rng.uniform_open();
            for (auto& v : x) {
                if (!(y > 0.0)) y = rng.uniform_open();
                const double inv = 1.0 / y;
                const double a = std::floor(inv);
                v = a;
                y = inv - a;
            }
            return;
        }
        default:
            for (std::size_t k = 0; k < n; ++k) x[k] = family->sample_reciprocal(k + 1, rng);
            return;
        }
    }
};

} // namespace detail

/**
 * Weak-law run: T_n = (1/(rho_n log n)) sum_k a_{k,n} X_k for each n in the grid
 * and M replications; records P(|T_n - ell| > epsilon) and the median of T_n.
 * Refuses with ConditionError when a weight or family condition clearly fails.
 */
inline RunResult exact_weak_law_run(const ExperimentConfig& cfg, unsigned threads = 0) {
    cfg.validate();
    if (cfg.kind != RunKind::weak_law) throw ConfigError("kind", "exact_weak_law_run needs kind = weak_law");
    threads = resolve_threads(threads);
    const auto t_start = std::chrono::steady_clock::now();
    const WeakLawMode mode = *parse_weak_mode(cfg.mode);
    const auto family = cfg.family.make();
    const auto w = cfg.weights.make();
    auto scheme = mode == WeakLawMode::sylvester ? expansions::OppenheimScheme::sylvester()
                                                 : expansions::OppenheimScheme::engel();
    scheme.digit_family = family;

    RunResult out;
    RunRecord& rec = out.record;
    rec.config = cfg;
    rec.threads = threads;
    rec.digest = config_digest(cfg, threads);

    const std::size_t n_max = cfg.n_grid.back();
    std::function<double(std::size_t)> alphas = [](std::size_t) { return 1.0; };
    if (mode == WeakLawMode::reciprocal || mode == WeakLawMode::engel || mode == WeakLawMode::sylvester)
        alphas = [&family](std::size_t k) { return family.alpha(k); };

    double ell = cfg.ell.value_or(0.0);
    if (cfg.check_conditions || !cfg.ell) {
        const auto rep = weights::check_weak_law_conditions(w, alphas, std::max<std::size_t>(n_max, 10));
        detail::record_conditions(rec, rep);
        if (cfg.check_conditions && !rep.acceptable())
            throw ConditionError("weight scheme " + w.id() + " fails: " + detail::describe_failure(rep));
        if (!cfg.ell) ell = rep.find("entropy_limit")->limit;
    }
    if (cfg.check_conditions && mode != WeakLawMode::luroth) detail::check_family(family, n_max, rec);
    rec.limit_c = ell;

    std::vector<std::vector<double>> rows;
    std::vector<double> denom;
    for (std::size_t n : cfg.n_grid) {
        rows.push_back(w.row(n));
        denom.push_back(w.rho(n) * std::log(static_cast<double>(n)));
    }
    const detail::PathSampler sampler{RunKind::weak_law, mode, DistMode::classical_luroth, &family, &scheme};
    out.samples.assign(cfg.n_grid.size(), std::vector<double>(cfg.replications));
    parallel_for(cfg.replications, threads, [&](std::size_t j, unsigned) {
        thread_local std::vector<double> x, scratch;
        x.resize(n_max);
        RandomStream rng(cfg.master_seed, j);
        sampler(rng, x, scratch);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            double s = 0.0;
            for (std::size_t k = 0; k < rows[i].size(); ++k) s += rows[i][k] * x[k];
            out.samples[i][j] = s / denom[i];
        }
    });

    for (std::size_t i = 0; i < cfg.n_grid.size(); ++i) {
        NStats st;
        st.n = cfg.n_grid[i];
        st.exceedance = stats::exceedance(out.samples[i], ell, cfg.epsilon);
        st.median = stats::median(out.samples[i]);
        st.subtractor = denom[i];
        rec.rows.push_back(st);
    }
    rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return out;
}

/**
 * Distributional run: V_n per mode for each n in the grid and M replications;
 * records KS against the limit law, the largest ECF error over t_grid and the
 * centering constants used.
 */
inline RunResult distributional_run(const ExperimentConfig& cfg, unsigned threads = 0) {
    cfg.validate();
    if (cfg.kind != RunKind::distributional) throw ConfigError("kind", "distributional_run needs kind = distributional");
    threads = resolve_threads(threads);
    const auto t_start = std::chrono::steady_clock::now();
    const DistMode mode = *parse_dist_mode(cfg.mode);
    const auto family = cfg.family.make();
    const bool fixed_cesaro = mode == DistMode::classical_luroth || mode == DistMode::levy_cf;
    const auto w = fixed_cesaro ? weights::WeightScheme::cesaro() : cfg.weights.make();

    RunResult out;
    RunRecord& rec = out.record;
    rec.config = cfg;
    rec.threads = threads;
    rec.digest = config_digest(cfg, threads);
    const std::size_t n_max = cfg.n_grid.back();

    limitlaw::StableLimitLaw law{1.0, 0.0};
    std::optional<double> kappa;
    detail::CoefficientCache coef(mode, family);
    if (mode == DistMode::levy_cf) {
        law = limitlaw::levy_cf_law();
    } else if (mode != DistMode::classical_luroth) {
        if (mode == DistMode::reciprocal_family && !family.parameter().is_constant() &&
            family.kind() != distributions::FamilyKind::uniform)
            throw ConfigError("family.param", "reciprocal_family mode needs a constant parameter; use general_weighted");
        const auto rep = weights::check_stable_limit_conditions(
            w, [&](std::size_t k) { return coef(k).first; }, std::max<std::size_t>(n_max, 10));
        detail::record_conditions(rec, rep);
        if (cfg.check_conditions && !rep.acceptable())
            throw ConditionError("weight scheme " + w.id() + " fails: " + detail::describe_failure(rep));
        if (cfg.check_conditions) detail::check_family(family, n_max, rec);
        kappa = rep.find("kappa_limit")->limit;
        law.c = mode == DistMode::reciprocal_family ? coef(1).first * *kappa : rep.find("ell_limit")->limit;
    }
    if (cfg.ell) law.c = *cfg.ell;
    rec.limit_c = law.c;
    rec.limit_delta = law.delta;

    std::vector<std::vector<double>> rows;
    std::vector<Centering> centers;
    for (std::size_t n : cfg.n_grid) {
        const double ln = std::log(static_cast<double>(n));
        if (mode == DistMode::classical_luroth) {
            rows.emplace_back(n, 1.0 / static_cast<double>(n));
            centers.push_back({1.0 + ln, 0.0});
        } else if (mode == DistMode::levy_cf) {
            rows.emplace_back(n, 1.0 / static_cast<double>(n));
            centers.push_back({ln / std::numbers::ln2, 0.0});
        } else {
            rows.push_back(w.row(n));
            const auto& a = rows.back();
            Centering c{*kappa, 0.0};
            for (std::size_t k = 1; k <= n; ++k) {
                const auto [c1, c2] = coef(k);
                c.subtractor += a[k - 1] * c2;
                c.log_term += a[k - 1] * c1 * std::log(a[k - 1]);
            }
            centers.push_back(c);
        }
    }

    const detail::PathSampler sampler{RunKind::distributional, WeakLawMode::luroth, mode, &family, nullptr};
    out.samples.assign(cfg.n_grid.size(), std::vector<double>(cfg.replications));
    parallel_for(cfg.replications, threads, [&](std::size_t j, unsigned) {
        thread_local std::vector<double> x, scratch;
        x.resize(n_max);
        RandomStream rng(cfg.master_seed, j);
        sampler(rng, x, scratch);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            double s = 0.0;
            for (std::size_t k = 0; k < rows[i].size(); ++k) s += rows[i][k] * x[k];
            out.samples[i][j] = s - centers[i].subtractor + centers[i].log_term;
        }
    });

    for (std::size_t i = 0; i < cfg.n_grid.size(); ++i) {
        NStats st;
        st.n = cfg.n_grid[i];
        st.ks = limitlaw::ks_distance(out.samples[i], law);
        double e = 0.0;
        for (double t : cfg.t_grid)
            e = std::max(e, std::abs(stats::empirical_char_fn(out.samples[i], t) - limitlaw::char_fn(law, t)));
        st.ecf_error = cfg.t_grid.empty() ? std::numeric_limits<double>::quiet_NaN() : e;
        st.median = stats::median(out.samples[i]);
        st.subtractor = centers[i].subtractor;
        st.log_term = centers[i].log_term;
        rec.rows.push_back(st);
    }
    rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return out;
}

inline RunResult run(const ExperimentConfig& cfg, unsigned threads = 0) {
    return cfg.kind == RunKind::weak_law ? exact_weak_law_run(cfg, threads) : distributional_run(cfg, threads);
}

// ---------------------------------------------------------------------------
// Joint characteristic-function distance of ratio variables
// ---------------------------------------------------------------------------

struct CharDistanceReport {
    std::complex<double> joint_ecf;
    std::complex<double> product;
    double estimate = 0.0;       ///< |joint ECF - prod psi_k(t_k)|
    double standard_error = 0.0; ///< sqrt((1 - |joint ECF|^2)/M)
    double bound = 0.0;          ///< sum |t_k|
    bool within_bound = false;   ///< estimate <= bound + 3 SE
};

/**
 * Compares the joint ECF of (R_1..R_n) sampled from a digit scheme ("engel",
 * "sylvester" or "luroth") with prod_k psi_k(t_k), psi_k the characteristic
 * function of 1/U_k, U_k ~ family at index k.
 */
inline CharDistanceReport char_distance_check(const std::string& scheme_name, std::size_t n, const std::vector<double>& t,
                                              std::size_t M, std::uint64_t seed = kDefaultSeed, unsigned threads = 0,
                                              const distributions::DistributionFamily& family =
                                                  distributions::DistributionFamily::uniform()) {
    if (n < 1 || n > 4) throw ArgumentError("char_distance_check: n must be in 1..4");
    if (t.size() != n) throw ArgumentError("char_distance_check: t must have n entries");
    if (M < 1) throw ArgumentError("char_distance_check: M must be >= 1");
    expansions::OppenheimScheme scheme;
    const bool luroth = scheme_name == "luroth";
    if (scheme_name == "engel") scheme = expansions::OppenheimScheme::engel();
    else if (scheme_name == "sylvester") scheme = expansions::OppenheimScheme::sylvester();
    else if (!luroth) throw ArgumentError("char_distance_check: unknown scheme '" + scheme_name + "'");
    scheme.digit_family = family;

    threads = resolve_threads(threads);
    std::vector<double> re(M), im(M);
    parallel_for(M, threads, [&](std::size_t j, unsigned) {
        RandomStream rng(seed, j);
        double r[4];
        if (luroth) {
            expansions::luroth_digit(rng);
            for (std::size_t k = 0; k < n; ++k) r[k] = expansions::luroth_digit(rng) - 1.0;
        } else {
            expansions::sample_oppenheim_fast(scheme, rng, std::span<double>(r, n));
        }
        double phase = 0.0;
        for (std::size_t k = 0; k < n; ++k) phase += t[k] * r[k];
        re[j] = std::cos(phase);
        im[j] = std::sin(phase);
    });
    CharDistanceReport rep;
    double sr = 0.0, si = 0.0;
    for (std::size_t j = 0; j < M; ++j) {
        sr += re[j];
        si += im[j];
    }
    rep.joint_ecf = {sr / static_cast<double>(M), si / static_cast<double>(M)};
    rep.product = {1.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) rep.product *= distributions::char_components(family, k + 1, t[k]).psi();
    rep.estimate = std::abs(rep.joint_ecf - rep.product);
    rep.standard_error = std::sqrt(std::max(0.0, 1.0 - std::norm(rep.joint_ecf)) / static_cast<double>(M));
    for (double x : t) rep.bound += std::abs(x);
    rep.within_bound = rep.estimate <= rep.bound + 3.0 * rep.standard_error;
    return rep;
}

// ---------------------------------------------------------------------------
// Persistence
// ---------------------------------------------------------------------------

inline std::filesystem::path record_path(const std::filesystem::path& dir, const std::string& digest) {
    return dir / (digest + ".json");
}

/// Writes <dir>/<digest>.json and <dir>/<digest>.csv.
inline void write_record(const RunRecord& rec, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    {
        std::ofstream js(record_path(dir, rec.digest));
        js << rec.to_json().dump(2) << '\n';
    }
    std::ofstream csv(dir / (rec.digest + ".csv"));
    csv << rec.to_csv();
}

inline RunRecord record_from_json(const json& j) {
    auto num = [](const json& v) { return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>(); };
    RunRecord r;
    r.digest = j.at("digest").get<std::string>();
    r.version = j.at("version").get<std::string>();
    r.threads = j.at("threads").get<unsigned>();
    r.limit_c = j.at("limit").at("c").get<double>();
    r.limit_delta = j.at("limit").at("delta").get<double>();
    r.wall_time = j.at("wall_time").get<double>();
    for (const auto& [k, v] : j.at("conditions").items()) r.conditions.emplace_back(k, v.get<std::string>());
    for (const auto& row : j.at("rows")) {
        NStats s;
        s.n = row.at("n").get<std::size_t>();
        s.exceedance = num(row.at("exceedance"));
        s.ks = num(row.at("ks"));
        s.ecf_error = num(row.at("ecf_error"));
        s.median = num(row.at("median"));
        s.subtractor = num(row.at("subtractor"));
        s.log_term = num(row.at("log_term"));
        r.rows.push_back(s);
    }
    const auto& c = j.at("config");
    auto& cfg = r.config;
    cfg.name = c.at("name").get<std::string>();
    cfg.kind = c.at("kind").get<std::string>() == "weak_law" ? RunKind::weak_law : RunKind::distributional;
    cfg.mode = c.at("mode").get<std::string>();
    cfg.master_seed = c.at("master_seed").get<std::uint64_t>();
    cfg.n_grid = c.at("n_grid").get<std::vector<std::size_t>>();
    cfg.replications = c.at("replications").get<std::size_t>();
    cfg.family.kind = c.at("family").at("kind").get<std::string>();
    cfg.family.param = c.at("family").at("param").get<std::string>();
    const auto& wj = c.at("weights");
    cfg.weights.kind = wj.at("kind").get<std::string>();
    cfg.weights.rho = wj.at("rho").get<std::string>();
    cfg.weights.rho_value = wj.at("rho_value").get<double>();
    if (wj.contains("alpha")) cfg.weights.alpha = wj.at("alpha").get<double>();
    if (wj.contains("r")) cfg.weights.r = wj.at("r").get<int>();
    if (wj.contains("table")) cfg.weights.table = wj.at("table").get<std::string>();
    cfg.epsilon = c.at("epsilon").get<double>();
    cfg.t_grid = c.at("t_grid").get<std::vector<double>>();
    cfg.check_conditions = c.at("check_conditions").get<bool>();
    if (!c.at("ell").is_null()) cfg.ell = c.at("ell").get<double>();
    return r;
}

inline std::optional<RunRecord> load_record(const std::filesystem::path& dir, const std::string& digest) {
    std::ifstream in(record_path(dir, digest));
    if (!in) return std::nullopt;
    return record_from_json(json::parse(in));
}

} // namespace oppenheim::experiments

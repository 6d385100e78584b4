// oppenheim: expansion codec, identity suite, limit-law tables and the experiment runner.
//
// Exit codes: 0 success, 1 a check failed, 2 usage or configuration error.

#include "oppenheim/oppenheim.hpp"

#include <CLI11.hpp>
#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace oppenheim;
using json = nlohmann::json;

enum class Format { text, csv, json };

struct CliConfig {
    std::optional<std::uint64_t> seed;
    unsigned threads = 0;
    std::string format;
    std::string out = "results";
    bool force = false;
    std::optional<double> tolerance;
    bool verbose = false;

    Format resolved_format() const {
        if (format == "csv") return Format::csv;
        if (format == "json") return Format::json;
        if (format == "text") return Format::text;
        return isatty(fileno(stdout)) ? Format::text : Format::csv;
    }
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int cmd_expand(const CliConfig& cli, const std::string& number, const std::string& kind, std::size_t count) {
    const auto k = expansions::parse_kind(kind);
    const auto x = expansions::parse_rational(number);
    const auto seq = expansions::expand(k, x, count);
    switch (cli.resolved_format()) {
    case Format::json: {
        json digits = json::array();
        for (const auto& d : seq.digits) digits.push_back(d.str());
        std::cout << json{{"input", number}, {"kind", kind}, {"digits", digits}, {"terminated", seq.terminated}}.dump()
                  << '\n';
        break;
    }
    case Format::csv:
        std::cout << "index,digit\n";
        for (std::size_t i = 0; i < seq.digits.size(); ++i) std::cout << i + 1 << ',' << seq.digits[i] << '\n';
        break;
    case Format::text:
        for (std::size_t i = 0; i < seq.digits.size(); ++i) std::cout << (i ? " " : "") << seq.digits[i];
        std::cout << (seq.terminated ? "  (terminated)" : "") << '\n';
        break;
    }
    return 0;
}

int cmd_verify(const CliConfig& cli) {
    const auto checks = verify::identity_suite(cli.tolerance);
    switch (cli.resolved_format()) {
    case Format::json: {
        json arr = json::array();
        for (const auto& c : checks)
            arr.push_back({{"name", c.name},
                           {"description", c.description},
                           {"value", c.value},
                           {"error", std::isfinite(c.error) ? json(c.error) : json(nullptr)},
                           {"tolerance", c.tolerance},
                           {"passed", c.passed},
                           {"failure", c.failure}});
        std::cout << arr.dump(2) << '\n';
        break;
    }
    case Format::csv:
        std::cout << "name,value,error,tolerance,status\n";
        for (const auto& c : checks)
            std::cout << c.name << ',' << num(c.value) << ',' << num(c.error) << ',' << num(c.tolerance) << ','
                      << (c.passed ? "PASS" : "FAIL") << '\n';
        break;
    case Format::text:
        for (const auto& c : checks) {
            std::printf("%-4s %-30s value=%-22.15g error=%-10.3g tol=%-8.1g %s\n", c.passed ? "PASS" : "FAIL",
                        c.name.c_str(), c.value, c.error, c.tolerance, c.description.c_str());
            if (!c.failure.empty()) std::printf("     %s\n", c.failure.c_str());
        }
        break;
    }
    return verify::all_passed(checks) ? 0 : 1;
}

int cmd_limit_cdf(const CliConfig&, double c, double delta, bool levy, double from, double to, std::size_t points) {
    if (points < 2) throw ArgumentError("--points must be >= 2");
    if (!(to > from)) throw ArgumentError("--to must exceed --from");
    const auto law = levy ? limitlaw::levy_cf_law() : limitlaw::StableLimitLaw{c, delta};
    law.validate();
    std::cout << "x,F\n";
    for (std::size_t i = 0; i < points; ++i) {
        const double x = from + (to - from) * static_cast<double>(i) / static_cast<double>(points - 1);
        std::cout << num(x) << ',' << num(limitlaw::cdf(law, x)) << '\n';
    }
    return 0;
}

int cmd_ks_test(const CliConfig& cli, double c, double delta, bool levy, const std::string& input, std::size_t samples) {
    const auto law = levy ? limitlaw::levy_cf_law() : limitlaw::StableLimitLaw{c, delta};
    law.validate();
    std::vector<double> x;
    if (!input.empty()) {
        std::ifstream in(input);
        if (!in) throw ConfigError("", "cannot open sample file '" + input + "'");
        for (double v; in >> v;) x.push_back(v);
        if (!in.eof()) throw ConfigError("", "sample file '" + input + "' holds a non-numeric entry");
    } else {
        RandomStream rng(cli.seed.value_or(experiments::kDefaultSeed), 0);
        x = limitlaw::sample_many(law, rng, samples);
    }
    const std::size_t m = x.size();
    const double d = limitlaw::ks_distance(std::move(x), law);
    const bool ok = !cli.tolerance || d <= *cli.tolerance;
    switch (cli.resolved_format()) {
    case Format::json:
        std::cout << json{{"samples", m}, {"c", law.c}, {"delta", law.delta}, {"ks", d}, {"passed", ok}}.dump() << '\n';
        break;
    case Format::csv:
        std::cout << "samples,c,delta,ks\n" << m << ',' << num(law.c) << ',' << num(law.delta) << ',' << num(d) << '\n';
        break;
    case Format::text:
        std::printf("KS distance over %zu samples against c=%.6g delta=%.6g: %.6g%s\n", m, law.c, law.delta, d,
                    cli.tolerance ? (ok ? "  PASS" : "  FAIL") : "");
        break;
    }
    return ok ? 0 : 1;
}

void print_record(const experiments::RunRecord& rec, Format fmt, bool cached) {
    switch (fmt) {
    case Format::json: std::cout << rec.to_json().dump(2) << '\n'; break;
    case Format::csv: std::cout << rec.to_csv(); break;
    case Format::text: {
        const auto& cfg = rec.config;
        std::printf("%s  %s/%s  digest %s  M=%zu  threads=%u%s\n", cfg.name.c_str(), to_string(cfg.kind).c_str(),
                    cfg.mode.c_str(), rec.digest.c_str(), cfg.replications, rec.threads, cached ? "  (cached)" : "");
        if (cfg.kind == experiments::RunKind::weak_law) {
            std::printf("limit %.6g, epsilon %.3g\n%10s %12s %12s\n", rec.limit_c, cfg.epsilon, "n", "median", "P(|T-l|>e)");
            for (const auto& r : rec.rows) std::printf("%10zu %12.6f %12.6f\n", r.n, r.median, r.exceedance);
        } else {
            std::printf("limit law c=%.6g delta=%.6g\n%10s %10s %10s %12s %12s\n", rec.limit_c, rec.limit_delta, "n", "ks",
                        "max_ecf", "median", "subtractor");
            for (const auto& r : rec.rows)
                std::printf("%10zu %10.5f %10.5f %12.6f %12.6f\n", r.n, r.ks, r.ecf_error, r.median, r.subtractor);
        }
        for (const auto& [k, v] : rec.conditions) std::printf("  condition %-28s %s\n", k.c_str(), v.c_str());
        std::printf("wall time %.2f s\n", rec.wall_time);
        break;
    }
    }
}

int cmd_run(const CliConfig& cli, const std::string& path) {
    auto cfg = config::load_config(path);
    if (cli.seed) cfg.master_seed = *cli.seed;
    const unsigned threads = experiments::resolve_threads(cli.threads);
    const auto digest = experiments::config_digest(cfg, threads);
    if (!cli.force) {
        if (auto cached = experiments::load_record(cli.out, digest)) {
            print_record(*cached, cli.resolved_format(), true);
            return 0;
        }
    }
    const auto result = experiments::run(cfg, threads);
    experiments::write_record(result.record, cli.out);
    print_record(result.record, cli.resolved_format(), false);
    if (cli.verbose) std::cerr << "wrote " << experiments::record_path(cli.out, digest).string() << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Digit expansions, stable limit laws and weighted-sum experiments"};
    app.require_subcommand(1);
    app.fallthrough();
    CliConfig cli;
    std::uint64_t seed = 0;
    auto* seed_opt = app.add_option("--seed", seed, "Master seed (default 271828)");
    app.add_option("--threads", cli.threads, "Worker threads (default: available cores)");
    app.add_option("--format", cli.format, "Output format: text, csv or json (default: text on a terminal, csv otherwise)")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    app.add_flag("-v,--verbose", cli.verbose, "Extra diagnostics on stderr");

    auto* expand = app.add_subcommand("expand", "Digits of a rational number (p/q or decimal)");
    std::string number, kind = "luroth";
    std::size_t count = 10;
    expand->add_option("number", number, "Number in [0, 1)")->required();
    expand->add_option("--kind", kind, "luroth, engel, sylvester or continued_fraction");
    expand->add_option("--count", count, "Maximum number of digits");

    auto* verify_cmd = app.add_subcommand("verify", "Deterministic identity suite");
    double tolerance = 0.0;
    auto* tol_opt = app.add_option("--tolerance", tolerance, "Override every check's tolerance");

    auto* limit = app.add_subcommand("limit-cdf", "CSV table of the limit-law CDF");
    double c = 1.0, delta = 0.0, from = -5.0, to = 20.0;
    std::size_t points = 101;
    bool levy = false;
    limit->add_option("--c", c, "Scale c >= 0");
    limit->add_option("--delta", delta, "Shift delta");
    limit->add_flag("--levy", levy, "Use c = 1/log 2, delta = gamma/log 2");
    limit->add_option("--from", from);
    limit->add_option("--to", to);
    limit->add_option("--points", points);

    auto* run = app.add_subcommand("run", "Run an experiment config and store its record");
    std::string config_path;
    run->add_option("config", config_path, "Experiment config (JSON)")->required();
    app.add_option("--out", cli.out, "Results directory (default: results)");
    app.add_flag("--force", cli.force, "Recompute even if a record with the same digest exists");

    auto* ks = app.add_subcommand("ks-test", "KS distance between limit-law samples and its CDF");
    std::string input;
    std::size_t samples = 1'000'000;
    ks->add_option("--c", c, "Scale c > 0");
    ks->add_option("--delta", delta, "Shift delta");
    ks->add_flag("--levy", levy, "Use c = 1/log 2, delta = gamma/log 2");
    ks->add_option("--input", input, "File of samples, whitespace separated (default: draw from the law)");
    ks->add_option("--samples", samples, "Number of draws when no input is given");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    if (*seed_opt) cli.seed = seed;
    if (*tol_opt) cli.tolerance = tolerance;

    try {
        if (*expand) return cmd_expand(cli, number, kind, count);
        if (*verify_cmd) return cmd_verify(cli);
        if (*limit) return cmd_limit_cdf(cli, c, delta, levy, from, to, points);
        if (*run) return cmd_run(cli, config_path);
        if (*ks) return cmd_ks_test(cli, c, delta, levy, input, samples);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const ArgumentError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const ConditionError& e) {
        std::cerr << "refused: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

#include "oppenheim/experiments.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <gtest/gtest.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace oppenheim;
using namespace oppenheim::experiments;

namespace {

constexpr double kGamma = 0.57721566490153286;

ExperimentConfig small_distributional() {
    ExperimentConfig c;
    c.name = "test";
    c.kind = RunKind::distributional;
    c.mode = "classical_luroth";
    c.n_grid = {100, 1000};
    c.replications = 400;
    return c;
}

std::filesystem::path temp_dir(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(p);
    return p;
}

} // namespace

TEST(GammaFromHarmonic, ConvergesFromBelowQuickly) {
    const auto t0 = std::chrono::steady_clock::now();
    const double g = gamma_from_harmonic(1'000'000);
    EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 0.1);
    // log n - H_n = -gamma - 1/(2n) + O(n^-2).
    EXPECT_NEAR(g, -kGamma - 0.5e-6, 1e-11);
    EXPECT_LT(gamma_from_harmonic(10), gamma_from_harmonic(100));
    EXPECT_DOUBLE_EQ(gamma_from_harmonic(1), -1.0);
    EXPECT_THROW(gamma_from_harmonic(0), ArgumentError);
}

TEST(Centering, UniformCesaro) {
    const auto fam = distributions::DistributionFamily::uniform();
    for (std::size_t n : {10u, 1000u}) {
        const auto c = centering_constants(DistMode::reciprocal_family, fam, weights::WeightScheme::cesaro(), n);
        EXPECT_NEAR(c.subtractor, 1.0 - kGamma, 1e-9);
        EXPECT_NEAR(c.log_term, -std::log(double(n)), 1e-12);
    }
}

TEST(Centering, DiscreteBetaUsesDigamma) {
    const double beta = 0.3;
    const auto fam = distributions::DistributionFamily::discrete_beta(ParamSequence::constant(beta));
    const std::size_t n = 50;
    const auto w = weights::WeightScheme::power_alpha(0.5);
    const auto c = centering_constants(DistMode::discrete_beta, fam, w, n, 1.0);
    const double c2 = (1 - beta) * (boost::math::digamma(1.0) - boost::math::digamma(1 - beta));
    double lt = 0.0;
    for (double a : w.row(n)) lt += a * (1 - beta) * std::log(a);
    EXPECT_NEAR(c.subtractor, 1.0 + c2, 1e-12);
    EXPECT_NEAR(c.log_term, lt, 1e-12);
}

TEST(Centering, ModeFamilyMismatchIsConfigError) {
    const auto fam = distributions::DistributionFamily::uniform();
    EXPECT_THROW(centering_constants(DistMode::discrete_beta, fam, weights::WeightScheme::cesaro(), 10), ConfigError);
}

TEST(Digest, DependsOnConfigAndThreads) {
    const auto a = small_distributional();
    auto b = a;
    EXPECT_EQ(config_digest(a, 1), config_digest(b, 1));
    EXPECT_EQ(config_digest(a, 1).size(), 16u);
    b.master_seed += 1;
    EXPECT_NE(config_digest(a, 1), config_digest(b, 1));
    EXPECT_NE(config_digest(a, 1), config_digest(a, 2));
}

TEST(Run, ReproducibleRecord) {
    const auto cfg = small_distributional();
    const auto r1 = run(cfg, 1), r2 = run(cfg, 1);
    EXPECT_EQ(r1.record, r2.record);
    EXPECT_EQ(r1.samples, r2.samples);
    auto r3 = r1.record;
    r3.wall_time += 5.0;
    EXPECT_EQ(r1.record, r3);
    r3.rows[0].ks += 1e-9;
    EXPECT_FALSE(r1.record == r3);
}

TEST(Run, SamplesIndependentOfWorkerCount) {
    const auto cfg = small_distributional();
    const auto a = run(cfg, 1), b = run(cfg, 3);
    EXPECT_EQ(a.samples, b.samples);
    EXPECT_EQ(b.record.threads, 3u);
    EXPECT_NE(a.record.digest, b.record.digest);
}

TEST(Run, PathsSharedAcrossGrid) {
    // With a single-point grid the statistic at n = 100 is unchanged.
    auto cfg = small_distributional();
    const auto full = run(cfg, 1);
    cfg.n_grid = {100};
    const auto one = run(cfg, 1);
    EXPECT_EQ(one.samples[0], full.samples[0]);
}

TEST(Run, ClassicalLurothIsCloseToLimit) {
    const auto rec = run(small_distributional(), 1).record;
    ASSERT_EQ(rec.rows.size(), 2u);
    for (const auto& r : rec.rows) {
        EXPECT_LT(r.ks, 0.15);
        EXPECT_NEAR(r.subtractor, 1.0 + std::log(double(r.n)), 1e-12);
    }
    EXPECT_EQ(rec.limit_c, 1.0);
    EXPECT_EQ(rec.limit_delta, 0.0);
}

TEST(Run, WeakLawLurothMedianNearOne) {
    ExperimentConfig c;
    c.kind = RunKind::weak_law;
    c.mode = "luroth";
    c.n_grid = {1000, 10000};
    c.replications = 200;
    const auto res = run(c, 1);
    EXPECT_NEAR(res.record.limit_c, 1.0, 1e-9);
    for (const auto& r : res.record.rows) {
        EXPECT_NEAR(r.median, 1.0, 0.35);
        EXPECT_GE(r.exceedance, 0.0);
        EXPECT_LE(r.exceedance, 1.0);
    }
    EXPECT_LT(std::abs(res.record.rows[1].median - 1.0), std::abs(res.record.rows[0].median - 1.0));
}

TEST(Run, RefusesWeightsFailingConditions) {
    const auto dir = temp_dir("oppenheim_refuse");
    std::filesystem::create_directories(dir);
    const auto table = dir / "ones.csv";
    {
        std::ofstream out(table);
        out << "k,n,a\n";
        for (int n = 1; n <= 100; ++n)
            for (int k = 1; k <= n; ++k) out << k << ',' << n << ",1\n";
    }
    ExperimentConfig c;
    c.kind = RunKind::weak_law;
    c.mode = "luroth";
    c.n_grid = {10, 100};
    c.replications = 10;
    c.weights.kind = "custom_table";
    c.weights.table = table.string();
    EXPECT_THROW(run(c, 1), ConditionError);
    c.check_conditions = false;
    c.ell = 1.0;
    EXPECT_NO_THROW(run(c, 1));
}

TEST(Run, WrongKindIsConfigError) {
    auto c = small_distributional();
    EXPECT_THROW(exact_weak_law_run(c, 1), ConfigError);
    c.replications = 10;
    EXPECT_THROW(run(c, 1), ConfigError);
}

TEST(Record, JsonRoundTrip) {
    const auto rec = run(small_distributional(), 1).record;
    const auto back = record_from_json(json::parse(rec.to_json().dump()));
    EXPECT_EQ(back, rec);
    EXPECT_EQ(back.wall_time, rec.wall_time);
}

TEST(Record, WriteAndLoad) {
    const auto dir = temp_dir("oppenheim_records");
    const auto rec = run(small_distributional(), 1).record;
    EXPECT_FALSE(load_record(dir, rec.digest));
    write_record(rec, dir);
    const auto got = load_record(dir, rec.digest);
    ASSERT_TRUE(got);
    EXPECT_EQ(*got, rec);
    EXPECT_TRUE(std::filesystem::exists(dir / (rec.digest + ".csv")));
}

TEST(Record, CsvColumns) {
    const auto rec = run(small_distributional(), 1).record;
    std::istringstream in(rec.to_csv());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "n,exceedance,ks,max_ecf_error");
    for (const auto& r : rec.rows) {
        ASSERT_TRUE(std::getline(in, line));
        std::istringstream ls(line);
        std::string n, exc, ks, ecf;
        std::getline(ls, n, ',');
        std::getline(ls, exc, ',');
        std::getline(ls, ks, ',');
        std::getline(ls, ecf, ',');
        EXPECT_EQ(std::stoul(n), r.n);
        EXPECT_TRUE(exc.empty());
        EXPECT_EQ(std::stod(ks), r.ks);
        EXPECT_EQ(std::stod(ecf), r.ecf_error);
    }
    EXPECT_FALSE(std::getline(in, line));
}

TEST(CharDistance, EngelWithinBound) {
    const auto rep = char_distance_check("engel", 2, {0.3, 0.5}, 20'000, 11, 1);
    EXPECT_TRUE(rep.within_bound);
    EXPECT_DOUBLE_EQ(rep.bound, 0.8);
    EXPECT_GT(rep.standard_error, 0.0);
}

TEST(CharDistance, ArgumentErrors) {
    EXPECT_THROW(char_distance_check("engel", 0, {}, 10), ArgumentError);
    EXPECT_THROW(char_distance_check("engel", 2, {1.0}, 10), ArgumentError);
    EXPECT_THROW(char_distance_check("cantor", 1, {1.0}, 10), ArgumentError);
}

TEST(ParallelFor, RethrowsAndCoversRange) {
    std::vector<int> hit(100, 0);
    parallel_for(100, 4, [&](std::size_t j, unsigned) { hit[j] += 1; });
    for (int h : hit) EXPECT_EQ(h, 1);
    EXPECT_THROW(parallel_for(10, 2, [](std::size_t j, unsigned) {
                     if (j == 5) throw std::runtime_error("boom");
                 }),
                 std::runtime_error);
}

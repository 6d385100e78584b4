#include "oppenheim/config.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace oppenheim;
using oppenheim::config::parse_config;

namespace {

std::string error_of(const std::string& text) {
    try {
        parse_config(text, "cfg.json");
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

std::string field_of(const std::string& text) {
    try {
        parse_config(text, "cfg.json");
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "<none>";
}

} // namespace

TEST(Config, DefaultsFromEmptyObject) {
    const auto c = parse_config("{}");
    EXPECT_EQ(c.kind, experiments::RunKind::weak_law);
    EXPECT_EQ(c.mode, "luroth");
    EXPECT_EQ(c.master_seed, 271828u);
    EXPECT_EQ(c.n_grid, (std::vector<std::size_t>{100, 1000, 10000}));
}

TEST(Config, FullDocumentWithComments) {
    const auto c = parse_config(R"({
      // distributional run
      "name": "x", "kind": "distributional", "mode": "discrete_beta",
      "master_seed": 7, "n_grid": [10, 20], "replications": 100,
      "family": {"kind": "discrete_beta", "param": 0.25},
      "weights": {"kind": "iterated", "alpha": 0.5, "r": 2, "rho": "loglog"},
      "epsilon": 0.1, "t_grid": [1], "ell": 2.0, "check_conditions": false
    })");
    EXPECT_EQ(c.name, "x");
    EXPECT_EQ(c.master_seed, 7u);
    EXPECT_EQ(c.family.param, "constant:0.25");
    EXPECT_EQ(c.weights.r, 2);
    EXPECT_EQ(c.weights.rho, "loglog");
    ASSERT_TRUE(c.ell);
    EXPECT_EQ(*c.ell, 2.0);
    EXPECT_FALSE(c.check_conditions);
}

TEST(Config, ArrayParameter) {
    const auto c = parse_config(R"({"family": {"kind": "mobius_clamped", "param": [1, 2, 0.5]}})");
    const auto f = c.family.make();
    EXPECT_DOUBLE_EQ(f.param(2), 2.0);
    EXPECT_DOUBLE_EQ(f.param(3), 0.5);
}

TEST(Config, SyntaxErrorHasLineAndColumn) {
    const auto msg = error_of("{\n  \"name\": \"a\",\n  \"kind\" \"weak_law\"\n}");
    EXPECT_NE(msg.find("cfg.json"), std::string::npos) << msg;
    EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
    EXPECT_NE(msg.find("column"), std::string::npos) << msg;
}

TEST(Config, UnknownKeysNamed) {
    EXPECT_EQ(field_of(R"({"replicatons": 5})"), "replicatons");
    EXPECT_EQ(field_of(R"({"family": {"kind": "uniform", "alpha": 1}})"), "family.alpha");
    EXPECT_EQ(field_of(R"({"weights": {"kind": "cesaro", "beta": 1}})"), "weights.beta");
}

TEST(Config, FieldErrors) {
    EXPECT_EQ(field_of(R"({"n_grid": "many"})"), "n_grid");
    EXPECT_EQ(field_of(R"({"n_grid": [100, 10]})"), "n_grid");
    EXPECT_EQ(field_of(R"({"kind": "sideways"})"), "kind");
    EXPECT_EQ(field_of(R"({"mode": "classical_luroth"})"), "mode");
    EXPECT_EQ(field_of(R"({"epsilon": 0})"), "epsilon");
    EXPECT_EQ(field_of(R"({"kind": "distributional", "replications": 5})"), "replications");
    EXPECT_EQ(field_of(R"({"weights": {"kind": "triangular"}})"), "weights.kind");
    EXPECT_EQ(field_of(R"({"family": {"kind": "uniform", "param": true}})"), "family.param");
    EXPECT_NE(error_of(R"({"epsilon": 0})").find("field 'epsilon'"), std::string::npos);
}

TEST(Config, ConstructionErrorsSurfaceEarly) {
    EXPECT_THROW(parse_config(R"({"weights": {"kind": "power_alpha", "alpha": 1.5}})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"family": {"kind": "discrete_beta", "param": 1.0}})"), ConfigError);
    EXPECT_THROW(parse_config("[1, 2]"), ConfigError);
}

TEST(Config, MissingFile) {
    EXPECT_THROW(config::load_config("/nonexistent/x.json"), ConfigError);
}

TEST(Config, BundledConfigsParse) {
    std::size_t count = 0;
    for (const auto& e : std::filesystem::directory_iterator(OPPENHEIM_CONFIGS)) {
        if (e.path().extension() != ".json") continue;
        EXPECT_NO_THROW(config::load_config(e.path().string())) << e.path();
        ++count;
    }
    EXPECT_GE(count, 5u);
}

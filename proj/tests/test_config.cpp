#include <doctest.h>

#include <string>

#include "gsel/config.hpp"
#include "gsel/io.hpp"

using namespace gsel;

TEST_CASE("minimal config gets defaults") {
  const std::string text =
      R"({"env": "experiment1", "m": 5, "T": 1000, "policy": "aoa-gs", "seed": 7})";
  const auto cfg = parse_config(text, "inline");
  CHECK(cfg.env.kind == EnvironmentSpec::Kind::SyntheticExperiment1);
  CHECK(cfg.m == 5);
  CHECK(cfg.budget == 1000);
  CHECK(cfg.n0 == 10);
  CHECK(cfg.macros == 20000);
  CHECK(cfg.seed == 7);
  CHECK(cfg.policy == PolicyKind::AoaGs);
  CHECK(cfg.var_mode.kind == VarianceModeKind::PlugIn);
  CHECK(cfg.prior.mode == PriorMode::Uninformative);
  CHECK(cfg.effective_checkpoints() == std::vector<long long>{1000});
  const std::string echo = describe_config(cfg);
  CHECK(echo.find("n0=10") != std::string::npos);
  CHECK(echo.find("macros=20000") != std::string::npos);
}

TEST_CASE("unknown keys are errors naming the key") {
  const std::string text =
      R"({"env": "experiment1", "m": 5, "T": 1000, "policy": "aoa-gs", "seed": 7, "budgett": 1})";
  CHECK_THROWS_WITH_AS(parse_config(text, "inline"),
                       "config error: unknown key 'budgett' in config",
                       std::invalid_argument);
}

TEST_CASE("budget below the warm-up is rejected naming the constraint") {
  const std::string text =
      R"({"env": "experiment1", "m": 5, "T": 400, "policy": "aoa-gs", "seed": 7})";
  CHECK_THROWS_WITH_AS(parse_config(text, "inline"),
                       "config error: T must satisfy k*n0 <= T (k=50, n0=10, T=400)",
                       std::invalid_argument);
}

TEST_CASE("parse errors carry a line number") {
  const std::string text = "{\n  \"env\": \"experiment1\",\n  oops\n}";
  try {
    parse_config(text, "bad.json");
    FAIL("expected a parse error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("bad.json:3") != std::string::npos);
  }
}

TEST_CASE("inventory config infers k from the table") {
  const std::string text =
      R"({"env": {"type": "inventory"}, "m": 3, "T": 500, "policy": "aoa-gs", "seed": 1})";
  const auto cfg = parse_config(text, "inline");
  CHECK(cfg.env.k() == 20);
  CHECK(cfg.env.objective == Objective::Minimize);
  CHECK(true_best(cfg.env) == 11);
}

TEST_CASE("synthetic env with known-true variances") {
  const std::string text = R"({
    "env": {"type": "synthetic-normal", "means": [2.0, 1.0, 0.0], "stds": [1.0, 2.0, 3.0]},
    "m": 1, "T": 100, "policy": "equal-allocation", "seed": 3,
    "variance_mode": "known-true"
  })";
  const auto cfg = parse_config(text, "inline");
  CHECK(cfg.var_mode.kind == VarianceModeKind::Known);
  CHECK(cfg.var_mode.known_variances[1] == doctest::Approx(4.0));
  CHECK(cfg.policy == PolicyKind::EqualAllocation);
}

TEST_CASE("external policy parses but is rejected as unimplemented") {
  const std::string text =
      R"({"env": "experiment1", "m": 5, "T": 1000, "policy": {"external": "ocba-rgm"}, "seed": 7})";
  try {
    parse_config(text, "inline");
    FAIL("expected rejection");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("ocba-rgm") != std::string::npos);
  }
}

TEST_CASE("checkpoints must fall inside the adaptive phase") {
  const std::string text =
      R"({"env": "experiment1", "m": 5, "T": 1000, "policy": "aoa-gs", "seed": 7,
          "checkpoints": [500, 900]})";
  CHECK_THROWS_AS(parse_config(text, "inline"), std::invalid_argument);
  const std::string good =
      R"({"env": "experiment1", "m": 5, "T": 1000, "policy": "aoa-gs", "seed": 7,
          "checkpoints": [600, 900]})";
  const auto cfg = parse_config(good, "inline");
  CHECK(cfg.effective_checkpoints() == std::vector<long long>{600, 900, 1000});
}

TEST_CASE("generating prior resolves to the experiment1 hyper-distribution") {
  const std::string text =
      R"({"env": "experiment1", "m": 5, "T": 1000, "policy": "aoa-gs", "seed": 7,
          "prior": "generating"})";
  const auto cfg = parse_config(text, "inline");
  REQUIRE(cfg.prior.mode == PriorMode::Informative);
  REQUIRE(cfg.prior.per_alternative());
  CHECK(cfg.prior.mean_of(0) == 0.0);
  CHECK(cfg.prior.variance_of(0) == doctest::Approx(25.0));
  CHECK(cfg.prior.variance_of(49) == doctest::Approx(0.01));
  CHECK(describe_config(cfg).find("informative-per-alternative") != std::string::npos);

  const std::string bad =
      R"({"env": {"type": "inventory"}, "m": 3, "T": 500, "policy": "aoa-gs", "seed": 7,
          "prior": "generating"})";
  CHECK_THROWS_AS(parse_config(bad, "inline"), std::invalid_argument);
}

TEST_CASE("per-alternative prior from explicit arrays") {
  const std::string text = R"({
    "env": {"type": "synthetic-normal", "means": [1.0, 0.0], "stds": [1.0, 1.0]},
    "m": 1, "T": 50, "policy": "aoa-gs", "seed": 2, "n0": 2,
    "prior": {"means": [0.5, -0.5], "variances": [2.0, 3.0]}
  })";
  const auto cfg = parse_config(text, "inline");
  CHECK(cfg.prior.per_alternative());
  CHECK(cfg.prior.variance_of(1) == 3.0);
}

TEST_CASE("informative prior and explicit known variances") {
  const std::string text = R"({
    "env": {"type": "synthetic-normal", "means": [1.0, 0.0], "stds": [1.0, 1.0]},
    "m": 1, "T": 50, "policy": "aoa-gs", "seed": 2,
    "prior": {"mean": 0.5, "variance": 2.0},
    "variance_mode": {"known": [1.0, 1.0]},
    "n0": 1
  })";
  const auto cfg = parse_config(text, "inline");
  CHECK(cfg.prior.mode == PriorMode::Informative);
  CHECK(cfg.prior.variance == 2.0);
  CHECK(cfg.var_mode.known_variances.size() == 2);
}

TEST_CASE("csv number formatting round-trips") {
  for (double v : {0.6082, 1.0 / 3.0, 1e-12, 0.0, 123456.789, 5e-324}) {
    const std::string s = format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "noma_secrecy/config.hpp"
#include "support/table_config.hpp"

using namespace noma_secrecy;

TEST_CASE("table parameters are accepted and derived fields populated") {
  const auto cfg = testcfg::table();
  CHECK(cfg.validated);
  CHECK(cfg.delta == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(cfg.rho == doctest::Approx(1000.0).epsilon(1e-12));
  CHECK(cfg.rho_e == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(cfg.omega_i == doctest::Approx(1e-3 / 2.0).epsilon(1e-12));
  CHECK(cfg.eta == doctest::Approx(5.69143365714345e-4).epsilon(1e-12));
}

TEST_CASE("fairness and domain violations are rejected with field names") {
  SystemConfig cfg = testcfg::table();
  cfg.a_n = 0.5;
  cfg.a_m = 0.5;
  auto errors = validate(cfg);
  REQUIRE_FALSE(errors.empty());
  bool mentions_am = false;
  for (const auto& e : errors) mentions_am |= e.find("a_m") != std::string::npos;
  CHECK(mentions_am);

  cfg = testcfg::table();
  cfg.alpha = 1.5;
  errors = validate(cfg);
  REQUIRE_FALSE(errors.empty());
  CHECK(errors.front().find("alpha") != std::string::npos);

  cfg = testcfg::table();
  cfg.sic = SicMode{SicMode::Kind::imperfect, 0.0};
  CHECK_FALSE(validate(cfg).empty());
  cfg.sic = SicMode{SicMode::Kind::imperfect, 1.5};
  CHECK_FALSE(validate(cfg).empty());
  cfg.sic = SicMode{SicMode::Kind::perfect, 0.2};
  CHECK_FALSE(validate(cfg).empty());
}

TEST_CASE("validation is idempotent") {
  auto cfg = testcfg::table();
  const auto once = config_to_json(cfg);
  const auto errors = validate(cfg);
  CHECK(errors.empty());
  CHECK(config_to_json(cfg) == once);
  CHECK(cfg.eta == validated(cfg).eta);
}

TEST_CASE("eta derivation and override") {
  CHECK(eta_from_carrier(1e9) ==
        doctest::Approx(5.69143365714345e-4).epsilon(1e-12));
  // scaling law: doubling the carrier quarters eta
  CHECK(eta_from_carrier(1e9) / eta_from_carrier(2e9) ==
        doctest::Approx(4.0).epsilon(1e-12));
  CHECK_THROWS_AS(eta_from_carrier(0.0), std::domain_error);

  SystemConfig cfg = testcfg::table();
  cfg.eta_override = 1.0;
  cfg = validated(cfg);
  CHECK(cfg.eta == 1.0);
}

TEST_CASE("dB conversions round-trip") {
  for (double db : {-30.0, -3.0, 0.0, 10.0, 27.5}) {
    CHECK(linear_to_db(db_to_linear(db)) ==
          doctest::Approx(db).epsilon(1e-12));
  }
}

TEST_CASE("json round trip preserves every field") {
  auto cfg = testcfg::table(3, 25.0, SicMode::ipsic(0.7));
  cfg.M = 6;
  cfg.eta_override = 2e-4;
  cfg = validated(cfg);
  const auto j = config_to_json(cfg);
  auto back = validated(config_from_json(j));
  CHECK(config_to_json(back) == j);
  CHECK(back.K == 3);
  CHECK(back.sic.varpi == doctest::Approx(0.7));
  CHECK(back.eta == doctest::Approx(2e-4));
  CHECK(back.M.value() == 6);
}

TEST_CASE("unknown json keys are rejected") {
  nlohmann::json j{{"K", 2}, {"bogus_key", 1.0}};
  CHECK_THROWS_AS(config_from_json(j), ConfigError);
  try {
    config_from_json(j);
  } catch (const ConfigError& e) {
    REQUIRE_FALSE(e.errors().empty());
    CHECK(e.errors().front().find("bogus_key") != std::string::npos);
  }
  nlohmann::json s{{"sic", {{"kind", "perfect"}, {"oops", 1}}}};
  CHECK_THROWS_AS(config_from_json(s), ConfigError);
}

TEST_CASE("sic json forms") {
  auto cfg = config_from_json(
      nlohmann::json{{"sic", {{"kind", "imperfect"}, {"varpi", 0.3}}}});
  CHECK(cfg.sic.imperfect());
  CHECK(cfg.sic.varpi == doctest::Approx(0.3));
  cfg = config_from_json(nlohmann::json{{"sic", {{"kind", "perfect"}}}});
  CHECK_FALSE(cfg.sic.imperfect());
  CHECK_THROWS_AS(
      config_from_json(nlohmann::json{{"sic", {{"kind", "half"}}}}),
      ConfigError);
}

TEST_CASE("per-subcarrier residual variance scales with K") {
  const auto k1 = testcfg::table(1);
  const auto k4 = testcfg::table(4);
  CHECK(k1.omega_i == doctest::Approx(1e-3).epsilon(1e-12));
  CHECK(k4.omega_i == doctest::Approx(2.5e-4).epsilon(1e-12));
}

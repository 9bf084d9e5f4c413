#include "noma_secrecy/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace noma_secrecy {

namespace {
constexpr double kSpeedOfLight = 299792458.0;
}

const char* scenario_name(Scenario s) {
  switch (s) {
    case Scenario::external_n: return "external-n";
    case Scenario::external_m: return "external-m";
    case Scenario::external_pair: return "external-pair";
    case Scenario::internal_eve: return "internal";
  }
  return "?";
}

std::optional<Scenario> scenario_from_name(const std::string& name) {
  if (name == "external-n") return Scenario::external_n;
  if (name == "external-m") return Scenario::external_m;
  if (name == "external-pair" || name == "pair") return Scenario::external_pair;
  if (name == "internal") return Scenario::internal_eve;
  return std::nullopt;
}

ConfigError::ConfigError(std::vector<std::string> errors)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "invalid configuration:";
        for (const auto& e : errors) os << "\n  - " << e;
        return os.str();
      }()),
      errors_(std::move(errors)) {}

double eta_from_carrier(double carrier_hz) {
  if (!(carrier_hz > 0.0)) {
    throw std::domain_error("eta_from_carrier: carrier frequency must be positive");
  }
  const double v = kSpeedOfLight / (4.0 * std::numbers::pi * carrier_hz);
  return v * v;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

std::vector<std::string> validate(SystemConfig& cfg) {
  std::vector<std::string> errors;
  auto require = [&](bool ok, const std::string& msg) {
    if (!ok) errors.push_back(msg);
  };

  require(cfg.K >= 1, "K: must be a positive integer (K = 1 selects PD, K >= 2 CD)");
  require(cfg.a_n > 0.0 && cfg.a_n < 1.0, "a_n: must lie in (0, 1)");
  require(cfg.a_m > 0.0 && cfg.a_m < 1.0, "a_m: must lie in (0, 1)");
  require(std::abs(cfg.a_n + cfg.a_m - 1.0) <= 1e-12,
          "a_n, a_m: power allocation coefficients must sum to 1");
  require(cfg.a_m > cfg.a_n, "a_m: must exceed a_n (fairness ordering)");
  require(cfg.alpha >= 2.0, "alpha: path loss exponent must be >= 2 (delta = 2/alpha <= 1)");
  if (!cfg.eta_override) {
    require(cfg.carrier_hz > 0.0, "carrier_hz: must be positive");
  } else {
    require(*cfg.eta_override > 0.0, "eta: override must be positive");
  }
  require(cfg.lambda_e >= 0.0, "lambda_e: density must be nonnegative");
  require(cfg.r_d1 >= 0.0, "r_d1: radius must be nonnegative");
  require(cfg.r_d2 > cfg.r_d1, "r_d2: must exceed r_d1 (nearby users, then distant users)");
  require(cfg.r_eve > cfg.r_d2, "r_eve: must exceed r_d2 (eavesdropper field outermost)");
  if (cfg.sic.kind == SicMode::Kind::perfect) {
    require(cfg.sic.varpi == 0.0, "sic: perfect mode requires varpi = 0");
  } else {
    require(cfg.sic.varpi > 0.0 && cfg.sic.varpi <= 1.0,
            "sic: imperfect mode requires varpi in (0, 1]");
  }
  require(cfg.R_n >= 0.0, "R_n: target rate must be nonnegative");
  require(cfg.R_m >= 0.0, "R_m: target rate must be nonnegative");
  require(cfg.R_mn >= 0.0, "R_mn: target rate must be nonnegative");
  require(cfg.U >= 1, "U: node count must be a positive integer");
  if (cfg.M) require(*cfg.M >= 2, "M: user count must be >= 2 when given");

  if (!errors.empty()) return errors;

  cfg.eta = cfg.eta_override ? *cfg.eta_override : eta_from_carrier(cfg.carrier_hz);
  cfg.delta = 2.0 / cfg.alpha;
  cfg.rho = db_to_linear(cfg.rho_db);
  cfg.rho_e = db_to_linear(cfg.rho_e_db);
  cfg.omega_i = db_to_linear(cfg.residual_total_db) / cfg.K;
  cfg.omega_ie = db_to_linear(cfg.residual_total_eve_db) / cfg.K;
  cfg.validated = true;
  return {};
}

SystemConfig validated(SystemConfig cfg) {
  auto errors = validate(cfg);
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return cfg;
}

namespace {

const std::set<std::string> kKnownKeys = {
    "K", "a_n", "a_m", "rho_db", "rho_e_db", "carrier_hz", "eta", "alpha",
    "lambda_e", "r_d1", "r_d2", "r_eve", "sic", "residual_total_db",
    "residual_total_eve_db", "R_n", "R_m", "R_mn", "U", "M"};

} // namespace

SystemConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw ConfigError({"config: top-level JSON value must be an object"});
  }
  std::vector<std::string> errors;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!kKnownKeys.count(it.key())) {
      errors.push_back("unknown key: " + it.key());
    }
  }
  if (!errors.empty()) throw ConfigError(std::move(errors));

  SystemConfig cfg;
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) j.at(key).get_to(field);
  };
  get("K", cfg.K);
  get("a_n", cfg.a_n);
  get("a_m", cfg.a_m);
  get("rho_db", cfg.rho_db);
  get("rho_e_db", cfg.rho_e_db);
  get("carrier_hz", cfg.carrier_hz);
  if (j.contains("eta") && !j.at("eta").is_null()) {
    cfg.eta_override = j.at("eta").get<double>();
  }
  get("alpha", cfg.alpha);
  get("lambda_e", cfg.lambda_e);
  get("r_d1", cfg.r_d1);
  get("r_d2", cfg.r_d2);
  get("r_eve", cfg.r_eve);
  if (j.contains("sic")) {
    const auto& s = j.at("sic");
    if (!s.is_object() || !s.contains("kind")) {
      throw ConfigError({"sic: expected object with a \"kind\" key"});
    }
    for (auto it = s.begin(); it != s.end(); ++it) {
      if (it.key() != "kind" && it.key() != "varpi") {
        throw ConfigError({"sic: unknown key: " + it.key()});
      }
    }
    const std::string kind = s.at("kind").get<std::string>();
    if (kind == "perfect") {
      cfg.sic = SicMode::psic();
      if (s.contains("varpi")) cfg.sic.varpi = s.at("varpi").get<double>();
    } else if (kind == "imperfect") {
      cfg.sic = SicMode::ipsic(s.contains("varpi") ? s.at("varpi").get<double>() : 1.0);
    } else {
      throw ConfigError({"sic.kind: must be \"perfect\" or \"imperfect\""});
    }
  }
  get("residual_total_db", cfg.residual_total_db);
  get("residual_total_eve_db", cfg.residual_total_eve_db);
  get("R_n", cfg.R_n);
  get("R_m", cfg.R_m);
  get("R_mn", cfg.R_mn);
  get("U", cfg.U);
  if (j.contains("M") && !j.at("M").is_null()) cfg.M = j.at("M").get<int>();
  return cfg;
}

nlohmann::json config_to_json(const SystemConfig& cfg) {
  nlohmann::json j{
      {"K", cfg.K},
      {"a_n", cfg.a_n},
      {"a_m", cfg.a_m},
      {"rho_db", cfg.rho_db},
      {"rho_e_db", cfg.rho_e_db},
      {"carrier_hz", cfg.carrier_hz},
      {"alpha", cfg.alpha},
      {"lambda_e", cfg.lambda_e},
      {"r_d1", cfg.r_d1},
      {"r_d2", cfg.r_d2},
      {"r_eve", cfg.r_eve},
      {"residual_total_db", cfg.residual_total_db},
      {"residual_total_eve_db", cfg.residual_total_eve_db},
      {"R_n", cfg.R_n},
      {"R_m", cfg.R_m},
      {"R_mn", cfg.R_mn},
      {"U", cfg.U},
  };
  j["sic"] = nlohmann::json{
      {"kind", cfg.sic.kind == SicMode::Kind::perfect ? "perfect" : "imperfect"},
      {"varpi", cfg.sic.varpi}};
  if (cfg.eta_override) j["eta"] = *cfg.eta_override;
  if (cfg.M) j["M"] = *cfg.M;
  return j;
}

SystemConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open config file: " + path});
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError({"config file parse error: " + std::string(e.what())});
  }
  return config_from_json(j);
}

} // namespace noma_secrecy

#ifndef NOMA_SECRECY_CONFIG_HPP
#define NOMA_SECRECY_CONFIG_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace noma_secrecy {

// Successive interference cancellation mode. perfect <=> varpi = 0,
// imperfect <=> varpi in (0, 1].
struct SicMode {
  enum class Kind { perfect, imperfect };
  Kind kind = Kind::perfect;
  double varpi = 0.0;

  static SicMode psic() { return {Kind::perfect, 0.0}; }
  static SicMode ipsic(double varpi) { return {Kind::imperfect, varpi}; }
  bool imperfect() const { return kind == Kind::imperfect; }
};

enum class Scenario { external_n, external_m, external_pair, internal_eve };

const char* scenario_name(Scenario s);
std::optional<Scenario> scenario_from_name(const std::string& name);

// All physical and network parameters, plus the derived quantities filled in
// by validate(). Immutable after validation; safe to share across threads.
struct SystemConfig {
  // subcarriers: K = 1 selects the power-domain scheme, K >= 2 code-domain
  int K = 2;
  double a_n = 0.2; // power allocation, nearby user
  double a_m = 0.8; // power allocation, distant user (a_m > a_n, sum = 1)
  double rho_db = 30.0;   // transmit SNR at legitimate users, dB
  double rho_e_db = 10.0; // transmit SNR at eavesdroppers, dB
  double carrier_hz = 1e9;
  std::optional<double> eta_override; // frequency factor; derived when absent
  double alpha = 2.0;                 // path loss exponent, >= 2
  double lambda_e = 1e-3;             // eavesdropper density, points/m^2
  double r_d1 = 2.0;                  // nearby-user disc radius, m
  double r_d2 = 10.0;                 // distant-user disc radius, m
  double r_eve = 1000.0;              // eavesdropper disc radius, m (simulation)
  SicMode sic = SicMode::psic();
  double residual_total_db = -30.0;     // E{||h_I||^2}, dB
  double residual_total_eve_db = -30.0; // E{||h_Ie||^2}, dB
  double R_n = 0.01;  // target secrecy rate, external wiretap of nearby user
  double R_m = 0.01;  // target secrecy rate, external wiretap of distant user
  double R_mn = 0.01; // target secrecy rate, internal wiretap
  int U = 15;         // Chebyshev-Gauss node count
  std::optional<int> M; // total user count; bookkeeping only, enters no formula

  // derived, filled by validate()
  double eta = 0.0;
  double delta = 0.0;    // 2/alpha
  double rho = 0.0;      // linear
  double rho_e = 0.0;    // linear
  double omega_i = 0.0;  // per-subcarrier residual variance, total/K
  double omega_ie = 0.0;
  bool validated = false;

  bool is_pd() const { return K == 1; }
  double varpi() const { return sic.imperfect() ? sic.varpi : 0.0; }
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

// Free-space reference (c / (4 pi f))^2.
double eta_from_carrier(double carrier_hz);

double db_to_linear(double db);
double linear_to_db(double linear);

// Checks every invariant and fills the derived fields. Returns the list of
// violations (empty when valid). Idempotent.
std::vector<std::string> validate(SystemConfig& cfg);

// validate() or throw ConfigError.
SystemConfig validated(SystemConfig cfg);

// JSON round trip. Keys match the field names exactly; unknown keys are
// rejected. `sic` is {"kind": "perfect"|"imperfect", "varpi": ...}.
SystemConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const SystemConfig& cfg);
SystemConfig load_config_file(const std::string& path);

} // namespace noma_secrecy

#endif

#ifndef NOMA_SECRECY_SWEEP_HPP
#define NOMA_SECRECY_SWEEP_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "noma_secrecy/config.hpp"
#include "noma_secrecy/monte_carlo.hpp"
#include "noma_secrecy/sop_engine.hpp"

// Parameter sweeps over SNR and scenario, CSV emission, and the per-figure
// parameter presets.

namespace noma_secrecy {

struct SweepRow {
  std::string scenario; // external-n | external-m | external-pair | internal
  std::string scheme;   // cd | pd
  std::string sic;      // psic | ipsic
  std::string user;     // n | m | pair | m_to_n
  std::string method;   // exact | asymptotic | mc
  double rho_db = 0.0;
  double value = 0.0;
  double ci_low = 0.0;  // 0 for deterministic methods
  double ci_high = 0.0;
  std::uint64_t iterations = 0;
  std::uint64_t seed = 0;

  bool operator==(const SweepRow&) const = default;
};

struct SweepResult {
  std::vector<SweepRow> rows; // sorted by (scenario, method, rho_db)
};

struct SweepSpec {
  std::vector<Scenario> scenarios;
  std::vector<double> rho_grid_db;
  std::vector<Method> methods;
  std::uint64_t iterations = 20000;
  std::uint64_t seed = 1;
  int workers = 0;
  SopOptions sop;
  McOptions mc;
};

// Thrown when a sweep point fails; carries whatever finished.
class SweepAborted : public std::runtime_error {
 public:
  SweepAborted(const std::string& what, SweepResult partial)
      : std::runtime_error(what), partial_result(std::move(partial)) {}
  SweepResult partial_result;
};

SweepResult run_sweep(const SystemConfig& cfg, const SweepSpec& spec);

inline constexpr const char* kCsvHeader =
    "scenario,scheme,sic,user,method,rho_db,value,ci_low,ci_high,iterations,seed";

void write_csv(const SweepResult& result, std::ostream& os);
void write_csv_file(const SweepResult& result, const std::string& path);
SweepResult read_csv(std::istream& is);
SweepResult read_csv_file(const std::string& path);

// A figure's data recipe: config overrides per variant plus the sweep to run.
// Pure data; applying a recipe twice yields the same configs.
struct FigureVariant {
  std::string label;         // filename-safe suffix
  nlohmann::json overrides;  // config keys to replace
};

struct FigureRecipe {
  std::string name;
  std::string description;
  nlohmann::json base_overrides;
  std::vector<FigureVariant> variants;
  std::vector<Scenario> scenarios;
  std::vector<double> rho_grid_db;
  std::vector<Method> methods;
};

FigureRecipe figure_recipe(const std::string& name);
std::vector<std::string> figure_recipe_names();

// cfg with the recipe's base and variant overrides applied (not yet validated).
SystemConfig apply_overrides(const SystemConfig& cfg,
                             const nlohmann::json& overrides);

} // namespace noma_secrecy

#endif

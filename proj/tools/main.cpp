// noma-secrecy: secrecy outage evaluation for a unified CD/PD-NOMA network.
//
// Subcommands: sop, sweep, figure <name>, validate, diversity.
// Exit codes: 0 success, 1 configuration error, 2 numerical failure,
// 3 validation failures above tolerance.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "noma_secrecy/config.hpp"
#include "noma_secrecy/monte_carlo.hpp"
#include "noma_secrecy/quadrature.hpp"
#include "noma_secrecy/sop_engine.hpp"
#include "noma_secrecy/sweep.hpp"
#include "noma_secrecy/validation.hpp"

namespace ns = noma_secrecy;

namespace {

struct CommonArgs {
  std::string config_path;
  nlohmann::json overrides = nlohmann::json::object();
  std::optional<std::string> sic_kind;
  std::optional<double> varpi;
  std::uint64_t seed = 1;
  int workers = 0;
  double quad_tol = 1e-6;
};

void add_config_flags(CLI::App* app, CommonArgs& args) {
  app->add_option("--config", args.config_path, "JSON config file");

  auto opt = [&](const char* key) {
    app->add_option_function<double>(
        std::string("--") + key,
        [&args, key = std::string(key)](double v) { args.overrides[key] = v; },
        std::string("override config key ") + key);
  };
  opt("a_n");
  opt("a_m");
  opt("rho_db");
  opt("rho_e_db");
  opt("carrier_hz");
  opt("eta");
  opt("alpha");
  opt("lambda_e");
  opt("r_d1");
  opt("r_d2");
  opt("r_eve");
  opt("residual_total_db");
  opt("residual_total_eve_db");
  opt("R_n");
  opt("R_m");
  opt("R_mn");
  app->add_option_function<int>(
      "--K", [&args](int v) { args.overrides["K"] = v; }, "override config key K");
  app->add_option_function<int>(
      "--U", [&args](int v) { args.overrides["U"] = v; }, "override config key U");
  app->add_option_function<int>(
      "--M", [&args](int v) { args.overrides["M"] = v; }, "override config key M");
  app->add_option_function<std::string>(
      "--sic",
      [&args](const std::string& v) { args.sic_kind = v; },
      "SIC mode: perfect|psic or imperfect|ipsic");
  app->add_option_function<double>(
      "--varpi", [&args](double v) { args.varpi = v; },
      "residual interference level for imperfect SIC");

  app->add_option("--seed", args.seed,
                  "simulation seed (default from NOMA_SECRECY_SEED)");
  app->add_option("--workers", args.workers,
                  "simulation worker threads (0: all cores)");
  app->add_option("--quad-tol", args.quad_tol,
                  "relative tolerance of the analytic integrals");
}

ns::SystemConfig build_config(const CommonArgs& args) {
  ns::SystemConfig cfg;
  if (!args.config_path.empty()) {
    cfg = ns::load_config_file(args.config_path);
  }
  cfg = ns::apply_overrides(cfg, args.overrides);
  if (args.sic_kind) {
    if (*args.sic_kind == "perfect" || *args.sic_kind == "psic") {
      cfg.sic = ns::SicMode::psic();
    } else if (*args.sic_kind == "imperfect" || *args.sic_kind == "ipsic") {
      cfg.sic = ns::SicMode::ipsic(args.varpi.value_or(1.0));
    } else {
      throw ns::ConfigError({"--sic: expected perfect|psic|imperfect|ipsic"});
    }
  } else if (args.varpi) {
    cfg.sic = *args.varpi == 0.0 ? ns::SicMode::psic()
                                 : ns::SicMode::ipsic(*args.varpi);
  }
  return ns::validated(cfg);
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("NOMA_SECRECY_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 1;
}

ns::Scenario parse_scenario(const std::string& name) {
  auto s = ns::scenario_from_name(name);
  if (!s) {
    throw ns::ConfigError(
        {"scenario: expected external-n|external-m|external-pair|internal, got " +
         name});
  }
  return *s;
}

std::vector<ns::Method> parse_methods(const std::string& csv) {
  std::vector<ns::Method> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == "exact") {
      out.push_back(ns::Method::exact);
    } else if (tok == "asymptotic" || tok == "asym") {
      out.push_back(ns::Method::asymptotic);
    } else if (tok == "mc" || tok == "monte-carlo") {
      out.push_back(ns::Method::monte_carlo);
    } else {
      throw ns::ConfigError({"methods: unknown method: " + tok});
    }
  }
  return out;
}

std::vector<double> parse_rho_range(const std::string& spec) {
  // "lo:hi:step" or comma-separated list
  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    double lo, hi, step;
    char c1, c2;
    std::stringstream ss(spec);
    if (!(ss >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' ||
        step <= 0.0) {
      throw ns::ConfigError({"--rho: expected lo:hi:step, got " + spec});
    }
    for (double r = lo; r <= hi + 1e-9; r += step) out.push_back(r);
  } else {
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  }
  if (out.empty()) throw ns::ConfigError({"--rho: empty grid"});
  return out;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"secrecy outage evaluation for a unified CD/PD-NOMA network"};
  app.require_subcommand(1);

  CommonArgs args;
  args.seed = default_seed();

  // sop
  auto* sop_cmd = app.add_subcommand("sop", "single SOP evaluation");
  add_config_flags(sop_cmd, args);
  std::string scenario_name_arg = "external-n";
  std::string method_arg = "exact";
  std::uint64_t iterations = 20000;
  sop_cmd->add_option("--scenario", scenario_name_arg,
                      "external-n|external-m|external-pair|internal");
  sop_cmd->add_option("--method", method_arg, "exact|asymptotic|mc");
  sop_cmd->add_option("--iterations", iterations, "Monte Carlo iterations");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "SNR sweep to CSV");
  add_config_flags(sweep_cmd, args);
  std::vector<std::string> sweep_scenarios{"external-n"};
  std::string sweep_methods = "exact";
  std::string rho_spec = "0:50:5";
  std::string out_path = "sweep.csv";
  sweep_cmd->add_option("--scenario", sweep_scenarios,
                        "scenarios (repeatable)");
  sweep_cmd->add_option("--methods", sweep_methods,
                        "comma list of exact,asymptotic,mc");
  sweep_cmd->add_option("--rho", rho_spec, "SNR grid, lo:hi:step or list");
  sweep_cmd->add_option("--iterations", iterations, "Monte Carlo iterations");
  sweep_cmd->add_option("--out", out_path, "output CSV path");

  // figure
  auto* fig_cmd = app.add_subcommand("figure", "emit a figure's data recipe");
  add_config_flags(fig_cmd, args);
  std::string figure_name;
  std::string fig_out_dir = ".";
  std::string fig_methods;
  bool fig_list = false;
  fig_cmd->add_option("name", figure_name, "fig2..fig10");
  fig_cmd->add_option("--out", fig_out_dir, "output directory");
  fig_cmd->add_option("--methods", fig_methods, "override recipe methods");
  fig_cmd->add_option("--iterations", iterations, "Monte Carlo iterations");
  fig_cmd->add_flag("--list", fig_list, "list available figure recipes");

  // validate
  auto* val_cmd = app.add_subcommand(
      "validate", "cross-validate closed forms against the simulator");
  add_config_flags(val_cmd, args);
  std::string report_path;
  std::uint64_t val_iterations = 100000;
  double ks_tol = 0.015;
  val_cmd->add_option("--iterations", val_iterations, "samples per test");
  val_cmd->add_option("--out", report_path, "write the JSON report here");
  val_cmd->add_option("--ks-tol", ks_tol,
                      "KS distance tolerance for distribution checks");

  // diversity
  auto* div_cmd = app.add_subcommand("diversity", "secrecy diversity-order fit");
  add_config_flags(div_cmd, args);
  std::string div_scenario = "external-n";
  std::string div_grid = "35:55:5";
  div_cmd->add_option("--scenario", div_scenario, "scenario to fit");
  div_cmd->add_option("--rho-grid", div_grid, "fit grid, lo:hi:step or list");

  CLI11_PARSE(app, argc, argv);

  ns::SopOptions sop_opts;
  sop_opts.rel_tol = args.quad_tol;

  if (sop_cmd->parsed()) {
    const auto cfg = build_config(args);
    const auto scenario = parse_scenario(scenario_name_arg);
    nlohmann::json out;
    if (method_arg == "exact" || method_arg == "asymptotic") {
      const auto est = method_arg == "exact"
                           ? ns::sop_exact(cfg, scenario, sop_opts)
                           : ns::sop_asymptotic(cfg, scenario, sop_opts);
      out = {{"scenario", ns::scenario_name(scenario)},
             {"method", ns::method_name(est.method)},
             {"value", est.value}};
      if (!est.notes.empty()) out["notes"] = est.notes;
    } else if (method_arg == "mc") {
      ns::McOptions mc;
      mc.workers = args.workers;
      const auto est =
          ns::estimate_sop_mc(cfg, scenario, iterations, args.seed, mc);
      out = {{"scenario", ns::scenario_name(scenario)},
             {"method", "mc"},
             {"value", est.value},
             {"ci_half_width", est.ci_half_width},
             {"iterations", est.iterations},
             {"seed", est.seed}};
    } else {
      throw ns::ConfigError({"--method: expected exact|asymptotic|mc"});
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  if (sweep_cmd->parsed()) {
    const auto cfg = build_config(args);
    ns::SweepSpec spec;
    for (const auto& s : sweep_scenarios) {
      spec.scenarios.push_back(parse_scenario(s));
    }
    spec.methods = parse_methods(sweep_methods);
    spec.rho_grid_db = parse_rho_range(rho_spec);
    spec.iterations = iterations;
    spec.seed = args.seed;
    spec.workers = args.workers;
    spec.sop = sop_opts;
    try {
      const auto result = ns::run_sweep(cfg, spec);
      ns::write_csv_file(result, out_path);
      std::cout << "wrote " << result.rows.size() << " rows to " << out_path
                << "\n";
    } catch (const ns::SweepAborted& e) {
      const std::string partial = out_path + ".partial";
      ns::write_csv_file(e.partial_result, partial);
      std::cerr << "sweep aborted: " << e.what() << "\npartial results in "
                << partial << "\n";
      return 2;
    }
    return 0;
  }

  if (fig_cmd->parsed()) {
    if (fig_list) {
      for (const auto& n : ns::figure_recipe_names()) std::cout << n << "\n";
      return 0;
    }
    if (figure_name.empty()) {
      throw ns::ConfigError({"figure: a recipe name is required (see --list)"});
    }
    const auto recipe = ns::figure_recipe(figure_name);
    std::filesystem::create_directories(fig_out_dir);
    ns::SystemConfig base;
    if (!args.config_path.empty()) base = ns::load_config_file(args.config_path);
    base = ns::apply_overrides(base, recipe.base_overrides);
    base = ns::apply_overrides(base, args.overrides);
    for (const auto& variant : recipe.variants) {
      auto cfg = ns::validated(ns::apply_overrides(base, variant.overrides));
      ns::SweepSpec spec;
      spec.scenarios = recipe.scenarios;
      spec.methods = fig_methods.empty() ? recipe.methods
                                         : parse_methods(fig_methods);
      spec.rho_grid_db = recipe.rho_grid_db;
      spec.iterations = iterations;
      spec.seed = args.seed;
      spec.workers = args.workers;
      spec.sop = sop_opts;
      const std::string path = (std::filesystem::path(fig_out_dir) /
                                (recipe.name + "_" + variant.label + ".csv"))
                                   .string();
      try {
        const auto result = ns::run_sweep(cfg, spec);
        ns::write_csv_file(result, path);
        std::cout << "wrote " << path << "\n";
      } catch (const ns::SweepAborted& e) {
        ns::write_csv_file(e.partial_result, path + ".partial");
        std::cerr << "figure variant " << variant.label
                  << " aborted: " << e.what() << "\n";
        return 2;
      }
    }
    return 0;
  }

  if (val_cmd->parsed()) {
    const auto cfg = build_config(args);
    ns::ValidationOptions vopts;
    vopts.workers = args.workers;
    vopts.ks_tolerance = ks_tol;
    const auto report =
        ns::validate_report(cfg, val_iterations, args.seed, vopts);
    std::cout << report.summary;
    if (!report_path.empty()) {
      std::ofstream os(report_path);
      if (!os) throw std::runtime_error("cannot write " + report_path);
      os << report.document.dump(2) << "\n";
      std::cout << "report written to " << report_path << "\n";
    }
    return report.passed ? 0 : 3;
  }

  if (div_cmd->parsed()) {
    const auto cfg = build_config(args);
    const auto fit = ns::diversity_order(cfg, parse_scenario(div_scenario),
                                         parse_rho_range(div_grid), sop_opts);
    nlohmann::json out{{"scenario", div_scenario},
                       {"slope", fit.slope},
                       {"fit_range_db", fit.fit_range_db},
                       {"residual", fit.residual},
                       {"floor_detected", fit.floor_detected},
                       {"slope_reliable", fit.slope_reliable}};
    if (fit.floor_detected) out["floor_value"] = fit.floor_value;
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  return 0;
}

} // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const ns::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const ns::QuadratureError& e) {
    std::cerr << "numerical failure: " << e.what()
              << " (partial value " << e.partial_value << ", bound "
              << e.error_bound << ")\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

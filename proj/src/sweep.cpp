#include "noma_secrecy/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace noma_secrecy {

namespace {

const char* user_label(Scenario s) {
  switch (s) {
    case Scenario::external_n: return "n";
    case Scenario::external_m: return "m";
    case Scenario::external_pair: return "pair";
    case Scenario::internal_eve: return "m_to_n";
  }
  return "?";
}

void sort_rows(SweepResult& res) {
  std::sort(res.rows.begin(), res.rows.end(), [](const auto& a, const auto& b) {
    return std::tie(a.scenario, a.method, a.rho_db) <
           std::tie(b.scenario, b.method, b.rho_db);
  });
}

} // namespace

SweepResult run_sweep(const SystemConfig& base, const SweepSpec& spec) {
  if (spec.rho_grid_db.empty()) {
    throw std::invalid_argument("run_sweep: empty SNR grid");
  }
  if (spec.scenarios.empty() || spec.methods.empty()) {
    throw std::invalid_argument("run_sweep: nothing to evaluate");
  }

  struct Task {
    Scenario scenario;
    Method method;
    double rho_db;
  };
  std::vector<Task> tasks;
  for (Scenario scenario : spec.scenarios) {
    for (Method method : spec.methods) {
      for (double rho_db : spec.rho_grid_db) {
        tasks.push_back({scenario, method, rho_db});
      }
    }
  }

  std::vector<std::optional<SweepRow>> slots(tasks.size());
  std::vector<std::string> errors(tasks.size());

  auto run_task = [&](std::size_t idx) {
    const Task& task = tasks[idx];
    try {
      SystemConfig cfg = base;
      cfg.rho_db = task.rho_db;
      cfg = validated(cfg);
      SweepRow row;
      row.scenario = scenario_name(task.scenario);
      row.scheme = cfg.is_pd() ? "pd" : "cd";
      row.sic = cfg.sic.imperfect() ? "ipsic" : "psic";
      row.user = user_label(task.scenario);
      row.method = method_name(task.method);
      row.rho_db = task.rho_db;
      if (task.method == Method::monte_carlo) {
        McOptions mc = spec.mc;
        mc.workers = spec.workers;
        const auto est = estimate_sop_mc(cfg, task.scenario, spec.iterations,
                                         spec.seed, mc);
        row.value = est.value;
        row.ci_low = est.value - est.ci_half_width;
        row.ci_high = est.value + est.ci_half_width;
        row.iterations = est.iterations;
        row.seed = est.seed;
      } else {
        const auto est = task.method == Method::exact
                             ? sop_exact(cfg, task.scenario, spec.sop)
                             : sop_asymptotic(cfg, task.scenario, spec.sop);
        row.value = est.value;
      }
      slots[idx] = std::move(row);
    } catch (const std::exception& e) {
      std::ostringstream os;
      os << "sweep point (" << scenario_name(task.scenario) << ", "
         << method_name(task.method) << ", " << task.rho_db
         << " dB) failed: " << e.what();
      errors[idx] = os.str();
    }
  };

  // points are independent; fan out over a small pool, results keyed by
  // task index so completion order never matters
  const unsigned pool = std::max(
      1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                             static_cast<unsigned>(tasks.size())));
  if (pool <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) run_task(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < pool; ++w) {
      threads.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= tasks.size()) break;
          run_task(i);
        }
      });
    }
    for (auto& t : threads) t.join();
  }

  SweepResult out;
  std::string first_error;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (slots[i]) {
      out.rows.push_back(std::move(*slots[i]));
    } else if (first_error.empty()) {
      first_error = errors[i];
    }
  }
  sort_rows(out);
  if (!first_error.empty()) {
    throw SweepAborted(first_error, std::move(out));
  }
  return out;
}

void write_csv(const SweepResult& result, std::ostream& os) {
  os << kCsvHeader << "\n";
  os << std::setprecision(17);
  for (const auto& r : result.rows) {
    os << r.scenario << ',' << r.scheme << ',' << r.sic << ',' << r.user << ','
       << r.method << ',' << r.rho_db << ',' << r.value << ',' << r.ci_low
       << ',' << r.ci_high << ',' << r.iterations << ',' << r.seed << "\n";
  }
}

void write_csv_file(const SweepResult& result, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_csv(result, os);
}

SweepResult read_csv(std::istream& is) {
  SweepResult out;
  std::string line;
  if (!std::getline(is, line)) {
    throw std::runtime_error("csv: empty input");
  }
  if (line != kCsvHeader) {
    throw std::runtime_error("csv: unexpected header: " + line);
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 11) {
      throw std::runtime_error("csv: expected 11 fields, got line: " + line);
    }
    SweepRow r;
    r.scenario = fields[0];
    r.scheme = fields[1];
    r.sic = fields[2];
    r.user = fields[3];
    r.method = fields[4];
    r.rho_db = std::stod(fields[5]);
    r.value = std::stod(fields[6]);
    r.ci_low = std::stod(fields[7]);
    r.ci_high = std::stod(fields[8]);
    r.iterations = std::stoull(fields[9]);
    r.seed = std::stoull(fields[10]);
    out.rows.push_back(std::move(r));
  }
  return out;
}

SweepResult read_csv_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open: " + path);
  return read_csv(is);
}

SystemConfig apply_overrides(const SystemConfig& cfg,
                             const nlohmann::json& overrides) {
  nlohmann::json j = config_to_json(cfg);
  for (auto it = overrides.begin(); it != overrides.end(); ++it) {
    j[it.key()] = it.value();
  }
  return config_from_json(j);
}

namespace {

std::vector<double> rho_grid(double lo, double hi, double step) {
  std::vector<double> g;
  for (double r = lo; r <= hi + 1e-9; r += step) g.push_back(r);
  return g;
}

nlohmann::json psic() {
  return nlohmann::json{{"sic", {{"kind", "perfect"}, {"varpi", 0.0}}}};
}

nlohmann::json ipsic(double varpi, double residual_db) {
  return nlohmann::json{
      {"sic", {{"kind", "imperfect"}, {"varpi", varpi}}},
      {"residual_total_db", residual_db},
      {"residual_total_eve_db", residual_db}};
}

nlohmann::json merged(nlohmann::json a, const nlohmann::json& b) {
  for (auto it = b.begin(); it != b.end(); ++it) a[it.key()] = it.value();
  return a;
}

} // namespace

std::vector<std::string> figure_recipe_names() {
  return {"fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9",
          "fig10"};
}

FigureRecipe figure_recipe(const std::string& name) {
  // Shared numeric baseline: K = 2, alpha = 2, Table-style rates and radii,
  // rho_e = 10 dB, lambda_e = 1e-3.
  const nlohmann::json table_base{
      {"K", 2},         {"alpha", 2.0},     {"rho_e_db", 10.0},
      {"lambda_e", 1e-3}, {"R_n", 0.01},    {"R_m", 0.01},
      {"R_mn", 0.01},   {"r_d1", 2.0},      {"r_d2", 10.0},
      {"r_eve", 1000.0}, {"carrier_hz", 1e9}, {"U", 15},
      {"a_n", 0.2},     {"a_m", 0.8}};

  FigureRecipe r;
  r.name = name;
  r.base_overrides = table_base;
  r.rho_grid_db = rho_grid(0, 50, 5);
  r.methods = {Method::exact, Method::asymptotic, Method::monte_carlo};

  if (name == "fig2") {
    r.description = "SOP vs SNR under SIC residual variants, K = 2";
    r.scenarios = {Scenario::external_n, Scenario::external_m};
    r.variants = {{"psic", psic()},
                  {"ipsic_w1_res30", ipsic(1.0, -30.0)},
                  {"ipsic_w1_res20", ipsic(1.0, -20.0)},
                  {"ipsic_w03_res30", ipsic(0.3, -30.0)}};
  } else if (name == "fig3") {
    r.description = "SOP vs SNR for subcarrier counts (CD K = 3 vs PD)";
    r.scenarios = {Scenario::external_n, Scenario::external_m};
    r.variants = {{"k3_psic", merged(psic(), {{"K", 3}})},
                  {"k3_ipsic_w1", merged(ipsic(1.0, -30.0), {{"K", 3}})},
                  {"k1_psic", merged(psic(), {{"K", 1}})},
                  {"k1_ipsic_w1", merged(ipsic(1.0, -30.0), {{"K", 1}})}};
  } else if (name == "fig4") {
    r.description = "SOP vs SNR for target secrecy rates, K = 2, ipSIC w = 1";
    r.scenarios = {Scenario::external_n, Scenario::external_m};
    for (double rate : {0.01, 0.1, 1.0}) {
      std::ostringstream label;
      label << "rate_" << rate;
      r.variants.push_back(
          {label.str(), merged(ipsic(1.0, -30.0),
                               {{"R_n", rate}, {"R_m", rate}, {"R_mn", rate}})});
    }
  } else if (name == "fig5") {
    r.description = "SOP vs SNR for path loss exponents 2, 3, 4";
    r.scenarios = {Scenario::external_n, Scenario::external_m};
    for (double alpha : {2.0, 3.0, 4.0}) {
      std::ostringstream label;
      label << "alpha_" << alpha;
      r.variants.push_back(
          {label.str(), merged(ipsic(1.0, -30.0), {{"alpha", alpha}})});
    }
  } else if (name == "fig6") {
    r.description = "SOP vs SNR for user-zone radii";
    r.scenarios = {Scenario::external_n, Scenario::external_m};
    r.variants = {
        {"r1_1_r2_5", merged(ipsic(1.0, -30.0), {{"r_d1", 1.0}, {"r_d2", 5.0}})},
        {"r1_2_r2_10", merged(ipsic(1.0, -30.0), {{"r_d1", 2.0}, {"r_d2", 10.0}})},
        {"r1_4_r2_20", merged(ipsic(1.0, -30.0), {{"r_d1", 4.0}, {"r_d2", 20.0}})}};
  } else if (name == "fig7") {
    r.description = "pair SOP vs SNR, CD (K = 2) against PD";
    r.scenarios = {Scenario::external_pair};
    r.rho_grid_db = rho_grid(0, 60, 5);
    r.variants = {{"cd_psic", psic()},
                  {"cd_ipsic_w1", ipsic(1.0, -30.0)},
                  {"pd_psic", merged(psic(), {{"K", 1}})},
                  {"pd_ipsic_w1", merged(ipsic(1.0, -30.0), {{"K", 1}})}};
  } else if (name == "fig8") {
    r.description = "pair SOP vs SNR for power allocation factors a_n = theta";
    r.scenarios = {Scenario::external_pair};
    for (double theta : {0.1, 0.2, 0.3, 0.4}) {
      std::ostringstream pl, il;
      pl << "theta_" << theta << "_psic";
      il << "theta_" << theta << "_ipsic_w1";
      const nlohmann::json power{{"a_n", theta}, {"a_m", 1.0 - theta}};
      r.variants.push_back({pl.str(), merged(psic(), power)});
      r.variants.push_back({il.str(), merged(ipsic(1.0, -30.0), power)});
    }
  } else if (name == "fig9") {
    r.description = "internal-wiretap SOP vs SNR under SIC residual variants";
    r.scenarios = {Scenario::internal_eve};
    r.variants = {{"psic", psic()},
                  {"ipsic_w05_res30", ipsic(0.5, -30.0)},
                  {"ipsic_w1_res30", ipsic(1.0, -30.0)},
                  {"ipsic_w1_res20", ipsic(1.0, -20.0)}};
  } else if (name == "fig10") {
    r.description = "internal-wiretap SOP vs SNR for user-zone radii";
    r.scenarios = {Scenario::internal_eve};
    r.variants = {
        {"r1_2", merged(ipsic(1.0, -30.0), {{"r_d1", 2.0}})},
        {"r1_4", merged(ipsic(1.0, -30.0), {{"r_d1", 4.0}})},
        {"r1_8", merged(ipsic(1.0, -30.0), {{"r_d1", 8.0}})}};
  } else {
    throw std::invalid_argument("figure_recipe: unknown figure name: " + name);
  }
  return r;
}

} // namespace noma_secrecy

// Python bindings for the secrecy outage library: configuration, the exact
// and asymptotic evaluators, the Monte Carlo estimator and the sweep runner.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "noma_secrecy/channel_stats.hpp"
#include "noma_secrecy/config.hpp"
#include "noma_secrecy/monte_carlo.hpp"
#include "noma_secrecy/sop_engine.hpp"
#include "noma_secrecy/sweep.hpp"
#include "noma_secrecy/validation.hpp"

namespace py = pybind11;
namespace ns = noma_secrecy;

namespace {

ns::SystemConfig config_from_kwargs(const py::kwargs& kwargs) {
  nlohmann::json j = nlohmann::json::object();
  for (auto item : kwargs) {
    const std::string key = py::str(item.first);
    if (key == "sic") {
      const py::dict d = item.second.cast<py::dict>();
      nlohmann::json s;
      for (auto kv : d) {
        const std::string sk = py::str(kv.first);
        if (sk == "kind") {
          s["kind"] = kv.second.cast<std::string>();
        } else {
          s[sk] = kv.second.cast<double>();
        }
      }
      j["sic"] = s;
    } else if (key == "K" || key == "U" || key == "M") {
      j[key] = item.second.cast<int>();
    } else {
      j[key] = item.second.cast<double>();
    }
  }
  return ns::validated(ns::config_from_json(j));
}

ns::Scenario scenario_arg(const std::string& name) {
  auto s = ns::scenario_from_name(name);
  if (!s) throw py::value_error("unknown scenario: " + name);
  return *s;
}

ns::SinrKind kind_arg(const std::string& name) {
  for (auto k : {ns::SinrKind::gamma_n, ns::SinrKind::gamma_m,
                 ns::SinrKind::eve_n, ns::SinrKind::eve_m,
                 ns::SinrKind::eve_internal}) {
    if (name == ns::sinr_kind_name(k)) return k;
  }
  throw py::value_error("unknown SINR kind: " + name);
}

py::dict estimate_to_dict(const ns::SopEstimate& est) {
  py::dict d;
  d["value"] = est.value;
  d["method"] = ns::method_name(est.method);
  d["ci_half_width"] = est.ci_half_width;
  d["iterations"] = est.iterations;
  if (!est.notes.empty()) d["notes"] = est.notes;
  return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "secrecy outage probabilities for a unified CD/PD-NOMA network";

  py::class_<ns::SystemConfig>(m, "SystemConfig")
      .def_readonly("K", &ns::SystemConfig::K)
      .def_readonly("a_n", &ns::SystemConfig::a_n)
      .def_readonly("a_m", &ns::SystemConfig::a_m)
      .def_readonly("rho_db", &ns::SystemConfig::rho_db)
      .def_readonly("rho_e_db", &ns::SystemConfig::rho_e_db)
      .def_readonly("alpha", &ns::SystemConfig::alpha)
      .def_readonly("lambda_e", &ns::SystemConfig::lambda_e)
      .def_readonly("eta", &ns::SystemConfig::eta)
      .def_readonly("delta", &ns::SystemConfig::delta)
      .def_readonly("omega_i", &ns::SystemConfig::omega_i)
      .def_readonly("omega_ie", &ns::SystemConfig::omega_ie)
      .def_readonly("U", &ns::SystemConfig::U)
      .def("to_json",
           [](const ns::SystemConfig& cfg) {
             return ns::config_to_json(cfg).dump();
           })
      .def("__repr__", [](const ns::SystemConfig& cfg) {
        std::ostringstream os;
        os << "SystemConfig(K=" << cfg.K << ", rho_db=" << cfg.rho_db
           << ", sic=" << (cfg.sic.imperfect() ? "ipsic" : "psic") << ")";
        return os.str();
      });

  m.def("config", &config_from_kwargs,
        "build and validate a configuration from keyword arguments");
  m.def("config_from_json", [](const std::string& text) {
    return ns::validated(ns::config_from_json(nlohmann::json::parse(text)));
  });
  m.def("eta_from_carrier", &ns::eta_from_carrier, py::arg("carrier_hz"));

  m.def(
      "sop_exact",
      [](const ns::SystemConfig& cfg, const std::string& scenario,
         double rel_tol) {
        ns::SopOptions opts;
        opts.rel_tol = rel_tol;
        return estimate_to_dict(ns::sop_exact(cfg, scenario_arg(scenario), opts));
      },
      py::arg("cfg"), py::arg("scenario"), py::arg("rel_tol") = 1e-6);

  m.def(
      "sop_asymptotic",
      [](const ns::SystemConfig& cfg, const std::string& scenario,
         double rel_tol) {
        ns::SopOptions opts;
        opts.rel_tol = rel_tol;
        return estimate_to_dict(
            ns::sop_asymptotic(cfg, scenario_arg(scenario), opts));
      },
      py::arg("cfg"), py::arg("scenario"), py::arg("rel_tol") = 1e-6);

  m.def(
      "estimate_sop_mc",
      [](const ns::SystemConfig& cfg, const std::string& scenario,
         std::uint64_t iterations, std::uint64_t seed, int workers) {
        ns::McOptions mc;
        mc.workers = workers;
        const auto est = ns::estimate_sop_mc(cfg, scenario_arg(scenario),
                                             iterations, seed, mc);
        py::dict d;
        d["value"] = est.value;
        d["ci_half_width"] = est.ci_half_width;
        d["iterations"] = est.iterations;
        d["seed"] = est.seed;
        return d;
      },
      py::arg("cfg"), py::arg("scenario"), py::arg("iterations") = 20000,
      py::arg("seed") = 1, py::arg("workers") = 0);

  m.def(
      "empirical_cdf",
      [](const ns::SystemConfig& cfg, const std::string& kind,
         const std::vector<double>& grid, std::uint64_t iterations,
         std::uint64_t seed, int workers) {
        ns::McOptions mc;
        mc.workers = workers;
        return ns::empirical_cdf(cfg, kind_arg(kind), grid, iterations, seed,
                                 mc);
      },
      py::arg("cfg"), py::arg("kind"), py::arg("grid"),
      py::arg("iterations") = 20000, py::arg("seed") = 1,
      py::arg("workers") = 0);

  m.def(
      "cdf_gamma_n",
      [](const ns::SystemConfig& cfg, double x) {
        return ns::cdf_gamma_n(cfg, x);
      },
      py::arg("cfg"), py::arg("x"));
  m.def(
      "cdf_gamma_m",
      [](const ns::SystemConfig& cfg, double x) {
        return ns::cdf_gamma_m(cfg, x);
      },
      py::arg("cfg"), py::arg("x"));
  m.def(
      "eve_cdf",
      [](const ns::SystemConfig& cfg, const std::string& kind, double x) {
        switch (kind_arg(kind)) {
          case ns::SinrKind::eve_n: return ns::eve_external_n(cfg).cdf(x);
          case ns::SinrKind::eve_m: return ns::eve_external_m(cfg).cdf(x);
          case ns::SinrKind::eve_internal: return ns::eve_internal(cfg).cdf(x);
          default:
            throw py::value_error("eve_cdf: expected an eavesdropper kind");
        }
      },
      py::arg("cfg"), py::arg("kind"), py::arg("x"));
  m.def(
      "eve_pdf",
      [](const ns::SystemConfig& cfg, const std::string& kind, double x) {
        switch (kind_arg(kind)) {
          case ns::SinrKind::eve_n: return ns::eve_external_n(cfg).pdf(x);
          case ns::SinrKind::eve_m: return ns::eve_external_m(cfg).pdf(x);
          case ns::SinrKind::eve_internal: return ns::eve_internal(cfg).pdf(x);
          default:
            throw py::value_error("eve_pdf: expected an eavesdropper kind");
        }
      },
      py::arg("cfg"), py::arg("kind"), py::arg("x"));

  m.def(
      "diversity_order",
      [](const ns::SystemConfig& cfg, const std::string& scenario,
         std::vector<double> grid) {
        const auto fit =
            ns::diversity_order(cfg, scenario_arg(scenario), std::move(grid));
        py::dict d;
        d["slope"] = fit.slope;
        d["residual"] = fit.residual;
        d["floor_detected"] = fit.floor_detected;
        d["floor_value"] = fit.floor_value;
        d["slope_reliable"] = fit.slope_reliable;
        return d;
      },
      py::arg("cfg"), py::arg("scenario"),
      py::arg("grid") = std::vector<double>{});

  m.def(
      "sweep_csv",
      [](const ns::SystemConfig& cfg, const std::vector<std::string>& scenarios,
         const std::vector<double>& rho_grid_db,
         const std::vector<std::string>& methods, std::uint64_t iterations,
         std::uint64_t seed, const std::string& path) {
        ns::SweepSpec spec;
        for (const auto& s : scenarios) spec.scenarios.push_back(scenario_arg(s));
        for (const auto& mname : methods) {
          if (mname == "exact") spec.methods.push_back(ns::Method::exact);
          else if (mname == "asymptotic") spec.methods.push_back(ns::Method::asymptotic);
          else if (mname == "mc") spec.methods.push_back(ns::Method::monte_carlo);
          else throw py::value_error("unknown method: " + mname);
        }
        spec.rho_grid_db = rho_grid_db;
        spec.iterations = iterations;
        spec.seed = seed;
        const auto result = ns::run_sweep(cfg, spec);
        ns::write_csv_file(result, path);
        return result.rows.size();
      },
      py::arg("cfg"), py::arg("scenarios"), py::arg("rho_grid_db"),
      py::arg("methods"), py::arg("iterations"), py::arg("seed"),
      py::arg("path"));

  m.def(
      "validate_report",
      [](const ns::SystemConfig& cfg, std::uint64_t iterations,
         std::uint64_t seed) {
        const auto rep = ns::validate_report(cfg, iterations, seed);
        py::dict d;
        d["passed"] = rep.passed;
        d["flagged"] = rep.flagged;
        d["summary"] = rep.summary;
        d["document"] = rep.document.dump();
        return d;
      },
      py::arg("cfg"), py::arg("iterations") = 20000, py::arg("seed") = 1);
}

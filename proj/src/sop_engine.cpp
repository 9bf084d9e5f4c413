#include "noma_secrecy/sop_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "noma_secrecy/quadrature.hpp"
#include "noma_secrecy/special_functions.hpp"

namespace noma_secrecy {

const char* method_name(Method m) {
  switch (m) {
    case Method::exact: return "exact";
    case Method::asymptotic: return "asymptotic";
    case Method::monte_carlo: return "mc";
  }
  return "?";
}

namespace detail {

double cdf_quantile(const std::function<double(double)>& cdf, double p,
                    double sup_hint) {
  double hi = sup_hint;
  if (!(hi > 0.0)) {
    hi = 1.0;
    while (cdf(hi) < p && hi < 1e18) hi *= 4.0;
  }
  // bisect in log space; the bracket product would underflow for the
  // degenerate distributions concentrated at the origin
  double llo = std::log(1e-300);
  double lhi = std::log(hi);
  for (int it = 0; it < 400 && lhi - llo > 1e-12; ++it) {
    const double lmid = 0.5 * (llo + lhi);
    if (cdf(std::exp(lmid)) < p) {
      llo = lmid;
    } else {
      lhi = lmid;
    }
  }
  return std::exp(0.5 * (llo + lhi));
}

} // namespace detail

namespace {

constexpr double kTailMass = 1e-10; // probability left outside the bands

struct Banded {
  std::vector<double> edges; // quantile band edges, ascending
  double below;              // eavesdropper mass below edges.front()
  double above;              // mass above edges.back() (within the support)
};

Banded quantile_bands(const DistributionHandle& h) {
  const double sup =
      h.support_sup ? *h.support_sup * (1.0 - 1e-14) : 0.0;
  static const double probs[] = {kTailMass, 0.05, 0.25, 0.5,
                                 0.75,      0.95, 1.0 - kTailMass};
  Banded b;
  for (double p : probs) {
    b.edges.push_back(detail::cdf_quantile(h.cdf, p, sup));
  }
  std::sort(b.edges.begin(), b.edges.end());
  b.below = h.cdf(b.edges.front());
  b.above = 1.0 - h.cdf(b.edges.back());
  return b;
}

// integral of pdf * kernel over the bands, the kernel assumed nonnegative
// and nondecreasing. When cap is finite the integral stops there and the
// caller accounts for mass beyond it; when cap is infinite the mass above
// the last quantile enters through a sandwich bound (bounded kernels,
// kernel_limit = kernel's limit at the right end) or an explicit tail
// integral (unbounded kernels).
template <class Kernel>
double integrate_pdf_kernel(const DistributionHandle& h, const Kernel& kernel,
                            const Banded& bands, double cap, double rel_tol,
                            bool kernel_bounded, double kernel_limit) {
  std::vector<double> edges;
  for (double e : bands.edges) {
    edges.push_back(std::min(e, cap));
  }
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  auto f = [&](double x) {
    const double d = h.pdf(x);
    if (d <= 0.0) return 0.0;
    return d * kernel(x);
  };

  double total = h.cdf(edges.front()) * kernel(edges.front());
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    if (edges[k + 1] > edges[k]) {
      total += integrate_finite(f, edges[k], edges[k + 1], rel_tol);
    }
  }
  const double top = edges.back();
  if (std::isfinite(cap)) {
    if (top < cap) total += integrate_finite(f, top, cap, rel_tol);
    return total;
  }
  const double tail_mass = 1.0 - h.cdf(top);
  if (kernel_bounded) {
    total += tail_mass * 0.5 * (kernel(top) + kernel_limit);
  } else if (tail_mass > 0.0) {
    total += integrate_semi_infinite_from(f, top, rel_tol);
  }
  return total;
}

SopEstimate make_deterministic(double raw, Method method) {
  SopEstimate est;
  est.method = method;
  est.value = std::clamp(raw, 0.0, 1.0);
  if (raw > 1.0 || raw < 0.0) {
    std::ostringstream os;
    os << "raw value " << raw << " clamped to [0,1]";
    est.notes = os.str();
  }
  return est;
}

struct Paths {
  bool series;
};

Paths resolve_path(const SystemConfig& cfg, const SopOptions& opts) {
  switch (opts.path) {
    case SopOptions::Path::series: return {true};
    case SopOptions::Path::closed_k1:
      if (cfg.K != 1) {
        throw std::invalid_argument("sop: closed_k1 path requires K = 1");
      }
      return {false};
    case SopOptions::Path::automatic: break;
  }
  return {!cfg.is_pd()};
}

DistributionHandle pick_eve_n(const SystemConfig& cfg, const SopOptions& opts,
                              bool series) {
  EvalPolicy pol{opts.inner_rel_tol};
  return series ? eve_external_n_cd(cfg, pol) : eve_external_n_pd(cfg);
}

DistributionHandle pick_eve_m(const SystemConfig& cfg, bool series) {
  return series ? eve_external_m(cfg) : eve_external_m_pd(cfg);
}

DistributionHandle pick_eve_internal(const SystemConfig& cfg, bool series) {
  return series ? eve_internal_cd(cfg) : eve_internal_pd(cfg);
}

double lu_cdf_n(const SystemConfig& cfg, bool series, double x) {
  return series ? cdf_gamma_n_series(cfg, x) : cdf_gamma_n_closed_k1(cfg, x);
}

double lu_cdf_m(const SystemConfig& cfg, bool series, double x) {
  return series ? cdf_gamma_m_series(cfg, x) : cdf_gamma_m_closed_k1(cfg, x);
}

double sum_b(const SystemConfig& cfg, double radius) {
  const auto nodes = position_nodes(cfg.U, radius, cfg.alpha);
  double s = 0.0;
  for (double b : nodes.b) s += b;
  return s;
}

double exact_external_n(const SystemConfig& cfg, const SopOptions& opts,
                        bool series, double rate) {
  auto eve = pick_eve_n(cfg, opts, series);
  auto bands = quantile_bands(eve);
  auto kernel = [&](double x) {
    return lu_cdf_n(cfg, series, detail::rate_threshold(rate, x));
  };
  const double limit = sum_b(cfg, cfg.r_d1); // CDF saturation level
  return integrate_pdf_kernel(eve, kernel, bands,
                              std::numeric_limits<double>::infinity(),
                              opts.rel_tol, true, limit);
}

double exact_internal(const SystemConfig& cfg, const SopOptions& opts,
                      bool series) {
  auto eve = pick_eve_internal(cfg, series);
  auto bands = quantile_bands(eve);
  auto kernel = [&](double x) {
    return lu_cdf_n(cfg, series, detail::rate_threshold(cfg.R_mn, x));
  };
  const double limit = sum_b(cfg, cfg.r_d1);
  return integrate_pdf_kernel(eve, kernel, bands,
                              std::numeric_limits<double>::infinity(),
                              opts.rel_tol, true, limit);
}

// Outage integral cap for the distant user: past tau the target threshold
// exceeds the SINR ceiling a_m/a_n and outage is certain.
double m_cap(const SystemConfig& cfg) {
  return 1.0 / (std::exp2(cfg.R_m) * cfg.a_n) - 1.0;
}

double exact_external_m(const SystemConfig& cfg, const SopOptions& opts,
                        bool series) {
  const double tau = m_cap(cfg);
  auto eve = pick_eve_m(cfg, series);
  if (tau <= 0.0) {
    // the threshold starts above the ceiling; every drop is in outage
    return opts.m_tail_correction ? 1.0 : 0.0;
  }
  auto bands = quantile_bands(eve);
  auto kernel = [&](double x) {
    return lu_cdf_m(cfg, series, detail::rate_threshold(cfg.R_m, x));
  };
  const double cap = std::min(tau, *eve.support_sup * (1.0 - 1e-14));
  double value = integrate_pdf_kernel(eve, kernel, bands, cap, opts.rel_tol,
                                      true, sum_b(cfg, cfg.r_d2));
  if (opts.m_tail_correction) {
    value += 1.0 - eve.cdf(cap);
  }
  return value;
}

// ---- asymptotic kernels ----------------------------------------------------

// Perfect-SIC high-SNR expansion of the legitimate CDF: sum_u b_u t_u^K / K!.
double asym_lu_kernel_psic(const PositionNodes& nodes, int K, double phi,
                           double threshold) {
  double s = 0.0;
  for (std::size_t u = 0; u < nodes.b.size(); ++u) {
    s += nodes.b[u] * std::pow(threshold * nodes.c[u] / phi, K);
  }
  return s / gamma_fn(K + 1);
}

double asym_external_n(const SystemConfig& cfg, const SopOptions& opts,
                       bool series, double rate) {
  auto eve = pick_eve_n(cfg, opts, series);
  auto bands = quantile_bands(eve);
  if (cfg.sic.imperfect()) {
    auto kernel = [&](double x) {
      return cdf_gamma_n_asymptotic(cfg, detail::rate_threshold(rate, x));
    };
    return integrate_pdf_kernel(eve, kernel, bands,
                                std::numeric_limits<double>::infinity(),
                                opts.rel_tol, true, sum_b(cfg, cfg.r_d1));
  }
  const auto nodes = position_nodes(cfg.U, cfg.r_d1, cfg.alpha);
  const double phi = cfg.eta * cfg.rho * cfg.a_n;
  auto kernel = [&](double x) {
    return asym_lu_kernel_psic(nodes, cfg.K, phi,
                               detail::rate_threshold(rate, x));
  };
  return integrate_pdf_kernel(eve, kernel, bands,
                              std::numeric_limits<double>::infinity(),
                              opts.rel_tol, false, 0.0);
}

double asym_internal(const SystemConfig& cfg, const SopOptions& opts,
                     bool series) {
  auto eve = pick_eve_internal(cfg, series);
  auto bands = quantile_bands(eve);
  if (cfg.sic.imperfect()) {
    auto kernel = [&](double x) {
      return cdf_gamma_n_asymptotic(cfg, detail::rate_threshold(cfg.R_mn, x));
    };
    return integrate_pdf_kernel(eve, kernel, bands,
                                std::numeric_limits<double>::infinity(),
                                opts.rel_tol, true, sum_b(cfg, cfg.r_d1));
  }
  const auto nodes = position_nodes(cfg.U, cfg.r_d1, cfg.alpha);
  const double phi = cfg.eta * cfg.rho * cfg.a_n;
  auto kernel = [&](double x) {
    return asym_lu_kernel_psic(nodes, cfg.K, phi,
                               detail::rate_threshold(cfg.R_mn, x));
  };
  return integrate_pdf_kernel(eve, kernel, bands,
                              std::numeric_limits<double>::infinity(),
                              opts.rel_tol, false, 0.0);
}

double asym_external_m(const SystemConfig& cfg, const SopOptions& opts,
                       bool series) {
  const double tau = m_cap(cfg);
  if (tau <= 0.0) return 1.0;
  auto eve = pick_eve_m(cfg, series);
  auto bands = quantile_bands(eve);
  const auto nodes = position_nodes(cfg.U, cfg.r_d2, cfg.alpha);
  const double ceiling = cfg.a_m / cfg.a_n;
  auto kernel = [&](double x) {
    const double g = detail::rate_threshold(cfg.R_m, x);
    if (g >= ceiling) return 0.0; // masked by the cap; guard regardless
    const double phi = cfg.eta * cfg.rho * (cfg.a_m - cfg.a_n * g);
    return asym_lu_kernel_psic(nodes, cfg.K, phi, g);
  };
  const double cap = std::min(tau, *eve.support_sup * (1.0 - 1e-14));
  double value =
      integrate_pdf_kernel(eve, kernel, bands, cap, opts.rel_tol, false, 0.0);
  if (opts.m_tail_correction) {
    value += 1.0 - eve.cdf(cap); // certain-outage mass, rho-independent
  }
  return value;
}

} // namespace

SopEstimate sop_exact(const SystemConfig& cfg, Scenario scenario,
                      const SopOptions& opts) {
  if (!cfg.validated) {
    throw std::logic_error("sop_exact: configuration must be validated first");
  }
  const auto path = resolve_path(cfg, opts);
  switch (scenario) {
    case Scenario::external_n:
      return make_deterministic(exact_external_n(cfg, opts, path.series, cfg.R_n),
                                Method::exact);
    case Scenario::external_m:
      return make_deterministic(exact_external_m(cfg, opts, path.series),
                                Method::exact);
    case Scenario::internal_eve:
      return make_deterministic(exact_internal(cfg, opts, path.series),
                                Method::exact);
    case Scenario::external_pair: {
      const auto pn = sop_exact(cfg, Scenario::external_n, opts);
      const auto pm = sop_exact(cfg, Scenario::external_m, opts);
      return make_deterministic(
          1.0 - (1.0 - pn.value) * (1.0 - pm.value), Method::exact);
    }
  }
  throw std::logic_error("sop_exact: unknown scenario");
}

SopEstimate sop_asymptotic(const SystemConfig& cfg, Scenario scenario,
                           const SopOptions& opts) {
  if (!cfg.validated) {
    throw std::logic_error("sop_asymptotic: configuration must be validated first");
  }
  const auto path = resolve_path(cfg, opts);
  switch (scenario) {
    case Scenario::external_n:
      return make_deterministic(asym_external_n(cfg, opts, path.series, cfg.R_n),
                                Method::asymptotic);
    case Scenario::external_m:
      return make_deterministic(asym_external_m(cfg, opts, path.series),
                                Method::asymptotic);
    case Scenario::internal_eve:
      return make_deterministic(asym_internal(cfg, opts, path.series),
                                Method::asymptotic);
    case Scenario::external_pair: {
      const auto pn = sop_asymptotic(cfg, Scenario::external_n, opts);
      const auto pm = sop_asymptotic(cfg, Scenario::external_m, opts);
      return make_deterministic(
          1.0 - (1.0 - pn.value) * (1.0 - pm.value), Method::asymptotic);
    }
  }
  throw std::logic_error("sop_asymptotic: unknown scenario");
}

DiversityFit diversity_order(const SystemConfig& cfg, Scenario scenario,
                             std::vector<double> rho_grid_db,
                             const SopOptions& opts) {
  if (rho_grid_db.empty()) {
    rho_grid_db = {35.0, 40.0, 45.0, 50.0, 55.0};
  }
  std::sort(rho_grid_db.begin(), rho_grid_db.end());
  if (rho_grid_db.size() < 5 ||
      rho_grid_db.back() - rho_grid_db.front() < 20.0) {
    throw std::invalid_argument(
        "diversity_order: grid must span >= 20 dB with at least 5 points");
  }

  std::vector<double> logs; // log10 SOP per grid point
  std::vector<double> decades;
  std::vector<double> values;
  for (double rho_db : rho_grid_db) {
    SystemConfig point = cfg;
    point.rho_db = rho_db;
    point = validated(point);
    const double v = sop_exact(point, scenario, opts).value;
    values.push_back(v);
    decades.push_back(rho_db / 10.0);
    logs.push_back(std::log10(std::max(v, 1e-300)));
  }

  DiversityFit fit;
  fit.fit_range_db = {rho_grid_db.front(), rho_grid_db.back()};

  // floor test across the top decade of the grid
  const double top = rho_grid_db.back();
  double vmax = 0.0, vmin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (rho_grid_db[i] >= top - 10.0) {
      vmax = std::max(vmax, values[i]);
      vmin = std::min(vmin, values[i]);
    }
  }
  if (vmax > 0.0 && (vmax - vmin) / vmax < 0.05) {
    fit.floor_detected = true;
    fit.floor_value = values.back();
  }

  // ordinary least squares of log10(SOP) on log10(rho)
  const std::size_t n = decades.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += decades[i];
    sy += logs[i];
    sxx += decades[i] * decades[i];
    sxy += decades[i] * logs[i];
  }
  const double denom = n * sxx - sx * sx;
  const double slope = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = logs[i] - (intercept + slope * decades[i]);
    ss += r * r;
  }
  fit.slope = -slope;
  fit.residual = std::sqrt(ss / n);
  fit.slope_reliable = !fit.floor_detected && fit.residual < 0.05;
  return fit;
}

} // namespace noma_secrecy

#include "noma_secrecy/channel_stats.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "noma_secrecy/quadrature.hpp"
#include "noma_secrecy/special_functions.hpp"

namespace noma_secrecy {

namespace {

constexpr double kExpUnderflow = 745.0; // exp(-x) underflows past this

double factorial(int n) {
  static const std::vector<double> table = [] {
    std::vector<double> t(171);
    t[0] = 1.0;
    for (int i = 1; i <= 170; ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  return table.at(n);
}

double binom(int n, int k) {
  return factorial(n) / (factorial(k) * factorial(n - k));
}

void require_validated(const SystemConfig& cfg) {
  if (!cfg.validated) {
    throw std::logic_error("channel_stats: configuration must be validated first");
  }
}

// Erlang-K tail: e^{-t} sum_{i<K} t^i/i!
double erlang_tail(int K, double t) {
  if (t > kExpUnderflow) return 0.0;
  double sum = 1.0, term = 1.0;
  for (int i = 1; i < K; ++i) {
    term *= t / i;
    sum += term;
  }
  return std::exp(-t) * sum;
}

double series_weight(int i, int j, EveSeriesVariant::Norm norm) {
  return norm == EveSeriesVariant::Norm::outer_factorial
             ? binom(i, j) / factorial(i)
             : binom(i, j) / factorial(j);
}

} // namespace

// ---------------------------------------------------------------------------
// legitimate users
// ---------------------------------------------------------------------------

double cdf_gamma_n_series(const SystemConfig& cfg, double x) {
  require_validated(cfg);
  if (x <= 0.0) return 0.0;
  const auto nodes = position_nodes(cfg.U, cfg.r_d1, cfg.alpha);
  const int K = cfg.K;
  const double ean = cfg.eta * cfg.a_n;
  const double phi = ean * cfg.rho;
  const double w = cfg.varpi();
  double out = 0.0;
  for (int u = 0; u < cfg.U; ++u) {
    const double t = x * nodes.c[u] / phi;
    double inner;
    if (w == 0.0) {
      inner = erlang_tail(K, t);
    } else if (t > kExpUnderflow) {
      inner = 0.0;
    } else {
      const double D = x * w * nodes.c[u] * cfg.omega_i + ean;
      const double ratio = ean / D;           // in (0, 1)
      const double wro = w * cfg.rho * cfg.omega_i;
      double sum = 0.0;
      for (int i = 0; i < K; ++i) {
        for (int j = 0; j <= i; ++j) {
          sum += binom(i, j) / factorial(i) * std::pow(t, i) *
                 std::pow(wro, j) * (gamma_fn(K + j) / gamma_fn(K)) *
                 std::pow(ratio, K + j);
        }
      }
      inner = std::exp(-t) * sum;
    }
    out += nodes.b[u] * (1.0 - inner);
  }
  return out;
}

double cdf_gamma_n_closed_k1(const SystemConfig& cfg, double x) {
  require_validated(cfg);
  if (x <= 0.0) return 0.0;
  const auto nodes = position_nodes(cfg.U, cfg.r_d1, cfg.alpha);
  const double ean = cfg.eta * cfg.a_n;
  const double phi = ean * cfg.rho;
  const double w = cfg.varpi();
  double out = 0.0;
  for (int u = 0; u < cfg.U; ++u) {
    const double t = x * nodes.c[u] / phi;
    const double expt = t > kExpUnderflow ? 0.0 : std::exp(-t);
    if (w == 0.0) {
      out += nodes.b[u] * (1.0 - expt);
    } else {
      const double D = x * w * nodes.c[u] * cfg.omega_i + ean;
      out += nodes.b[u] * (1.0 - ean / D * expt);
    }
  }
  return out;
}

double cdf_gamma_n(const SystemConfig& cfg, double x) {
  return cfg.is_pd() ? cdf_gamma_n_closed_k1(cfg, x) : cdf_gamma_n_series(cfg, x);
}

double cdf_gamma_n_asymptotic(const SystemConfig& cfg, double x) {
  require_validated(cfg);
  if (!cfg.sic.imperfect()) {
    throw std::invalid_argument(
        "cdf_gamma_n_asymptotic: defined for imperfect SIC only (the perfect-"
        "SIC limit has no rho-free floor)");
  }
  if (x <= 0.0) return 0.0;
  const auto nodes = position_nodes(cfg.U, cfg.r_d1, cfg.alpha);
  const int K = cfg.K;
  const double ean = cfg.eta * cfg.a_n;
  const double w = cfg.sic.varpi;
  double out = 0.0;
  for (int u = 0; u < cfg.U; ++u) {
    const double xw = x * w * nodes.c[u] * cfg.omega_i;
    const double q = xw / (xw + ean); // residual-dominated fraction
    double sum = 0.0;
    for (int i = 0; i < K; ++i) {
      sum += binom(K + i - 1, i) * std::pow(q, i);
    }
    out += nodes.b[u] * (1.0 - std::pow(1.0 - q, K) * sum);
  }
  return out;
}

double cdf_gamma_m_series(const SystemConfig& cfg, double x) {
  require_validated(cfg);
  if (x <= 0.0) return 0.0;
  if (x >= cfg.a_m / cfg.a_n) return 1.0;
  const auto nodes = position_nodes(cfg.U, cfg.r_d2, cfg.alpha);
  const double phi = cfg.eta * cfg.rho * (cfg.a_m - cfg.a_n * x);
  double out = 0.0;
  for (int u = 0; u < cfg.U; ++u) {
    out += nodes.b[u] * (1.0 - erlang_tail(cfg.K, x * nodes.c[u] / phi));
  }
  // the position-quadrature sum saturates at sum(b_u) slightly above 1;
  // cap so the hard ceiling at a_m/a_n stays monotone
  return std::min(out, 1.0);
}

double cdf_gamma_m_closed_k1(const SystemConfig& cfg, double x) {
  require_validated(cfg);
  if (x <= 0.0) return 0.0;
  if (x >= cfg.a_m / cfg.a_n) return 1.0;
  const auto nodes = position_nodes(cfg.U, cfg.r_d2, cfg.alpha);
  const double phi = cfg.eta * cfg.rho * (cfg.a_m - cfg.a_n * x);
  double out = 0.0;
  for (int u = 0; u < cfg.U; ++u) {
    const double t = x * nodes.c[u] / phi;
    out += nodes.b[u] * (1.0 - (t > kExpUnderflow ? 0.0 : std::exp(-t)));
  }
  return std::min(out, 1.0);
}

double cdf_gamma_m(const SystemConfig& cfg, double x) {
  return cfg.is_pd() ? cdf_gamma_m_closed_k1(cfg, x) : cdf_gamma_m_series(cfg, x);
}

// ---------------------------------------------------------------------------
// eavesdroppers: interference-free max-field series (shared by the
// perfect-SIC external family, the distant-user family and the internal
// eavesdropper)
// ---------------------------------------------------------------------------

namespace {

// Point-process exponent for a max over marks eta*rho_e*a*Y/(1+d^alpha) with
// Y ~ Gamma(K,1):
//   Psi(x) = delta*pi*lambda * sum_{i<K} sum_{j<=i} w_ij Gamma(j+delta)
//            (phi(x)/x)^{p_ij} e^{-x/phi(x)},   p_ij = j + delta - i + shift,
// where phi(x) = eta*rho_e*a is constant for the external-n/internal family
// and phi(x) = eta*rho_e*(a_m - a_n x) for the distant-user family.
struct SinrScaleConst {
  double phi;
  double value(double) const { return phi; }
};

struct SinrScaleDistant {
  double er;  // eta*rho_e
  double a_n, a_m;
  double value(double x) const { return er * (a_m - a_n * x); }
};

template <class Scale>
double psi_max_field(const Scale& sc, double x, int K, double delta,
                     double lambda, const EveSeriesVariant& var) {
  const double phi = sc.value(x);
  const double xp = x / phi;
  if (xp > kExpUnderflow) return 0.0;
  double sum = 0.0;
  for (int i = 0; i < K; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double p = j + delta - i + var.power_shift;
      sum += series_weight(i, j, var.norm) * gamma_fn(j + delta) *
             std::pow(phi / x, p);
    }
  }
  return delta * std::numbers::pi * lambda * sum * std::exp(-xp);
}

// d/dx of each term for the constant-scale family.
double dpsi_const(double phi, double x, int K, double delta, double lambda,
                  const EveSeriesVariant& var) {
  if (lambda == 0.0) return 0.0;
  const double xp = x / phi;
  if (xp > kExpUnderflow) return 0.0;
  double sum = 0.0;
  for (int i = 0; i < K; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double p = j + delta - i + var.power_shift;
      sum += series_weight(i, j, var.norm) * gamma_fn(j + delta) *
             std::pow(phi, p) *
             (p * std::pow(x, -p - 1.0) + std::pow(x, -p) / phi);
    }
  }
  return -delta * std::numbers::pi * lambda * sum * std::exp(-xp);
}

// d/dx of each term for the distant-user scale phi(x) = er*(a_m - a_n x).
double dpsi_distant(const SinrScaleDistant& sc, double x, int K, double delta,
                    double lambda, const EveSeriesVariant& var) {
  if (lambda == 0.0) return 0.0;
  const double g = sc.a_m - sc.a_n * x;
  const double phi = sc.er * g;
  const double xp = x / phi;
  if (xp > kExpUnderflow) return 0.0;
  double sum = 0.0;
  for (int i = 0; i < K; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double p = j + delta - i + var.power_shift;
      sum += series_weight(i, j, var.norm) * gamma_fn(j + delta) *
             std::pow(sc.er, p) * std::pow(g, p) *
             (p * sc.a_n / (std::pow(x, p) * g) + p * std::pow(x, -p - 1.0) +
              sc.a_m / (sc.er * std::pow(x, p) * g * g));
    }
  }
  return -delta * std::numbers::pi * lambda * sum * std::exp(-xp);
}

DistributionHandle make_max_field_const(const SystemConfig& cfg, double a,
                                        const EveSeriesVariant& var,
                                        std::string provenance) {
  const SinrScaleConst sc{cfg.eta * cfg.rho_e * a};
  const int K = cfg.K;
  const double delta = cfg.delta;
  const double lambda = cfg.lambda_e;
  DistributionHandle h;
  h.provenance = std::move(provenance);
  h.cdf = [=](double x) {
    if (x <= 0.0) return 0.0;
    const double psi = psi_max_field(sc, x, K, delta, lambda, var);
    return psi > kExpUnderflow ? 0.0 : std::exp(-psi);
  };
  h.pdf = [=](double x) {
    if (x <= 0.0) return 0.0;
    const double psi = psi_max_field(sc, x, K, delta, lambda, var);
    if (psi > kExpUnderflow) return 0.0;
    return std::exp(-psi) * (-dpsi_const(sc.phi, x, K, delta, lambda, var));
  };
  return h;
}

} // namespace

// ---------------------------------------------------------------------------
// external eavesdropper, nearby user's message
// ---------------------------------------------------------------------------

namespace {

// Imperfect-SIC code-domain eavesdropper: the point-process exponent keeps
// an explicit radial integral (the residual interference couples to the
// eavesdropper position), evaluated numerically per term.
struct EveNCdIpsic {
  SystemConfig cfg;
  EvalPolicy pol;
  double phi1, phi2, w;

  double coefficient(int i, int j) const {
    const double zeta = std::pow(w * phi2, j) *
                        std::pow(phi1, cfg.K + j - i) *
                        (gamma_fn(cfg.K + j) / gamma_fn(cfg.K));
    return binom(i, j) / factorial(i) * zeta;
  }

  // log-space lower bound on the exponent from the (0,0) term restricted to
  // r^alpha <= phi1/x; detects the deep-left tail where the cdf underflows
  // without touching the radial integrals (whose values overflow there)
  bool exponent_surely_underflows(double x) const {
    if (!(x < phi1)) return false;
    const double log_bound =
        std::log(2.0 * std::numbers::pi * cfg.lambda_e) +
        cfg.K * std::log(phi1) - 2.0 +
        cfg.delta * (std::log(phi1) - std::log(x)) - std::numbers::ln2 -
        cfg.K * std::log(phi1 * (1.0 + 2.0 * w * phi2));
    return log_bound > std::log(2.0 * kExpUnderflow);
  }

  double psi(double x) const {
    if (cfg.lambda_e == 0.0) return 0.0;
    if (exponent_surely_underflows(x)) return 2.0 * kExpUnderflow;
    double sum = 0.0;
    for (int i = 0; i < cfg.K; ++i) {
      for (int j = 0; j <= i; ++j) {
        const int kj = cfg.K + j;
        auto integrand = [&](double r) {
          const double s = 1.0 + std::pow(r, cfg.alpha);
          const double e = x * s / phi1;
          if (e > kExpUnderflow) return 0.0;
          const double D = phi1 + x * w * phi2 * s;
          return std::pow(s, i) * std::pow(D, -kj) * std::exp(-e) * r;
        };
        const double I = integrate_semi_infinite(integrand, pol.inner_rel_tol);
        sum += coefficient(i, j) * std::pow(x, i) * I;
        if (2.0 * std::numbers::pi * cfg.lambda_e * sum > 2.0 * kExpUnderflow) {
          return 2.0 * kExpUnderflow; // cdf underflows; stop refining
        }
      }
    }
    return 2.0 * std::numbers::pi * cfg.lambda_e * sum;
  }

  double dpsi(double x) const {
    if (cfg.lambda_e == 0.0) return 0.0;
    // d/dx of x^i I_ij(x), split into single-signed pieces so the adaptive
    // integrator is never asked to resolve a near-cancelling total
    double sum = 0.0;
    for (int i = 0; i < cfg.K; ++i) {
      for (int j = 0; j <= i; ++j) {
        const int kj = cfg.K + j;
        auto base = [&](double r, int extra_s, int extra_D) {
          const double s = 1.0 + std::pow(r, cfg.alpha);
          const double e = x * s / phi1;
          if (e > kExpUnderflow) return 0.0;
          const double D = phi1 + x * w * phi2 * s;
          return std::pow(s, i + extra_s) * std::pow(D, -kj - extra_D) *
                 std::exp(-e) * r;
        };
        double term = 0.0;
        if (i > 0) {
          term += i * std::pow(x, i - 1) *
                  integrate_semi_infinite(
                      [&](double r) { return base(r, 0, 0); },
                      pol.inner_rel_tol);
        }
        term -= std::pow(x, i) / phi1 *
                integrate_semi_infinite(
                    [&](double r) { return base(r, 1, 0); },
                    pol.inner_rel_tol);
        term -= kj * w * phi2 * std::pow(x, i) *
                integrate_semi_infinite(
                    [&](double r) { return base(r, 1, 1); },
                    pol.inner_rel_tol);
        sum += coefficient(i, j) * term;
      }
    }
    return 2.0 * std::numbers::pi * cfg.lambda_e * sum;
  }
};

} // namespace

DistributionHandle eve_external_n_cd(const SystemConfig& cfg,
                                     const EvalPolicy& pol,
                                     const EveSeriesVariant& var) {
  require_validated(cfg);
  if (!cfg.sic.imperfect()) {
    return make_max_field_const(cfg, cfg.a_n, var, "eve-external-n-cd-psic");
  }
  auto ev = std::make_shared<EveNCdIpsic>(EveNCdIpsic{
      cfg, pol, cfg.eta * cfg.rho_e * cfg.a_n, cfg.rho_e * cfg.omega_ie,
      cfg.sic.varpi});
  DistributionHandle h;
  h.provenance = "eve-external-n-cd-ipsic";
  h.cdf = [ev](double x) {
    if (x <= 0.0) return 0.0;
    const double psi = ev->psi(x);
    return psi > kExpUnderflow ? 0.0 : std::exp(-psi);
  };
  h.pdf = [ev](double x) {
    if (x <= 0.0) return 0.0;
    const double psi = ev->psi(x);
    if (psi > kExpUnderflow) return 0.0;
    return std::exp(-psi) * (-ev->dpsi(x));
  };
  return h;
}

DistributionHandle eve_external_n_pd(const SystemConfig& cfg) {
  require_validated(cfg);
  const double delta = cfg.delta;
  const double phi1 = cfg.eta * cfg.rho_e * cfg.a_n;
  const double lambda = cfg.lambda_e;
  DistributionHandle h;
  if (!cfg.sic.imperfect()) {
    // F(x) = exp(-mu x^{-delta} e^{-x/phi1})
    const double mu =
        delta * std::numbers::pi * lambda * std::pow(phi1, delta) * gamma_fn(delta);
    h.provenance = "eve-external-n-pd-psic";
    h.cdf = [=](double x) {
      if (x <= 0.0) return 0.0;
      const double xp = x / phi1;
      const double q = xp > kExpUnderflow
                           ? 0.0
                           : mu * std::pow(x, -delta) * std::exp(-xp);
      return q > kExpUnderflow ? 0.0 : std::exp(-q);
    };
    h.pdf = [=](double x) {
      if (x <= 0.0 || mu == 0.0) return 0.0;
      const double xp = x / phi1;
      if (xp > kExpUnderflow) return 0.0;
      const double q = mu * std::pow(x, -delta) * std::exp(-xp);
      if (q > kExpUnderflow) return 0.0;
      return mu * std::exp(-q - xp) *
             (1.0 / (phi1 * std::pow(x, delta)) +
              delta / std::pow(x, delta + 1.0));
    };
    return h;
  }
  // Imperfect SIC: exponent through the scaled upper incomplete gamma so the
  // e^{1/w2} prefactor never overflows.
  const double w2 = cfg.sic.varpi * cfg.rho_e * cfg.omega_ie;
  const double C = delta * std::numbers::pi * lambda * phi1 * gamma_fn(delta);
  auto Q = [=](double x) {
    const double xp = x / phi1;
    if (xp > kExpUnderflow) return 0.0;
    const double A = 1.0 / w2 + x / phi1;
    const double g =
        std::pow(phi1 + x * w2, delta - 1.0) * std::pow(x * w2, -delta);
    if (!std::isfinite(g)) return 2.0 * kExpUnderflow;
    return C * g * std::exp(-xp) * upper_incomplete_gamma_scaled(1.0 - delta, A);
  };
  h.provenance = "eve-external-n-pd-ipsic";
  h.cdf = [=](double x) {
    if (x <= 0.0) return 0.0;
    const double q = Q(x);
    return q > kExpUnderflow ? 0.0 : std::exp(-q);
  };
  h.pdf = [=](double x) {
    if (x <= 0.0 || C == 0.0) return 0.0;
    const double q = Q(x);
    if (q > kExpUnderflow) return 0.0;
    const double xp = x / phi1;
    if (xp > kExpUnderflow) return 0.0;
    const double A = 1.0 / w2 + x / phi1;
    const double sgam = upper_incomplete_gamma_scaled(1.0 - delta, A);
    const double gp =
        (delta - 1.0) * w2 * std::pow(phi1 + x * w2, delta - 2.0) *
            std::pow(x * w2, -delta) -
        delta * std::pow(phi1 + x * w2, delta - 1.0) * std::pow(x * w2, -delta) / x;
    const double term =
        -gp * std::exp(-xp) * sgam +
        std::pow(phi1, delta - 1.0) * std::pow(x, -delta) * std::exp(-xp) /
            (phi1 + x * w2);
    return std::exp(-q) * C * term;
  };
  return h;
}

DistributionHandle eve_external_n(const SystemConfig& cfg, const EvalPolicy& pol) {
  require_validated(cfg);
  return cfg.is_pd() ? eve_external_n_pd(cfg) : eve_external_n_cd(cfg, pol);
}

double eve_external_n_cdf_truncated(const SystemConfig& cfg, double x,
                                    double r_max, const EvalPolicy& pol) {
  require_validated(cfg);
  if (x <= 0.0) return 0.0;
  const double phi1 = cfg.eta * cfg.rho_e * cfg.a_n;
  const double w = cfg.varpi();
  const double phi2 = cfg.rho_e * cfg.omega_ie;
  double expo;
  if (w == 0.0) {
    auto integrand = [&](double r) {
      const double y = x * (1.0 + std::pow(r, cfg.alpha)) / phi1;
      return erlang_tail(cfg.K, y) * r;
    };
    expo = 2.0 * std::numbers::pi * cfg.lambda_e *
           integrate_finite(integrand, 0.0, r_max, pol.inner_rel_tol);
  } else {
    double sum = 0.0;
    for (int i = 0; i < cfg.K; ++i) {
      for (int j = 0; j <= i; ++j) {
        const double zeta = std::pow(w * phi2, j) *
                            std::pow(phi1, cfg.K + j - i) *
                            (gamma_fn(cfg.K + j) / gamma_fn(cfg.K));
        const int kj = cfg.K + j;
        auto integrand = [&](double r) {
          const double s = 1.0 + std::pow(r, cfg.alpha);
          const double e = x * s / phi1;
          if (e > kExpUnderflow) return 0.0;
          const double D = phi1 + x * w * phi2 * s;
          return std::pow(s, i) * std::pow(D, -kj) * std::exp(-e) * r;
        };
        sum += binom(i, j) / factorial(i) * zeta * std::pow(x, i) *
               integrate_finite(integrand, 0.0, r_max, pol.inner_rel_tol);
      }
    }
    expo = 2.0 * std::numbers::pi * cfg.lambda_e * sum;
  }
  return expo > kExpUnderflow ? 0.0 : std::exp(-expo);
}

// ---------------------------------------------------------------------------
// external eavesdropper, distant user's message
// ---------------------------------------------------------------------------

DistributionHandle eve_external_m(const SystemConfig& cfg,
                                  const EveSeriesVariant& var) {
  require_validated(cfg);
  const SinrScaleDistant sc{cfg.eta * cfg.rho_e, cfg.a_n, cfg.a_m};
  const int K = cfg.K;
  const double delta = cfg.delta;
  const double lambda = cfg.lambda_e;
  const double sup = cfg.a_m / cfg.a_n;
  DistributionHandle h;
  h.support_sup = sup;
  h.provenance = cfg.is_pd() ? "eve-external-m-pd" : "eve-external-m-cd";
  h.cdf = [=](double x) {
    if (x <= 0.0) return 0.0;
    if (x >= sup) return 1.0;
    const double psi = psi_max_field(sc, x, K, delta, lambda, var);
    return psi > kExpUnderflow ? 0.0 : std::exp(-psi);
  };
  h.pdf = [=](double x) {
    if (x <= 0.0 || x >= sup) return 0.0;
    const double psi = psi_max_field(sc, x, K, delta, lambda, var);
    if (psi > kExpUnderflow) return 0.0;
    return std::exp(-psi) * (-dpsi_distant(sc, x, K, delta, lambda, var));
  };
  return h;
}

DistributionHandle eve_external_m_pd(const SystemConfig& cfg) {
  require_validated(cfg);
  // kappa-form kernel: exp(-kappa (a_m - a_n x)^delta x^{-delta} e^{-x/beta}).
  const double delta = cfg.delta;
  const double er = cfg.eta * cfg.rho_e;
  const double kappa = delta * std::numbers::pi * cfg.lambda_e *
                       std::pow(er, delta) * gamma_fn(delta);
  const double a_n = cfg.a_n, a_m = cfg.a_m;
  const double sup = a_m / a_n;
  DistributionHandle h;
  h.support_sup = sup;
  h.provenance = "eve-external-m-pd";
  auto psi = [=](double x) {
    const double g = a_m - a_n * x;
    const double xp = x / (er * g);
    if (xp > kExpUnderflow) return 0.0;
    return kappa * std::pow(g / x, delta) * std::exp(-xp);
  };
  h.cdf = [=](double x) {
    if (x <= 0.0) return 0.0;
    if (x >= sup) return 1.0;
    const double p = psi(x);
    return p > kExpUnderflow ? 0.0 : std::exp(-p);
  };
  h.pdf = [=](double x) {
    if (x <= 0.0 || x >= sup) return 0.0;
    const double p = psi(x);
    if (p > kExpUnderflow) return 0.0;
    const double g = a_m - a_n * x;
    const double xp = x / (er * g);
    if (xp > kExpUnderflow) return 0.0;
    const double bracket = delta * a_n * std::pow(g, delta - 1.0) / std::pow(x, delta) +
                           delta * std::pow(g, delta) / std::pow(x, delta + 1.0) +
                           a_m * std::pow(g, delta - 2.0) / (er * std::pow(x, delta));
    return std::exp(-p) * kappa * std::exp(-xp) * bracket;
  };
  return h;
}

// ---------------------------------------------------------------------------
// internal eavesdropper
// ---------------------------------------------------------------------------

DistributionHandle eve_internal_cd(const SystemConfig& cfg,
                                   const EveSeriesVariant& var) {
  require_validated(cfg);
  return make_max_field_const(cfg, cfg.a_n, var, "eve-internal-cd");
}

DistributionHandle eve_internal_pd(const SystemConfig& cfg) {
  require_validated(cfg);
  SystemConfig psic_cfg = cfg;
  psic_cfg.sic = SicMode::psic();
  auto h = eve_external_n_pd(psic_cfg);
  h.provenance = "eve-internal-pd";
  return h;
}

DistributionHandle eve_internal(const SystemConfig& cfg) {
  require_validated(cfg);
  return cfg.is_pd() ? eve_internal_pd(cfg) : eve_internal_cd(cfg);
}

} // namespace noma_secrecy

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "noma_secrecy/channel_stats.hpp"
#include "noma_secrecy/quadrature.hpp"
#include "noma_secrecy/sop_engine.hpp"
#include "noma_secrecy/special_functions.hpp"
#include "support/oracles.hpp"
#include "support/table_config.hpp"

using namespace noma_secrecy;

namespace {

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  const double step = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) g[i] = lo * std::exp(i * step);
  return g;
}

// numerical mass under a handle's pdf, banded by its quantiles
double pdf_mass(const DistributionHandle& h) {
  const double sup = h.support_sup ? *h.support_sup * (1.0 - 1e-14) : 0.0;
  std::vector<double> edges;
  for (double p : {1e-9, 0.05, 0.5, 0.95, 1.0 - 1e-9}) {
    edges.push_back(detail::cdf_quantile(h.cdf, p, sup));
  }
  double total = h.cdf(edges.front());
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    if (edges[k + 1] > edges[k]) {
      total += integrate_finite(h.pdf, edges[k], edges[k + 1], 1e-7);
    }
  }
  if (h.support_sup) {
    total += integrate_finite(h.pdf, edges.back(), *h.support_sup, 1e-7);
  } else {
    total += integrate_semi_infinite_from(h.pdf, edges.back(), 1e-7);
  }
  return total;
}

} // namespace

TEST_CASE("nearby-user CDF: zero at the origin for all four dispatch cases") {
  for (int K : {1, 2}) {
    for (auto sic : {SicMode::psic(), SicMode::ipsic(1.0)}) {
      const auto cfg = testcfg::table(K, 30.0, sic);
      CHECK(cdf_gamma_n(cfg, 0.0) == 0.0);
      CHECK(cdf_gamma_n(cfg, -1.0) == 0.0);
    }
  }
}

TEST_CASE("nearby-user CDF saturates at the position-weight sum") {
  const auto cfg = testcfg::table(2, 30.0, SicMode::psic());
  const auto nodes = position_nodes(cfg.U, cfg.r_d1, cfg.alpha);
  double sb = 0.0;
  for (double b : nodes.b) sb += b;
  CHECK(cdf_gamma_n(cfg, 1e6) == doctest::Approx(sb).epsilon(1e-3));
}

TEST_CASE("nearby-user PD pSIC CDF against the direct radial oracle") {
  // oracle: (2/R^2) int_0^R (1 - e^{-x (1+r^alpha)/(eta rho a_n)}) r dr,
  // no Chebyshev nodes involved
  const auto cfg = testcfg::table(1, 20.0, SicMode::psic());
  const double phi = cfg.eta * cfg.rho * cfg.a_n;
  for (double x : {0.03, 0.3, 1.0}) {
    const double expected =
        2.0 / (cfg.r_d1 * cfg.r_d1) *
        oracle::integrate(
            [&](double r) {
              return (1.0 - std::exp(-x * (1.0 + std::pow(r, cfg.alpha)) / phi)) * r;
            },
            0.0, cfg.r_d1, 1e-12);
    CHECK(cdf_gamma_n(cfg, x) == doctest::Approx(expected).epsilon(1e-3));
  }
}

TEST_CASE("distant-user CDF: origin, ceiling, and PD reduction") {
  for (int K : {1, 2}) {
    const auto cfg = testcfg::table(K);
    CHECK(cdf_gamma_m(cfg, 0.0) == 0.0);
    CHECK(cdf_gamma_m(cfg, cfg.a_m / cfg.a_n) == 1.0);
    CHECK(cdf_gamma_m(cfg, cfg.a_m / cfg.a_n + 5.0) == 1.0);
  }
  const auto cfg1 = testcfg::table(1);
  for (double x : {0.01, 0.1, 1.0, 3.9}) {
    CHECK(cdf_gamma_m_series(cfg1, x) ==
          doctest::Approx(cdf_gamma_m_closed_k1(cfg1, x)).epsilon(1e-9));
  }
}

TEST_CASE("series evaluators at K = 1 match the closed forms") {
  const std::vector<double> lu_grid{0.01, 0.1, 1.0, 10.0};
  for (auto sic : {SicMode::psic(), SicMode::ipsic(1.0)}) {
    const auto cfg = testcfg::table(1, 20.0, sic);
    for (double x : lu_grid) {
      CHECK(cdf_gamma_n_series(cfg, x) ==
            doctest::Approx(cdf_gamma_n_closed_k1(cfg, x)).epsilon(1e-9));
    }
    // eavesdropper families live at much smaller SINRs; include that range
    auto cd = eve_external_n_cd(cfg, EvalPolicy{1e-11});
    auto pd = eve_external_n_pd(cfg);
    for (double x : {1e-5, 1e-4, 1e-3, 0.01, 0.1, 1.0, 10.0}) {
      CHECK(cd.cdf(x) == doctest::Approx(pd.cdf(x)).epsilon(1e-8));
    }
  }
  const auto cfg = testcfg::table(1);
  auto em_cd = eve_external_m(cfg);
  auto em_pd = eve_external_m_pd(cfg);
  auto ei_cd = eve_internal_cd(cfg);
  auto ei_pd = eve_internal_pd(cfg);
  for (double x : {1e-5, 1e-4, 1e-3, 0.01, 0.1, 1.0, 3.9}) {
    CHECK(em_cd.cdf(x) == doctest::Approx(em_pd.cdf(x)).epsilon(1e-9));
    CHECK(ei_cd.cdf(x) == doctest::Approx(ei_pd.cdf(x)).epsilon(1e-9));
  }
}

TEST_CASE("fractional path-loss closed forms agree with the radial integral") {
  // alpha = 3 puts the incomplete-gamma branch at s = 1 - delta = 1/3 and
  // must still match the direct point-process integral of the series route
  for (auto sic : {SicMode::psic(), SicMode::ipsic(1.0)}) {
    SystemConfig cfg = testcfg::table(1, 20.0, sic);
    cfg.alpha = 3.0;
    cfg = validated(cfg);
    auto cd = eve_external_n_cd(cfg, EvalPolicy{1e-11});
    auto pd = eve_external_n_pd(cfg);
    for (double x : {1e-5, 1e-4, 1e-3, 0.01}) {
      CHECK(cd.cdf(x) == doctest::Approx(pd.cdf(x)).epsilon(1e-8));
    }
  }
}

TEST_CASE("imperfect-SIC evaluators converge to perfect-SIC as varpi -> 0") {
  for (int K : {1, 2}) {
    const auto tiny = testcfg::table(K, 20.0, SicMode::ipsic(1e-12));
    const auto perfect = testcfg::table(K, 20.0, SicMode::psic());
    for (double x : {0.01, 0.1, 1.0, 10.0}) {
      CHECK(std::abs(cdf_gamma_n(tiny, x) - cdf_gamma_n(perfect, x)) <= 1e-6);
    }
    auto he_tiny = eve_external_n(tiny, EvalPolicy{1e-11});
    auto he_perfect = eve_external_n(perfect);
    for (double x : {1e-5, 1e-4, 1e-3, 0.01}) {
      CHECK(std::abs(he_tiny.cdf(x) - he_perfect.cdf(x)) <= 1e-6);
    }
  }
}

TEST_CASE("empty eavesdropper field degenerates at zero SINR") {
  SystemConfig cfg = testcfg::table();
  cfg.lambda_e = 0.0;
  cfg = validated(cfg);
  for (auto h : {eve_external_n(cfg), eve_external_m(cfg), eve_internal(cfg)}) {
    CHECK(h.cdf(1e-9) == doctest::Approx(1.0));
    CHECK(h.cdf(1.0) == doctest::Approx(1.0));
  }
  SystemConfig icfg = testcfg::table(2, 30.0, SicMode::ipsic(1.0));
  icfg.lambda_e = 0.0;
  icfg = validated(icfg);
  CHECK(eve_external_n(icfg).cdf(0.5) == doctest::Approx(1.0));
}

TEST_CASE("PD perfect-SIC eavesdropper CDF matches its closed kernel") {
  const auto cfg = testcfg::table(1);
  const double phi1 = cfg.eta * cfg.rho_e * cfg.a_n;
  const double mu = cfg.delta * std::numbers::pi * cfg.lambda_e *
                    std::pow(phi1, cfg.delta) * gamma_fn(cfg.delta);
  auto h = eve_external_n_pd(cfg);
  for (double x : {1e-5, 1e-4, 1e-3}) {
    const double expected =
        std::exp(-mu * std::pow(x, -cfg.delta) * std::exp(-x / phi1));
    CHECK(h.cdf(x) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("internal PD pdf equals the closed integrand kernel") {
  const auto cfg = testcfg::table(1);
  const double phi1 = cfg.eta * cfg.rho_e * cfg.a_n;
  const double mu = cfg.delta * std::numbers::pi * cfg.lambda_e *
                    std::pow(phi1, cfg.delta) * gamma_fn(cfg.delta);
  auto h = eve_internal(cfg);
  for (double x : {1e-5, 1e-4, 1e-3}) {
    const double d = cfg.delta;
    const double expected =
        mu *
        std::exp(-mu * std::pow(x, -d) * std::exp(-x / phi1) - x / phi1) *
        (1.0 / (phi1 * std::pow(x, d)) + d / std::pow(x, d + 1.0));
    CHECK(h.pdf(x) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("distant-user eavesdropper: ceiling and normalization") {
  for (int K : {1, 2}) {
    const auto cfg = testcfg::table(K);
    auto h = K == 1 ? eve_external_m_pd(cfg) : eve_external_m(cfg);
    const double sup = cfg.a_m / cfg.a_n;
    CHECK(h.cdf(sup * (1.0 - 1e-12)) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(h.cdf(sup) == 1.0);
    CHECK(h.pdf(sup + 0.1) == 0.0);
    CHECK(pdf_mass(h) == doctest::Approx(1.0).epsilon(1e-3));
  }
}

TEST_CASE("eavesdropper densities integrate to unit mass") {
  const auto psic = testcfg::table(2);
  CHECK(pdf_mass(eve_external_n(psic)) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(pdf_mass(eve_internal(psic)) == doctest::Approx(1.0).epsilon(1e-3));
  const auto ipsic = testcfg::table(2, 30.0, SicMode::ipsic(1.0));
  CHECK(pdf_mass(eve_external_n(ipsic)) == doctest::Approx(1.0).epsilon(1e-3));
  const auto pd_ipsic = testcfg::table(1, 30.0, SicMode::ipsic(1.0));
  CHECK(pdf_mass(eve_external_n(pd_ipsic)) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("every CDF is nondecreasing on a 200-point log grid") {
  auto check_monotone = [](const std::function<double(double)>& cdf,
                           const std::vector<double>& grid) {
    double prev = 0.0;
    for (double x : grid) {
      const double v = cdf(x);
      CHECK(v >= prev - 1e-12);
      prev = v;
    }
  };
  const auto grid = log_grid(1e-7, 10.0, 200);
  for (int K : {1, 2}) {
    for (auto sic : {SicMode::psic(), SicMode::ipsic(1.0)}) {
      const auto cfg = testcfg::table(K, 20.0, sic);
      check_monotone([&](double x) { return cdf_gamma_n(cfg, x); }, grid);
      check_monotone([&](double x) { return cdf_gamma_m(cfg, x); }, grid);
      check_monotone(eve_external_n(cfg).cdf, grid);
      check_monotone(eve_external_m(cfg).cdf, grid);
      check_monotone(eve_internal(cfg).cdf, grid);
    }
  }
}

TEST_CASE("pdf agrees with the numerically differentiated cdf") {
  const auto cfg = testcfg::table(2, 30.0, SicMode::ipsic(1.0));
  struct Named {
    DistributionHandle h;
  };
  for (auto& handle : {eve_external_n(cfg, EvalPolicy{1e-11}),
                       eve_external_m(cfg), eve_internal(cfg)}) {
    const double sup = handle.support_sup ? *handle.support_sup * (1.0 - 1e-12) : 0.0;
    for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const double x = detail::cdf_quantile(handle.cdf, p, sup);
      const double density = handle.pdf(x);
      if (density < 1e-6) continue;
      const double h = 1e-5 * x;
      const double numeric =
          (handle.cdf(x + h) - handle.cdf(x - h)) / (2.0 * h);
      CHECK(density == doctest::Approx(numeric).epsilon(0.01));
    }
  }
}

TEST_CASE("high-SNR floor CDF: limits and large-SNR consistency") {
  const auto cfg = testcfg::table(2, 60.0, SicMode::ipsic(1.0));
  CHECK(cdf_gamma_n_asymptotic(cfg, 0.0) == 0.0);
  // at rho = 1e6 the exact CDF has essentially reached its floor
  for (double x : {1e-3, 1e-2, 1e-1}) {
    const double floor_cdf = cdf_gamma_n_asymptotic(cfg, x);
    const double exact_cdf = cdf_gamma_n(cfg, x);
    CHECK(std::abs(floor_cdf - exact_cdf) / exact_cdf <= 0.01);
  }
  // vanishing residual variance drives the floor to zero
  SystemConfig tiny = cfg;
  tiny.residual_total_db = -120.0;
  tiny = validated(tiny);
  CHECK(cdf_gamma_n_asymptotic(tiny, 0.01) < 1e-4);
  // undefined for perfect SIC
  const auto psic = testcfg::table(2, 60.0, SicMode::psic());
  CHECK_THROWS_AS(cdf_gamma_n_asymptotic(psic, 0.1), std::invalid_argument);
}

TEST_CASE("truncated-field CDF approaches the full-plane form") {
  for (auto sic : {SicMode::psic(), SicMode::ipsic(1.0)}) {
    const auto cfg = testcfg::table(2, 30.0, sic);
    auto h = eve_external_n(cfg);
    for (double x : {1e-6, 1e-4, 1e-3}) {
      const double full = h.cdf(x);
      const double trunc = eve_external_n_cdf_truncated(cfg, x, cfg.r_eve);
      CHECK(std::abs(full - trunc) <= 1e-6);
    }
    // a hard truncation at 30 m removes far eavesdroppers that still matter
    // at small thresholds, so the CDF there must visibly rise
    const double trunc30 = eve_external_n_cdf_truncated(cfg, 1e-6, 30.0);
    CHECK(trunc30 > h.cdf(1e-6) + 1e-2);
  }
}

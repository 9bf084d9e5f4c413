#include "noma_secrecy/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace noma_secrecy {

namespace rng {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {
inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}
} // namespace

Xoshiro256pp Xoshiro256pp::from_key(std::uint64_t seed, std::uint64_t stream,
                                    std::uint64_t leg) {
  Xoshiro256pp g;
  std::uint64_t state = seed;
  state ^= 0xd1b54a32d192ed03ULL * (stream + 1);
  state ^= 0x9e6c63d0876a9a35ULL * (leg + 1);
  for (auto& s : g.s_) s = splitmix64(state);
  return g;
}

std::uint64_t Xoshiro256pp::next() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Xoshiro256pp::uniform01() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Xoshiro256pp::exponential() { return -std::log1p(-uniform01()); }

std::complex<double> Xoshiro256pp::complex_normal() {
  // Box-Muller; each CN(0,1) part has variance 1/2
  double u1 = uniform01();
  while (u1 == 0.0) u1 = uniform01();
  const double u2 = uniform01();
  const double r = std::sqrt(-std::log(u1)); // sqrt(2 * 1/2 * ...)
  const double phi = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(phi), r * std::sin(phi)};
}

std::uint64_t poisson(Xoshiro256pp& gen, double mean) {
  if (mean <= 0.0) return 0;
  if (mean < 10.0) {
    // inversion by sequential search
    const double l = std::exp(-mean);
    std::uint64_t k = 0;
    double p = gen.uniform01();
    double cum = l, term = l;
    while (p > cum) {
      ++k;
      term *= mean / static_cast<double>(k);
      cum += term;
      if (k > 2000) break;
    }
    return k;
  }
  // Hoermann's transformed rejection (PTRD); exact via the lgamma
  // acceptance test.
  const double b = 0.931 + 2.53 * std::sqrt(mean);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mean = std::log(mean);
  for (;;) {
    const double u = gen.uniform01() - 0.5;
    const double v = gen.uniform01();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        k * log_mean - mean - std::lgamma(k + 1.0)) {
      return static_cast<std::uint64_t>(k);
    }
  }
}

} // namespace rng

const char* sinr_kind_name(SinrKind k) {
  switch (k) {
    case SinrKind::gamma_n: return "gamma_n";
    case SinrKind::gamma_m: return "gamma_m";
    case SinrKind::eve_n: return "eve_n";
    case SinrKind::eve_m: return "eve_m";
    case SinrKind::eve_internal: return "eve_internal";
  }
  return "?";
}

namespace {

void require_validated(const SystemConfig& cfg) {
  if (!cfg.validated) {
    throw std::logic_error("monte_carlo: configuration must be validated first");
  }
}

double norm_sq(const std::vector<std::complex<double>>& v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return s;
}

// distance of a point uniform on a disc of the given radius
double uniform_disc_distance(rng::Xoshiro256pp& gen, double radius) {
  return radius * std::sqrt(gen.uniform01());
}

// d^alpha for squared distance d2; alpha = 2 skips the pow
inline double dist_pow(double d2, double alpha) {
  return alpha == 2.0 ? d2 : std::pow(d2, alpha / 2.0);
}

// ||diag(h) g||^2 with all-ones mapping: sum of K unit-mean exponentials,
// drawn as one log of a product of uniforms
double gamma_k_power(rng::Xoshiro256pp& gen, int K) {
  double prod = 1.0;
  for (int k = 0; k < K; ++k) prod *= 1.0 - gen.uniform01();
  // underflow of the product is ~impossible for the K in use; the clamp
  // keeps the draw finite regardless
  return prod > 0.0 ? -std::log(prod) : 700.0 * K;
}

struct FieldMax {
  double best_psic = 0.0;  // max of rho_e * a * X (interference-free form)
  double best_x = 0.0;     // max of X itself
  double best_ipsic = 0.0; // max of rho_e * a * X / (varpi rho_e Z + 1)
};

// Streams the eavesdropper field, tracking the maxima the scenario needs.
FieldMax sweep_eve_field(rng::Xoshiro256pp& gen, const SystemConfig& cfg,
                         double lambda, double radius, bool need_ipsic) {
  FieldMax out;
  const double r2 = radius * radius;
  const double mean = lambda * std::numbers::pi * r2;
  const std::uint64_t count = rng::poisson(gen, mean);
  for (std::uint64_t e = 0; e < count; ++e) {
    const double u = gen.uniform01(); // distance^2 / radius^2
    const double dalpha = dist_pow(r2 * u, cfg.alpha);
    const double y = gamma_k_power(gen, cfg.K);
    const double x = cfg.eta * y / (1.0 + dalpha);
    out.best_x = std::max(out.best_x, x);
    if (need_ipsic) {
      const double z = cfg.omega_ie * gamma_k_power(gen, cfg.K);
      const double g = cfg.rho_e * cfg.a_n * x /
                       (cfg.varpi() * cfg.rho_e * z + 1.0);
      out.best_ipsic = std::max(out.best_ipsic, g);
    }
  }
  return out;
}

double draw_gamma_n(rng::Xoshiro256pp& gen, const SystemConfig& cfg) {
  const double u = gen.uniform01();
  const double y = gamma_k_power(gen, cfg.K);
  const double s = cfg.eta * y / (1.0 + dist_pow(cfg.r_d1 * cfg.r_d1 * u, cfg.alpha));
  if (!cfg.sic.imperfect()) return cfg.rho * cfg.a_n * s;
  const double z = cfg.omega_i * gamma_k_power(gen, cfg.K);
  return cfg.rho * cfg.a_n * s / (cfg.varpi() * cfg.rho * z + 1.0);
}

double draw_gamma_m(rng::Xoshiro256pp& gen, const SystemConfig& cfg) {
  const double u = gen.uniform01();
  const double y = gamma_k_power(gen, cfg.K);
  const double s = cfg.eta * y / (1.0 + dist_pow(cfg.r_d2 * cfg.r_d2 * u, cfg.alpha));
  return cfg.rho * cfg.a_m * s / (cfg.rho * cfg.a_n * s + 1.0);
}

double draw_eve_n(rng::Xoshiro256pp& gen, const SystemConfig& cfg) {
  if (!cfg.sic.imperfect()) {
    const auto fm = sweep_eve_field(gen, cfg, cfg.lambda_e, cfg.r_eve, false);
    return cfg.rho_e * cfg.a_n * fm.best_x;
  }
  const auto fm = sweep_eve_field(gen, cfg, cfg.lambda_e, cfg.r_eve, true);
  return fm.best_ipsic;
}

double draw_eve_m(rng::Xoshiro256pp& gen, const SystemConfig& cfg) {
  const auto fm = sweep_eve_field(gen, cfg, cfg.lambda_e, cfg.r_eve, false);
  if (fm.best_x == 0.0) return 0.0;
  const double rx = cfg.rho_e * fm.best_x;
  return cfg.a_m * rx / (cfg.a_n * rx + 1.0);
}

double draw_eve_internal(rng::Xoshiro256pp& gen, const SystemConfig& cfg,
                         const McOptions& opts) {
  const double lambda = opts.internal_lambda.value_or(cfg.lambda_e);
  const double radius = opts.internal_radius.value_or(cfg.r_eve);
  const auto fm = sweep_eve_field(gen, cfg, lambda, radius, false);
  return cfg.rho_e * cfg.a_n * fm.best_x;
}

double secrecy_rate(double gamma_lu, double gamma_eve) {
  const double c =
      std::log2(1.0 + gamma_lu) - std::log2(1.0 + gamma_eve);
  return std::max(0.0, c);
}

bool outage_external_n(rng::Xoshiro256pp& gen, const SystemConfig& cfg) {
  const double glu = draw_gamma_n(gen, cfg);
  const double gev = draw_eve_n(gen, cfg);
  return secrecy_rate(glu, gev) < cfg.R_n;
}

bool outage_external_m(rng::Xoshiro256pp& gen, const SystemConfig& cfg) {
  const double glu = draw_gamma_m(gen, cfg);
  const double gev = draw_eve_m(gen, cfg);
  return secrecy_rate(glu, gev) < cfg.R_m;
}

bool outage_internal(rng::Xoshiro256pp& gen, const SystemConfig& cfg,
                     const McOptions& opts) {
  const double glu = draw_gamma_n(gen, cfg);
  const double gev = draw_eve_internal(gen, cfg, opts);
  return secrecy_rate(glu, gev) < cfg.R_mn;
}

int resolve_workers(const McOptions& opts) {
  if (opts.workers > 0) return opts.workers;
  const unsigned hc = std::thread::hardware_concurrency();
  return std::max(1, std::min<int>(static_cast<int>(hc), 64));
}

// Partition [0, iterations) into worker chunks and run fn(iteration index)
// with per-iteration counters aggregated as integers.
template <class PerIter>
std::uint64_t parallel_count(std::uint64_t iterations, int workers,
                             const PerIter& fn) {
  if (workers <= 1) {
    std::uint64_t count = 0;
    for (std::uint64_t i = 0; i < iterations; ++i) count += fn(i) ? 1 : 0;
    return count;
  }
  std::vector<std::uint64_t> counts(workers, 0);
  std::vector<std::thread> threads;
  const std::uint64_t chunk = (iterations + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::uint64_t lo = w * chunk;
    const std::uint64_t hi = std::min(iterations, lo + chunk);
    if (lo >= hi) break;
    threads.emplace_back([&, lo, hi, w] {
      std::uint64_t c = 0;
      for (std::uint64_t i = lo; i < hi; ++i) c += fn(i) ? 1 : 0;
      counts[w] = c;
    });
  }
  for (auto& t : threads) t.join();
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  return total;
}

template <class PerIter>
void parallel_fill(std::uint64_t iterations, int workers, const PerIter& fn) {
  if (workers <= 1) {
    for (std::uint64_t i = 0; i < iterations; ++i) fn(i);
    return;
  }
  std::vector<std::thread> threads;
  const std::uint64_t chunk = (iterations + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::uint64_t lo = w * chunk;
    const std::uint64_t hi = std::min(iterations, lo + chunk);
    if (lo >= hi) break;
    threads.emplace_back([&, lo, hi] {
      for (std::uint64_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : threads) t.join();
}

} // namespace

NetworkRealization sample_realization(const SystemConfig& cfg,
                                      rng::Xoshiro256pp& gen) {
  require_validated(cfg);
  NetworkRealization real;
  real.d_n = uniform_disc_distance(gen, cfg.r_d1);
  real.d_m = uniform_disc_distance(gen, cfg.r_d2);
  real.h_n.resize(cfg.K);
  real.h_m.resize(cfg.K);
  for (int k = 0; k < cfg.K; ++k) real.h_n[k] = gen.complex_normal();
  for (int k = 0; k < cfg.K; ++k) real.h_m[k] = gen.complex_normal();
  real.residual_power_n = cfg.omega_i * gamma_k_power(gen, cfg.K);

  const double mean =
      cfg.lambda_e * std::numbers::pi * cfg.r_eve * cfg.r_eve;
  const std::uint64_t count = rng::poisson(gen, mean);
  real.eves.resize(count);
  for (auto& eve : real.eves) {
    eve.distance = uniform_disc_distance(gen, cfg.r_eve);
    eve.h.resize(cfg.K);
    for (int k = 0; k < cfg.K; ++k) eve.h[k] = gen.complex_normal();
    eve.residual_power = cfg.omega_ie * gamma_k_power(gen, cfg.K);
  }
  real.internal_eves = real.eves; // same field by default
  return real;
}

SinrSet compute_sinrs(const NetworkRealization& real, const SystemConfig& cfg) {
  require_validated(cfg);
  SinrSet out;
  const double w = cfg.varpi();

  const double s_n =
      cfg.eta * norm_sq(real.h_n) / (1.0 + std::pow(real.d_n, cfg.alpha));
  out.gamma_n = cfg.rho * cfg.a_n * s_n /
                (w * cfg.rho * real.residual_power_n + 1.0);

  const double s_m =
      cfg.eta * norm_sq(real.h_m) / (1.0 + std::pow(real.d_m, cfg.alpha));
  out.gamma_m = cfg.rho * cfg.a_m * s_m / (cfg.rho * cfg.a_n * s_m + 1.0);

  for (const auto& eve : real.eves) {
    const double x =
        cfg.eta * norm_sq(eve.h) / (1.0 + std::pow(eve.distance, cfg.alpha));
    const double ge_n = cfg.rho_e * cfg.a_n * x /
                        (w * cfg.rho_e * eve.residual_power + 1.0);
    const double rx = cfg.rho_e * x;
    const double ge_m = cfg.a_m * rx / (cfg.a_n * rx + 1.0);
    out.gamma_e_n = std::max(out.gamma_e_n, ge_n);
    out.gamma_e_m = std::max(out.gamma_e_m, ge_m);
  }
  for (const auto& eve : real.internal_eves) {
    const double x =
        cfg.eta * norm_sq(eve.h) / (1.0 + std::pow(eve.distance, cfg.alpha));
    out.gamma_e_mn = std::max(out.gamma_e_mn, cfg.rho_e * cfg.a_n * x);
  }
  return out;
}

MonteCarloEstimate estimate_sop_mc(const SystemConfig& cfg, Scenario scenario,
                                   std::uint64_t iterations, std::uint64_t seed,
                                   const McOptions& opts) {
  require_validated(cfg);
  if (iterations < 1) {
    throw std::invalid_argument("estimate_sop_mc: iterations must be >= 1");
  }
  const int workers = resolve_workers(opts);

  auto per_iter = [&](std::uint64_t i) -> bool {
    switch (scenario) {
      case Scenario::external_n: {
        auto gen = rng::Xoshiro256pp::from_key(seed, i);
        return outage_external_n(gen, cfg);
      }
      case Scenario::external_m: {
        auto gen = rng::Xoshiro256pp::from_key(seed, i);
        return outage_external_m(gen, cfg);
      }
      case Scenario::internal_eve: {
        auto gen = rng::Xoshiro256pp::from_key(seed, i);
        return outage_internal(gen, cfg, opts);
      }
      case Scenario::external_pair: {
        auto gen_n = rng::Xoshiro256pp::from_key(seed, i, 1);
        if (outage_external_n(gen_n, cfg)) return true;
        auto gen_m = rng::Xoshiro256pp::from_key(seed, i, 2);
        return outage_external_m(gen_m, cfg);
      }
    }
    return false;
  };

  const std::uint64_t count = parallel_count(iterations, workers, per_iter);
  MonteCarloEstimate est;
  est.iterations = iterations;
  est.seed = seed;
  est.value = static_cast<double>(count) / static_cast<double>(iterations);
  est.ci_half_width =
      1.96 * std::sqrt(est.value * (1.0 - est.value) /
                       static_cast<double>(iterations));
  return est;
}

namespace {

double draw_kind(std::uint64_t seed, std::uint64_t i, SinrKind which,
                 const SystemConfig& cfg, const McOptions& opts) {
  auto gen = rng::Xoshiro256pp::from_key(seed, i);
  switch (which) {
    case SinrKind::gamma_n: return draw_gamma_n(gen, cfg);
    case SinrKind::gamma_m: return draw_gamma_m(gen, cfg);
    case SinrKind::eve_n: return draw_eve_n(gen, cfg);
    case SinrKind::eve_m: return draw_eve_m(gen, cfg);
    case SinrKind::eve_internal: return draw_eve_internal(gen, cfg, opts);
  }
  return 0.0;
}

} // namespace

std::vector<double> empirical_cdf(const SystemConfig& cfg, SinrKind which,
                                  const std::vector<double>& grid,
                                  std::uint64_t iterations, std::uint64_t seed,
                                  const McOptions& opts) {
  require_validated(cfg);
  if (iterations < 1) {
    throw std::invalid_argument("empirical_cdf: iterations must be >= 1");
  }
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw std::invalid_argument("empirical_cdf: grid must be sorted ascending");
  }
  const int workers = resolve_workers(opts);

  // per-worker histograms over grid cells, merged as integers
  std::vector<std::vector<std::uint64_t>> hists(
      workers, std::vector<std::uint64_t>(grid.size() + 1, 0));
  std::vector<std::thread> threads;
  const std::uint64_t chunk = (iterations + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::uint64_t lo = w * chunk;
    const std::uint64_t hi = std::min(iterations, lo + chunk);
    if (lo >= hi) break;
    threads.emplace_back([&, lo, hi, w] {
      auto& hist = hists[w];
      for (std::uint64_t i = lo; i < hi; ++i) {
        const double v = draw_kind(seed, i, which, cfg, opts);
        const auto it = std::lower_bound(grid.begin(), grid.end(), v);
        hist[static_cast<std::size_t>(it - grid.begin())] += 1;
      }
    });
  }
  for (auto& t : threads) t.join();

  std::vector<std::uint64_t> merged(grid.size() + 1, 0);
  for (const auto& h : hists) {
    for (std::size_t k = 0; k < h.size(); ++k) merged[k] += h[k];
  }
  std::vector<double> out(grid.size(), 0.0);
  std::uint64_t cum = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    cum += merged[k];
    out[k] = static_cast<double>(cum) / static_cast<double>(iterations);
  }
  return out;
}

std::vector<double> sample_sinr(const SystemConfig& cfg, SinrKind which,
                                std::uint64_t iterations, std::uint64_t seed,
                                const McOptions& opts) {
  require_validated(cfg);
  std::vector<double> out(iterations);
  parallel_fill(iterations, resolve_workers(opts), [&](std::uint64_t i) {
    out[i] = draw_kind(seed, i, which, cfg, opts);
  });
  return out;
}

} // namespace noma_secrecy

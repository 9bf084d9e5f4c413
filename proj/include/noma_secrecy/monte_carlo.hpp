#ifndef NOMA_SECRECY_MONTE_CARLO_HPP
#define NOMA_SECRECY_MONTE_CARLO_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "noma_secrecy/config.hpp"

// Ground-truth link-level simulator: samples network drops (user positions,
// Poisson eavesdropper field, Rayleigh fading, residual interference),
// computes every SINR and estimates outage probabilities and empirical CDFs.
//
// Randomness is counter-based: iteration i of a run draws from a generator
// keyed by (seed, i, leg), so results are bitwise identical under any worker
// count or scheduling.

namespace noma_secrecy {

namespace rng {

std::uint64_t splitmix64(std::uint64_t& state);

class Xoshiro256pp {
 public:
  static Xoshiro256pp from_key(std::uint64_t seed, std::uint64_t stream,
                               std::uint64_t leg = 0);
  std::uint64_t next();
  double uniform01();   // [0, 1)
  double exponential(); // mean 1
  std::complex<double> complex_normal(); // CN(0,1)

 private:
  std::uint64_t s_[4];
};

// Exact Poisson sampling; transformed rejection for large means, inversion
// below.
std::uint64_t poisson(Xoshiro256pp& gen, double mean);

} // namespace rng

struct EveRecord {
  double distance;
  std::vector<std::complex<double>> h; // K fading coefficients
  double residual_power;               // ||h_Ie||^2 draw for this eve
};

// One sampled drop of the network.
struct NetworkRealization {
  double d_n = 0.0;
  double d_m = 0.0;
  std::vector<std::complex<double>> h_n; // K coefficients
  std::vector<std::complex<double>> h_m;
  double residual_power_n = 0.0; // ||h_I||^2 at the nearby user
  std::vector<EveRecord> eves;
  std::vector<EveRecord> internal_eves;
};

NetworkRealization sample_realization(const SystemConfig& cfg,
                                      rng::Xoshiro256pp& gen);

struct SinrSet {
  double gamma_n = 0.0;
  double gamma_m = 0.0;
  double gamma_e_n = 0.0;    // most pernicious external eve, nearby message
  double gamma_e_m = 0.0;    // most pernicious external eve, distant message
  double gamma_e_mn = 0.0;   // internal eavesdropper
};

SinrSet compute_sinrs(const NetworkRealization& real, const SystemConfig& cfg);

enum class SinrKind { gamma_n, gamma_m, eve_n, eve_m, eve_internal };
const char* sinr_kind_name(SinrKind k);

struct MonteCarloEstimate {
  double value = 0.0;
  double ci_half_width = 0.0; // 95% normal approximation
  std::uint64_t iterations = 0;
  std::uint64_t seed = 0;
};

struct McOptions {
  int workers = 0; // 0: hardware concurrency
  // Internal-eve field overrides; default to (lambda_e, r_eve).
  std::optional<double> internal_lambda;
  std::optional<double> internal_radius;
};

// Fraction of drops whose secrecy rate falls below the scenario's target.
// The pair scenario draws its two legs from independent substreams, matching
// the product composition of the per-user outage probabilities.
MonteCarloEstimate estimate_sop_mc(const SystemConfig& cfg, Scenario scenario,
                                   std::uint64_t iterations, std::uint64_t seed,
                                   const McOptions& opts = {});

// Per-x fraction of samples <= x on an ascending grid.
std::vector<double> empirical_cdf(const SystemConfig& cfg, SinrKind which,
                                  const std::vector<double>& grid,
                                  std::uint64_t iterations, std::uint64_t seed,
                                  const McOptions& opts = {});

// Raw SINR samples (iteration order), for distribution tests.
std::vector<double> sample_sinr(const SystemConfig& cfg, SinrKind which,
                                std::uint64_t iterations, std::uint64_t seed,
                                const McOptions& opts = {});

} // namespace noma_secrecy

#endif

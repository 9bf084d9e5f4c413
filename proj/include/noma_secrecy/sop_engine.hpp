#ifndef NOMA_SECRECY_SOP_ENGINE_HPP
#define NOMA_SECRECY_SOP_ENGINE_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "noma_secrecy/channel_stats.hpp"
#include "noma_secrecy/config.hpp"

// Exact and asymptotic secrecy outage probabilities, composed from the
// channel statistics as  P = int f_E(x) F_LU(2^R (1+x) - 1) dx,  plus the
// secrecy diversity-order fit.

namespace noma_secrecy {

enum class Method { exact, asymptotic, monte_carlo };
const char* method_name(Method m);

struct SopEstimate {
  double value = 0.0; // clamped to [0, 1] for reporting
  Method method = Method::exact;
  double ci_half_width = 0.0; // 0 for the deterministic methods
  std::uint64_t iterations = 0;
  std::string notes;
};

struct SopOptions {
  double rel_tol = 1e-6;       // outer integral accuracy
  double inner_rel_tol = 1e-9; // radial integrals inside the ipSIC CDF
  // Which algebraic route to evaluate: the subcarrier series (any K) or the
  // K = 1 closed forms. automatic picks by K.
  enum class Path { automatic, series, closed_k1 } path = Path::automatic;
  // The distant-user outage integral runs on [0, tau]; beyond tau outage is
  // certain, and that remaining eavesdropper mass is added back unless the
  // bare capped integral is requested.
  bool m_tail_correction = true;
};

SopEstimate sop_exact(const SystemConfig& cfg, Scenario scenario,
                      const SopOptions& opts = {});
SopEstimate sop_asymptotic(const SystemConfig& cfg, Scenario scenario,
                           const SopOptions& opts = {});

// Least-squares decay of the exact SOP against SNR on a dB grid.
struct DiversityFit {
  double slope = 0.0;                // estimated diversity order
  std::array<double, 2> fit_range_db{};
  double residual = 0.0;             // RMS residual of the log-log fit
  bool floor_detected = false;       // SOP varies < 5% across the top decade
  double floor_value = 0.0;          // SOP at the top of the grid when floored
  bool slope_reliable = false;       // residual below threshold and no floor
};

DiversityFit diversity_order(const SystemConfig& cfg, Scenario scenario,
                             std::vector<double> rho_grid_db = {},
                             const SopOptions& opts = {});

namespace detail {
// p-quantile of a monotone CDF by bisection on a log grid.
double cdf_quantile(const std::function<double(double)>& cdf, double p,
                    double sup_hint);
// Outage threshold 2^R (1+x) - 1.
inline double rate_threshold(double rate, double x) {
  return std::exp2(rate) * (1.0 + x) - 1.0;
}
} // namespace detail

} // namespace noma_secrecy

#endif

#ifndef NOMA_SECRECY_CHANNEL_STATS_HPP
#define NOMA_SECRECY_CHANNEL_STATS_HPP

#include <functional>
#include <optional>
#include <string>

#include "noma_secrecy/config.hpp"

// Closed-form CDFs and PDFs of the legitimate-user and eavesdropper SINR
// random variables. The code-domain evaluators are series over the
// subcarrier index; the power-domain ones are the K = 1 closed forms. Both
// paths are exposed so the structural reductions can be cross-checked.

namespace noma_secrecy {

// An evaluatable CDF/PDF pair for one SINR random variable.
struct DistributionHandle {
  std::function<double(double)> cdf;
  std::function<double(double)> pdf;
  std::optional<double> support_sup; // finite right endpoint when one exists
  std::string provenance;            // which SINR family this evaluates
};

// ---- legitimate users -----------------------------------------------------

// CDF of the nearby user's post-SIC SINR. Dispatches to the K = 1 closed
// form for PD and the subcarrier series for CD; both honor the SIC mode.
double cdf_gamma_n(const SystemConfig& cfg, double x);
double cdf_gamma_n_series(const SystemConfig& cfg, double x); // any K >= 1
double cdf_gamma_n_closed_k1(const SystemConfig& cfg, double x);

// High-SNR limit of cdf_gamma_n under imperfect SIC (the error-floor CDF,
// independent of rho). Throws for perfect SIC, whose limit degenerates.
double cdf_gamma_n_asymptotic(const SystemConfig& cfg, double x);

// CDF of the distant user's SINR; saturates to 1 at x >= a_m/a_n.
double cdf_gamma_m(const SystemConfig& cfg, double x);
double cdf_gamma_m_series(const SystemConfig& cfg, double x);
double cdf_gamma_m_closed_k1(const SystemConfig& cfg, double x);

// ---- eavesdroppers ---------------------------------------------------------

// Alternate algebraic forms of the interference-free eavesdropper tail
// series, retained so the validation report can cross-check them against the
// simulator. The default (outer_factorial, power_shift 0) is the form the
// generating-function derivation produces.
struct EveSeriesVariant {
  enum class Norm { outer_factorial, inner_factorial };
  Norm norm = Norm::outer_factorial;
  int power_shift = 0; // adds this to the (phi/x) exponent of every term
};

struct EvalPolicy {
  double inner_rel_tol = 1e-9; // tolerance of the radial integrals
};

// Most pernicious external eavesdropper attacking the nearby user's message.
DistributionHandle eve_external_n(const SystemConfig& cfg,
                                  const EvalPolicy& pol = {});
DistributionHandle eve_external_n_cd(const SystemConfig& cfg,
                                     const EvalPolicy& pol = {},
                                     const EveSeriesVariant& var = {});
DistributionHandle eve_external_n_pd(const SystemConfig& cfg);

// Most pernicious external eavesdropper attacking the distant user's
// message; support is [0, a_m/a_n).
DistributionHandle eve_external_m(const SystemConfig& cfg,
                                  const EveSeriesVariant& var = {});
DistributionHandle eve_external_m_pd(const SystemConfig& cfg);

// Internal eavesdropper (the distant user wiretapping the nearby user);
// interference-free, so it shares the perfect-SIC external law.
DistributionHandle eve_internal(const SystemConfig& cfg);
DistributionHandle eve_internal_cd(const SystemConfig& cfg,
                                   const EveSeriesVariant& var = {});
DistributionHandle eve_internal_pd(const SystemConfig& cfg);

// Eavesdropper CDF recomputed with the point process truncated to
// radius r_max instead of the whole plane. Used to quantify the gap between
// the analytic field and the disc-bounded simulation.
double eve_external_n_cdf_truncated(const SystemConfig& cfg, double x,
                                    double r_max, const EvalPolicy& pol = {});

} // namespace noma_secrecy

#endif

#ifndef NOMA_SECRECY_VALIDATION_HPP
#define NOMA_SECRECY_VALIDATION_HPP

#include <cstdint>
#include <string>

#include "json.hpp"
#include "noma_secrecy/config.hpp"

// Cross-validation of every closed form against the simulator: KS tests of
// each CDF, density normalization, analytic-vs-simulated outage deltas, the
// capped-integral arbitration for the distant user, the alternate series
// forms of the eavesdropper tail, and the field-truncation gap.

namespace noma_secrecy {

struct ValidationOptions {
  double ks_tolerance = 0.015;
  double sop_abs_tolerance = 0.01; // |exact - mc| <= max(this, 3 CI)
  int workers = 0;
};

struct ValidationReport {
  nlohmann::json document;
  std::string summary; // human-readable rendering
  bool passed = false;
  int flagged = 0;
};

ValidationReport validate_report(const SystemConfig& cfg,
                                 std::uint64_t iterations, std::uint64_t seed,
                                 const ValidationOptions& opts = {});

// Two-sided KS distance between sorted samples and a CDF.
double ks_distance_sorted(const std::vector<double>& sorted_samples,
                          const std::function<double(double)>& cdf);

} // namespace noma_secrecy

#endif

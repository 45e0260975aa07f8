#pragma once

#include <string>
#include <vector>

#include "elastoscat/inverse_phaseless.hpp"

namespace elastoscat::verify {

/// One measured check. `value` is compared against `tolerance` in the
/// direction the check defines; `detail` carries the per-case numbers.
struct CheckResult {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  double seconds = 0.0;
  double time_limit = 0.0;
  std::string detail;
};

CheckResult quadrature_identities();
CheckResult wronskian();
CheckResult kernel_split_recomposition();
CheckResult forward_self_convergence();
CheckResult translation_covariance();
CheckResult jump_relations();
CheckResult frechet_finite_difference();
/// Apple, 1% noise under both noise models, frozen-density iteration.
CheckResult phased_reconstruction();
/// Peanut with reference ball, 1% noise under both noise models.
CheckResult phaseless_reconstruction();
CheckResult reference_ball_necessity();
/// Same seed gives the same noisy samples; a different seed does not.
CheckResult noise_reproducibility();

/// The ten acceptance checks in order.
std::vector<CheckResult> acceptance_suite();
/// Everything except the two reconstructions when `quick` is set.
std::vector<CheckResult> run_all(bool quick);

/// "PASS name value tol time" line.
std::string format(const CheckResult& result);

}  // namespace elastoscat::verify

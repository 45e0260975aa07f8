#pragma once

#include "elastoscat/forward.hpp"

namespace elastoscat {

/// Scaled densities on the obstacle D and on the reference body B.
struct TwoBodyDensities {
  DensitySet d;
  DensitySet b;
};

/// Minimum separation between the two boundaries.
inline constexpr double kMinBodySeparation = 0.1;

/// Coupled (6n_D + 6n_B) system. Rows/columns: the D unknowns first, then B.
/// Self-blocks come from assemble_system; cross-blocks are trapezoid sums of
/// the smooth kernels. Throws GeometryError if the bodies are closer than
/// kMinBodySeparation.
CMat assemble_two_body(const StarlikeCurve& curve_d, const StarlikeCurve& curve_b, const MaterialParams& params,
                       int n_d, int n_b);

/// Cross-block (rows on `target`, columns on `source`), 6n_t x 6n_s.
CMat cross_block(const NodalCurve& target, const NodalCurve& source, const MaterialParams& params);

TwoBodyDensities solve_two_body(const CMat& system, const RhsVectors& rhs_d, const RhsVectors& rhs_b,
                                SolveReport* report = nullptr);

TwoBodyDensities solve_two_body(const StarlikeCurve& curve_d, const StarlikeCurve& curve_b,
                                const MaterialParams& params, const IncidentWave& wave, int n_d, int n_b,
                                SolveReport* report = nullptr);

FarField far_field_sum(const TwoBodyDensities& densities, const StarlikeCurve& curve_d,
                       const StarlikeCurve& curve_b, const MaterialParams& params,
                       const std::vector<double>& obs_angles);

}  // namespace elastoscat

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "elastoscat/inverse_phased.hpp"
#include "elastoscat/multibody.hpp"

namespace elastoscat {

/// |u_inf|^2 samples.
struct PhaselessData {
  std::vector<double> angles;
  RVec values;
};

struct ReferenceBallSpec {
  Vec2 center{0.0, 0.0};
  double radius = 1.0;

  StarlikeCurve curve() const { return make_circle(center, radius); }
};

PhaselessData to_phaseless(const FarField& far_field);

/// |u|^2 (1 + delta eta); delta must be below 1.
PhaselessData add_noise_phaseless(const PhaselessData& data, double delta, std::uint64_t seed,
                                  NoiseModel model = NoiseModel::Uniform);

/// data - |u_D + u_B|^2 at the data angles.
RVec phaseless_residual(const StarlikeCurve& curve_d, const StarlikeCurve& curve_b,
                        const TwoBodyDensities& densities, const MaterialParams& params,
                        const PhaselessData& data);

/// 2 Re(conj(u_D + u_B) B_D) with B_D the Frechet matrix on D alone.
RMat phaseless_columns(const StarlikeCurve& curve_d, const StarlikeCurve& curve_b,
                       const TwoBodyDensities& densities, const MaterialParams& params,
                       const std::vector<double>& obs_angles, int M,
                       const Vec2& phase_direction = Vec2::Zero());

InversionResult run_phaseless(const PhaselessData& data, const ReferenceBallSpec& ball, const MaterialParams& params,
                              const IncidentWave& wave, const InverseConfig& config,
                              const std::optional<StarlikeCurve>& ground_truth = {});

}  // namespace elastoscat

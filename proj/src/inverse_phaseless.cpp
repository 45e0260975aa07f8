#include "elastoscat/inverse_phaseless.hpp"

#include <cmath>
#include <string>

namespace elastoscat {

PhaselessData to_phaseless(const FarField& far_field) {
  return {far_field.angles, far_field.values.cwiseAbs2()};
}

PhaselessData add_noise_phaseless(const PhaselessData& data, double delta, std::uint64_t seed, NoiseModel model) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw InvalidArgument("noise level must be non-negative");
  if (delta >= 1.0) throw InvalidArgument("phaseless noise level must be below 1 to keep |u|^2 non-negative");
  PhaselessData out = data;
  if (delta == 0.0) return out;
  std::mt19937_64 rng(seed);
  for (Eigen::Index i = 0; i < out.values.size(); ++i) out.values(i) *= 1.0 + delta * noise_sample(rng, model);
  return out;
}

RVec phaseless_residual(const StarlikeCurve& curve_d, const StarlikeCurve& curve_b,
                        const TwoBodyDensities& densities, const MaterialParams& params,
                        const PhaselessData& data) {
  const FarField total = far_field_sum(densities, curve_d, curve_b, params, data.angles);
  return data.values - total.values.cwiseAbs2();
}

RMat phaseless_columns(const StarlikeCurve& curve_d, const StarlikeCurve& curve_b,
                       const TwoBodyDensities& densities, const MaterialParams& params,
                       const std::vector<double>& obs_angles, int M, const Vec2& phase_direction) {
  const FarField total = far_field_sum(densities, curve_d, curve_b, params, obs_angles);
  const CMat B = frechet_columns(curve_d, densities.d, params, obs_angles, M, phase_direction);
  return 2.0 * (total.values.conjugate().asDiagonal() * B).real();
}

InversionResult run_phaseless(const PhaselessData& data, const ReferenceBallSpec& ball, const MaterialParams& params,
                              const IncidentWave& wave, const InverseConfig& config,
                              const std::optional<StarlikeCurve>& ground_truth) {
  config.validate();
  params.validate();
  if ((data.values.array() < 0.0).any()) throw InvalidArgument("phaseless data must be non-negative");
  const double data_norm = angular_l2_norm(data.values);
  if (!(data_norm > 0.0)) throw InvalidArgument("phaseless data is identically zero");
  const StarlikeCurve ball_curve = ball.curve();
  const int n_ball = config.n_ball > 0 ? config.n_ball : config.n;

  InversionResult result;
  StarlikeCurve curve = initial_curve(config);
  const Vec2 shift = phase_direction(config, wave);
  for (int k = 0;; ++k) {
    try {
      const TwoBodyDensities dens = solve_two_body(curve, ball_curve, params, wave, config.n, n_ball);
      const RVec w = phaseless_residual(curve, ball_curve, dens, params, data);
      const double lambda = angular_l2_norm(w);

      IterationRecord rec{k, lambda / data_norm, std::nullopt, curve};
      if (ground_truth) rec.err = relative_l2_distance(curve, *ground_truth);
      result.history.push_back(rec);
      if (rec.E <= config.epsilon) {
        result.converged = true;
        break;
      }
      if (k >= config.max_iter) break;

      const RMat A = phaseless_columns(curve, ball_curve, dens, params, data.angles, config.M, shift);
      curve = apply_update(curve, tikhonov_step(A, w, lambda, config.M, config.rho));
    } catch (const GeometryError& e) {
      result.failure = "iteration " + std::to_string(k) + ": " + e.what();
      break;
    } catch (const SingularSystemError& e) {
      result.failure = "iteration " + std::to_string(k) + ": " + e.what();
      break;
    }
  }
  return result;
}

}  // namespace elastoscat

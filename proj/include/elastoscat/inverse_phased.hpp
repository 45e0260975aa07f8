#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <random>
#include <vector>

#include "elastoscat/forward.hpp"

namespace elastoscat {

enum class NoiseModel { Uniform, TruncatedNormal };

/// Settings shared by both reconstruction algorithms.
/// Density model behind the Frechet matrix. FrozenDensity holds theta fixed
/// as a function of the parameter. IncidentPhase also moves theta with the
/// incident phase e^{i kappa d.q}, which is exact for rigid translations.
enum class Linearization { FrozenDensity, IncidentPhase };

struct InverseConfig {
  int M = 6;
  double rho = 0.9;
  double epsilon = 0.2;
  int max_iter = 50;
  Vec2 initial_center{0.0, 0.0};
  double initial_radius = 0.4;
  /// Forward grid used inside the iteration.
  int n = 64;
  /// Grid on the reference ball (phaseless only); 0 means same as n.
  int n_ball = 0;
  Linearization linearization = Linearization::FrozenDensity;

  void validate() const;
};

/// Coefficient vector xi = (dc1, dc2, alpha_0..alpha_M, beta_1..beta_M).
struct BoundaryUpdate {
  Vec2 delta_c{0.0, 0.0};
  std::vector<double> alpha;
  std::vector<double> beta;

  int M() const { return static_cast<int>(beta.size()); }
  RVec to_vector() const;
  static BoundaryUpdate from_vector(const RVec& xi, int M);
};

struct IterationRecord {
  int k = 0;
  double E = 0.0;
  std::optional<double> err;
  StarlikeCurve curve;
};

struct InversionResult {
  std::vector<IterationRecord> history;
  bool converged = false;
  /// Set when the iteration stopped on an error (curve positivity, ball
  /// collision, singular system); the history up to that point is kept.
  std::string failure;
};

/// u (1 + delta (eta1 + i eta2)), eta drawn on [-1, 1].
FarField add_noise_phased(const FarField& data, double delta, std::uint64_t seed,
                          NoiseModel model = NoiseModel::Uniform);

/// One draw on [-1, 1]: uniform, or a standard normal rejected outside [-1, 1].
double noise_sample(std::mt19937_64& rng, NoiseModel model);

/// sqrt((2 pi / N) sum |v_i|^2), the L2 norm over an equispaced angle grid.
double angular_l2_norm(const CVec& v);
double angular_l2_norm(const RVec& v);

/// Curve initial guess: circle with the configured center and radius.
StarlikeCurve initial_curve(const InverseConfig& config);

/// Frechet matrix of the far-field operator with the density theta = phi3 G
/// frozen. Columns ordered (dc1, dc2, alpha_0..alpha_M, beta_1..beta_M).
/// A nonzero `phase_direction` d replaces xhat.q by (xhat - d).q in the
/// integrand (Linearization::IncidentPhase).
CMat frechet_columns(const StarlikeCurve& curve, const DensitySet& densities, const MaterialParams& params,
                     const std::vector<double>& obs_angles, int M, const Vec2& phase_direction = Vec2::Zero());

/// Incident direction for IncidentPhase, zero for FrozenDensity.
Vec2 phase_direction(const InverseConfig& config, const IncidentWave& wave);

/// diag{1, 1, 2 pi, pi (1 + m^2)^2 ..., pi (1 + m^2)^2 ...}.
RVec penalty_diagonal(int M);

BoundaryUpdate tikhonov_step(const CMat& B, const CVec& w, double lambda, int M, double rho);
BoundaryUpdate tikhonov_step(const RMat& A, const RVec& w, double lambda, int M, double rho);

/// Objective sum |B xi - w|^2 + lambda xi^T I xi.
double tikhonov_objective(const CMat& B, const CVec& w, double lambda, const RVec& xi);

/// Curve with center c + dc and radial function r + dr.
StarlikeCurve apply_update(const StarlikeCurve& curve, const BoundaryUpdate& update);

InversionResult run_phased(const FarField& observed, const MaterialParams& params, const IncidentWave& wave,
                           const InverseConfig& config, const std::optional<StarlikeCurve>& ground_truth = {});

}  // namespace elastoscat

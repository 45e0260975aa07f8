#pragma once

#include <functional>
#include <string>
#include <vector>

#include "elastoscat/geometry.hpp"
#include "elastoscat/types.hpp"

namespace elastoscat {

/// Lamé parameters, densities and frequency of the fluid-solid configuration.
/// Defaults are the values used throughout the reference experiments, with
/// c = rho_a = rho_e = 1.
struct MaterialParams {
  double lambda = 3.88;
  double mu = 2.56;
  double rho_e = 1.0;
  double rho_a = 1.0;
  double omega = 0.7 * kPi;
  double c = 1.0;

  void validate() const;
  double kappa_p() const;
  double kappa_s() const;
  double kappa_a() const;
  /// omega^2 rho_a, the factor in the normal-displacement transmission condition.
  double fluid_coupling() const { return omega * omega * rho_a; }
};

struct IncidentWave {
  double theta = 0.0;
  Vec2 direction() const;
};

/// Scaled densities phi_l / G at the 2n grid nodes.
struct DensitySet {
  CVec phi1;
  CVec phi2;
  CVec phi3;

  int n() const { return static_cast<int>(phi1.size()) / 2; }
  CVec stacked() const;
  static DensitySet from_stacked(const CVec& x);
};

/// Complex far-field samples at observation angles.
struct FarField {
  std::vector<double> angles;
  CVec values;
  cplx gamma_a;
};

/// gamma_a = e^{i pi/4} / sqrt(8 pi kappa).
cplx far_field_constant(double kappa);

/// Observation angles pi*i/m, i = 0..2m-1.
std::vector<double> observation_angles(int count);

/// Curve jets sampled at the nodes of a grid.
struct NodalCurve {
  NodeGrid grid;
  std::vector<CurveJet> jets;

  NodalCurve(const StarlikeCurve& curve, int n);
  int size() const { return grid.size(); }
};

/// Discrete parametrized operators on one curve for one wavenumber. Applied to
/// nodal values of theta = G g they give S[theta](s_i), K[theta](s_i),
/// H[theta](s_i); the 1/G(t) factor of K and H is included.
struct BoundaryOperators {
  double kappa = 0.0;
  CMat S;
  CMat K;
  CMat H;
};

BoundaryOperators boundary_operators(const NodalCurve& nodal, double kappa);

/// Right-hand sides w_j = 2 f_j at the nodes.
struct RhsVectors {
  CVec w1;
  CVec w2;
  CVec w3;

  CVec stacked() const;
};

RhsVectors rhs_plane_wave(const StarlikeCurve& curve, const MaterialParams& params, const IncidentWave& wave,
                          const NodeGrid& grid);

/// The 6n x 6n Nystrom matrix. Rows: equation 1, 2, 3 at the nodes; columns:
/// scaled densities 1, 2, 3.
CMat assemble_system(const StarlikeCurve& curve, const MaterialParams& params, const NodeGrid& grid);
CMat assemble_system(const NodalCurve& nodal, const MaterialParams& params);

struct SolveReport {
  double relative_residual = 0.0;
  double condition_estimate = 0.0;
  bool ill_conditioned = false;
};

/// Dense LU solve with partial pivoting. Throws SingularSystemError on a
/// singular matrix; emits a warning when the condition estimate exceeds 1e12.
CVec solve_dense(const CMat& system, const CVec& rhs, SolveReport* report = nullptr);
DensitySet solve_densities(const CMat& system, const RhsVectors& rhs, SolveReport* report = nullptr);

/// Assemble + solve for one obstacle.
DensitySet solve_forward(const StarlikeCurve& curve, const MaterialParams& params, const IncidentWave& wave,
                         int n, SolveReport* report = nullptr);

FarField far_field(const DensitySet& densities, const StarlikeCurve& curve, const MaterialParams& params,
                   const std::vector<double>& obs_angles);

/// Potentials and the elastic displacement U = grad phi + curl psi at a point.
struct NearField {
  cplx phi;
  cplx psi;
  cplx us;
  Eigen::Vector2cd grad_phi;
  Eigen::Vector2cd grad_psi;
  Eigen::Vector2cd grad_us;
  Eigen::Vector2cd U;
};

/// Minimum distance a near-field point must keep from the boundary.
inline constexpr double kNearFieldMinDistance = 1e-3;

/// Evaluates the single-layer representations at x. The densities are
/// trigonometrically interpolated to a grid fine enough for the distance of x
/// to the boundary. Throws InvalidArgument closer than kNearFieldMinDistance.
NearField near_field(const DensitySet& densities, const StarlikeCurve& curve, const MaterialParams& params,
                     const Vec2& x);

/// Maximum-norm residuals of the three transmission conditions.
struct ResidualReport {
  /// At the midpoints between solve nodes (re-discretized on the doubled grid).
  double offset[3] = {0.0, 0.0, 0.0};
  /// At the solve nodes themselves.
  double nodal[3] = {0.0, 0.0, 0.0};
};

ResidualReport boundary_residual(const DensitySet& densities, const StarlikeCurve& curve,
                                 const MaterialParams& params, const IncidentWave& wave);

/// One-sided limit convergence of one layer-potential derivative.
struct JumpSeries {
  std::string name;
  std::vector<double> h;
  std::vector<double> error_exterior;
  std::vector<double> error_interior;
  /// |(F(x+h nu) - F(x-h nu)) - jump| at the smallest h.
  double jump_error = 0.0;
  bool monotone() const;
};

struct JumpReport {
  std::vector<JumpSeries> series;
  bool all_monotone() const;
};

/// Compares single-layer gradient, curl and their normal derivatives at
/// x +- h nu(x) against the boundary limit formulas evaluated with the
/// discrete singular operators. `density` is g(p(s)) as a function of the
/// parameter; the target is grid node `node` of a 2n grid.
JumpReport jump_check(const StarlikeCurve& curve, double kappa, const std::function<double(double)>& density,
                      const std::vector<double>& h_sequence, int n = 128, int node = 40);

/// Warning sink for solver diagnostics. Defaults to stderr; an empty handler
/// restores the default.
using WarningHandler = std::function<void(const std::string&)>;
void set_warning_handler(WarningHandler handler);
void emit_warning(const std::string& message);

}  // namespace elastoscat

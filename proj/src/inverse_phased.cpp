#include "elastoscat/inverse_phased.hpp"

#include <cmath>
#include <string>

namespace elastoscat {

void InverseConfig::validate() const {
  if (M < 1) throw InvalidArgument("truncation M must be >= 1");
  if (!(rho > 0.0 && rho <= 1.0)) throw InvalidArgument("step scaling rho must lie in (0, 1]");
  if (!(epsilon > 0.0)) throw InvalidArgument("stopping tolerance epsilon must be positive");
  if (max_iter < 1) throw InvalidArgument("max_iter must be >= 1");
  if (!(initial_radius > 0.0)) throw InvalidArgument("initial radius must be positive");
  if (n < 8) throw InvalidArgument("inner forward grid n must be >= 8");
  if (n_ball < 0) throw InvalidArgument("ball grid must be non-negative");
}

RVec BoundaryUpdate::to_vector() const {
  const int m = M();
  RVec xi(2 * m + 3);
  xi(0) = delta_c.x();
  xi(1) = delta_c.y();
  for (int k = 0; k <= m; ++k) xi(2 + k) = alpha[static_cast<std::size_t>(k)];
  for (int k = 1; k <= m; ++k) xi(2 + m + k) = beta[static_cast<std::size_t>(k - 1)];
  return xi;
}

BoundaryUpdate BoundaryUpdate::from_vector(const RVec& xi, int M) {
  if (xi.size() != 2 * M + 3) throw InvalidArgument("coefficient vector must have length 2M+3");
  BoundaryUpdate u;
  u.delta_c = {xi(0), xi(1)};
  u.alpha.resize(static_cast<std::size_t>(M + 1));
  u.beta.resize(static_cast<std::size_t>(M));
  for (int k = 0; k <= M; ++k) u.alpha[static_cast<std::size_t>(k)] = xi(2 + k);
  for (int k = 1; k <= M; ++k) u.beta[static_cast<std::size_t>(k - 1)] = xi(2 + M + k);
  return u;
}

double noise_sample(std::mt19937_64& rng, NoiseModel model) {
  if (model == NoiseModel::Uniform) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    return u(rng);
  }
  std::normal_distribution<double> g(0.0, 1.0);
  for (;;) {
    const double v = g(rng);
    if (std::abs(v) <= 1.0) return v;
  }
}

FarField add_noise_phased(const FarField& data, double delta, std::uint64_t seed, NoiseModel model) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw InvalidArgument("noise level must be non-negative");
  FarField out = data;
  if (delta == 0.0) return out;
  std::mt19937_64 rng(seed);
  for (Eigen::Index i = 0; i < out.values.size(); ++i) {
    const double e1 = noise_sample(rng, model);
    const double e2 = noise_sample(rng, model);
    out.values(i) *= 1.0 + delta * cplx(e1, e2);
  }
  return out;
}

double angular_l2_norm(const CVec& v) {
  if (v.size() == 0) return 0.0;
  return std::sqrt(2.0 * kPi / static_cast<double>(v.size()) * v.squaredNorm());
}

double angular_l2_norm(const RVec& v) {
  if (v.size() == 0) return 0.0;
  return std::sqrt(2.0 * kPi / static_cast<double>(v.size()) * v.squaredNorm());
}

StarlikeCurve initial_curve(const InverseConfig& config) {
  return make_circle(config.initial_center, config.initial_radius);
}

CMat frechet_columns(const StarlikeCurve& curve, const DensitySet& densities, const MaterialParams& params,
                     const std::vector<double>& obs_angles, int M, const Vec2& phase_direction) {
  if (M < 1) throw InvalidArgument("truncation M must be >= 1");
  const int n = densities.n();
  const NodeGrid grid(n);
  const double ka = params.kappa_a();
  const cplx pre = -kI * ka * far_field_constant(ka) * (kPi / n);
  const Eigen::Index rows = static_cast<Eigen::Index>(obs_angles.size());
  CMat B = CMat::Zero(rows, 2 * M + 3);

  std::vector<Vec2> pts;
  std::vector<cplx> theta;
  for (int j = 0; j < grid.size(); ++j) {
    const CurveJet jt = curve.jet(grid[j]);
    pts.push_back(jt.p);
    theta.push_back(densities.phi3(j) * jt.G * jt.G);
  }
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double t = obs_angles[static_cast<std::size_t>(i)];
    const Vec2 xh(std::cos(t), std::sin(t));
    const Vec2 v = xh - phase_direction;
    for (int j = 0; j < grid.size(); ++j) {
      const double s = grid[j];
      const cplx e = pre * std::exp(-kI * ka * xh.dot(pts[static_cast<std::size_t>(j)])) *
                     theta[static_cast<std::size_t>(j)];
      const double ct = v.x() * std::cos(s) + v.y() * std::sin(s);
      B(i, 0) += e * v.x();
      B(i, 1) += e * v.y();
      for (int m = 0; m <= M; ++m) B(i, 2 + m) += e * ct * std::cos(m * s);
      for (int m = 1; m <= M; ++m) B(i, 2 + M + m) += e * ct * std::sin(m * s);
    }
  }
  return B;
}

Vec2 phase_direction(const InverseConfig& config, const IncidentWave& wave) {
  return config.linearization == Linearization::IncidentPhase ? wave.direction() : Vec2::Zero();
}

RVec penalty_diagonal(int M) {
  RVec d(2 * M + 3);
  d(0) = 1.0;
  d(1) = 1.0;
  d(2) = 2.0 * kPi;
  for (int m = 1; m <= M; ++m) {
    const double v = kPi * std::pow(1.0 + m * m, 2);
    d(2 + m) = v;
    d(2 + M + m) = v;
  }
  return d;
}

namespace {

BoundaryUpdate solve_normal(RMat N, const RVec& rhs, double lambda, int M, double rho) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InvalidArgument("regularization parameter must be >= 0");
  N.diagonal() += lambda * penalty_diagonal(M);
  const Eigen::LDLT<RMat> ldlt(N);
  if (ldlt.info() != Eigen::Success || ldlt.rcond() < 1e-15) {
    const Eigen::FullPivLU<RMat> lu(N);
    if (!lu.isInvertible()) throw SingularSystemError("regularized normal matrix is singular");
    return BoundaryUpdate::from_vector(rho * lu.solve(rhs), M);
  }
  return BoundaryUpdate::from_vector(rho * ldlt.solve(rhs), M);
}

}  // namespace

BoundaryUpdate tikhonov_step(const CMat& B, const CVec& w, double lambda, int M, double rho) {
  if (B.cols() != 2 * M + 3 || B.rows() != w.size()) throw InvalidArgument("Frechet matrix shape mismatch");
  const RMat N = (B.adjoint() * B).real();
  const RVec rhs = (B.adjoint() * w).real();
  return solve_normal(N, rhs, lambda, M, rho);
}

BoundaryUpdate tikhonov_step(const RMat& A, const RVec& w, double lambda, int M, double rho) {
  if (A.cols() != 2 * M + 3 || A.rows() != w.size()) throw InvalidArgument("linearized matrix shape mismatch");
  return solve_normal(A.transpose() * A, A.transpose() * w, lambda, M, rho);
}

double tikhonov_objective(const CMat& B, const CVec& w, double lambda, const RVec& xi) {
  const int M = static_cast<int>(xi.size() - 3) / 2;
  const RVec I = penalty_diagonal(M);
  return (B * xi.cast<cplx>() - w).squaredNorm() + lambda * xi.dot(I.cwiseProduct(xi));
}

StarlikeCurve apply_update(const StarlikeCurve& curve, const BoundaryUpdate& update) {
  return StarlikeCurve(curve.center() + update.delta_c, curve.radial().plus(update.alpha, update.beta));
}

InversionResult run_phased(const FarField& observed, const MaterialParams& params, const IncidentWave& wave,
                           const InverseConfig& config, const std::optional<StarlikeCurve>& ground_truth) {
  config.validate();
  params.validate();
  const double data_norm = angular_l2_norm(observed.values);
  if (!(data_norm > 0.0)) throw InvalidArgument("observed far field is identically zero");

  InversionResult result;
  StarlikeCurve curve = initial_curve(config);
  const Vec2 shift = phase_direction(config, wave);
  for (int k = 0;; ++k) {
    try {
      const DensitySet dens = solve_forward(curve, params, wave, config.n);
      const CVec w = observed.values - far_field(dens, curve, params, observed.angles).values;
      const double lambda = angular_l2_norm(w);

      IterationRecord rec{k, lambda / data_norm, std::nullopt, curve};
      if (ground_truth) rec.err = relative_l2_distance(curve, *ground_truth);
      result.history.push_back(rec);
      if (rec.E <= config.epsilon) {
        result.converged = true;
        break;
      }
      if (k >= config.max_iter) break;

      const CMat B = frechet_columns(curve, dens, params, observed.angles, config.M, shift);
      curve = apply_update(curve, tikhonov_step(B, w, lambda, config.M, config.rho));
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

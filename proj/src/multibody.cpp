#include "elastoscat/multibody.hpp"

#include <sstream>

#include "elastoscat/kernels.hpp"

namespace elastoscat {

CMat cross_block(const NodalCurve& target, const NodalCurve& source, const MaterialParams& params) {
  params.validate();
  const int Nt = target.size();
  const int Ns = source.size();
  const double mu = params.mu;
  const double lm = params.lambda + params.mu;
  const double kp = params.kappa_p();
  const double ks = params.kappa_s();
  const double ka = params.kappa_a();
  const double w2r = params.fluid_coupling();
  const double h = kPi / source.grid.n;

  CMat C = CMat::Zero(3 * Nt, 3 * Ns);
  for (int i = 0; i < Nt; ++i) {
    const CurveJet& ti = target.jets[static_cast<std::size_t>(i)];
    const Eigen::Vector2cd nu = ti.nu.cast<cplx>();
    const Eigen::Vector2cd tau = ti.tau.cast<cplx>();
    for (int j = 0; j < Ns; ++j) {
      const CurveJet& sj = source.jets[static_cast<std::size_t>(j)];
      // factor 2 of the parametrized equations times the trapezoid weight
      const double w = 2.0 * h * sj.G * sj.G;
      const auto Hp = kernels::hess_phi(ti.p, sj.p, kp);
      const auto Hs = kernels::hess_phi(ti.p, sj.p, ks);
      const Eigen::Vector2cd Hp_nu = Hp * nu;
      const Eigen::Vector2cd Hs_nu = Hs * nu;
      const cplx Pp = kernels::phi(ti.p, sj.p, kp);
      const cplx Pa = kernels::phi(ti.p, sj.p, ka);

      C(i, j) = w * (mu * nu.dot(Hp_nu) - lm * kp * kp * Pp);
      C(i, Ns + j) = w * mu * tau.dot(Hs_nu);
      C(i, 2 * Ns + j) = w * Pa;
      C(Nt + i, j) = w * tau.dot(Hp_nu);
      C(Nt + i, Ns + j) = -w * nu.dot(Hs_nu);
      C(2 * Nt + i, j) = w * nu.dot(kernels::grad_phi(ti.p, sj.p, kp));
      C(2 * Nt + i, Ns + j) = w * tau.dot(kernels::grad_phi(ti.p, sj.p, ks));
      C(2 * Nt + i, 2 * Ns + j) = -w * nu.dot(kernels::grad_phi(ti.p, sj.p, ka)) / w2r;
    }
  }
  return C;
}

CMat assemble_two_body(const StarlikeCurve& curve_d, const StarlikeCurve& curve_b, const MaterialParams& params,
                       int n_d, int n_b) {
  const double sep = curve_separation(curve_d, curve_b);
  if (sep < kMinBodySeparation) {
    std::ostringstream msg;
    msg << "bodies overlap or are too close (separation " << sep << " < " << kMinBodySeparation << ")";
    throw GeometryError(msg.str());
  }
  const NodalCurve nd(curve_d, n_d);
  const NodalCurve nb(curve_b, n_b);
  const Eigen::Index Md = 6 * n_d;
  const Eigen::Index Mb = 6 * n_b;
  CMat A(Md + Mb, Md + Mb);
  A.topLeftCorner(Md, Md) = assemble_system(nd, params);
  A.bottomRightCorner(Mb, Mb) = assemble_system(nb, params);
  A.topRightCorner(Md, Mb) = cross_block(nd, nb, params);
  A.bottomLeftCorner(Mb, Md) = cross_block(nb, nd, params);
  return A;
}

TwoBodyDensities solve_two_body(const CMat& system, const RhsVectors& rhs_d, const RhsVectors& rhs_b,
                                SolveReport* report) {
  const CVec bd = rhs_d.stacked();
  const CVec bb = rhs_b.stacked();
  CVec rhs(bd.size() + bb.size());
  rhs << bd, bb;
  const CVec x = solve_dense(system, rhs, report);
  return {DensitySet::from_stacked(x.head(bd.size())), DensitySet::from_stacked(x.tail(bb.size()))};
}

TwoBodyDensities solve_two_body(const StarlikeCurve& curve_d, const StarlikeCurve& curve_b,
                                const MaterialParams& params, const IncidentWave& wave, int n_d, int n_b,
                                SolveReport* report) {
  const CMat A = assemble_two_body(curve_d, curve_b, params, n_d, n_b);
  return solve_two_body(A, rhs_plane_wave(curve_d, params, wave, NodeGrid(n_d)),
                        rhs_plane_wave(curve_b, params, wave, NodeGrid(n_b)), report);
}

FarField far_field_sum(const TwoBodyDensities& densities, const StarlikeCurve& curve_d,
                       const StarlikeCurve& curve_b, const MaterialParams& params,
                       const std::vector<double>& obs_angles) {
  FarField f = far_field(densities.d, curve_d, params, obs_angles);
  f.values += far_field(densities.b, curve_b, params, obs_angles).values;
  return f;
}

}  // namespace elastoscat

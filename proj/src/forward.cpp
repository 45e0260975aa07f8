#include "elastoscat/forward.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <mutex>
#include <sstream>

#include "elastoscat/kernels.hpp"
#include "elastoscat/quadrature.hpp"

namespace elastoscat {

namespace {

std::mutex& warning_mutex() {
  static std::mutex m;
  return m;
}

void stderr_warning(const std::string& msg) { std::cerr << "elastoscat: warning: " << msg << '\n'; }

WarningHandler& warning_handler() {
  static WarningHandler h = stderr_warning;
  return h;
}

CMat had(const CMat& a, const RMat& q) { return a.cwiseProduct(q.cast<cplx>()); }

void require_finite_positive(double v, const char* name) {
  if (!std::isfinite(v) || !(v > 0.0)) {
    throw InvalidArgument(std::string(name) + " must be finite and positive");
  }
}

}  // namespace

void set_warning_handler(WarningHandler handler) {
  std::lock_guard<std::mutex> lock(warning_mutex());
  warning_handler() = handler ? std::move(handler) : WarningHandler(stderr_warning);
}

void emit_warning(const std::string& message) {
  std::lock_guard<std::mutex> lock(warning_mutex());
  warning_handler()(message);
}

void MaterialParams::validate() const {
  require_finite_positive(mu, "mu");
  require_finite_positive(rho_e, "rho_e");
  require_finite_positive(rho_a, "rho_a");
  require_finite_positive(omega, "omega");
  require_finite_positive(c, "c");
  if (!std::isfinite(lambda) || !(lambda + 2.0 * mu > 0.0)) {
    throw InvalidArgument("lambda + 2 mu must be positive");
  }
}

double MaterialParams::kappa_p() const { return omega * std::sqrt(rho_e / (lambda + 2.0 * mu)); }
double MaterialParams::kappa_s() const { return omega * std::sqrt(rho_e / mu); }
double MaterialParams::kappa_a() const { return omega / c; }

Vec2 IncidentWave::direction() const { return {std::cos(theta), std::sin(theta)}; }

CVec DensitySet::stacked() const {
  CVec x(phi1.size() + phi2.size() + phi3.size());
  x << phi1, phi2, phi3;
  return x;
}

DensitySet DensitySet::from_stacked(const CVec& x) {
  if (x.size() % 3 != 0 || (x.size() / 3) % 2 != 0) throw InvalidArgument("stacked density length must be 6n");
  const Eigen::Index N = x.size() / 3;
  return {x.segment(0, N), x.segment(N, N), x.segment(2 * N, N)};
}

cplx far_field_constant(double kappa) { return std::exp(kI * (kPi / 4.0)) / std::sqrt(8.0 * kPi * kappa); }

std::vector<double> observation_angles(int count) {
  if (count < 2 || count % 2 != 0) throw InvalidArgument("observation count must be even and >= 2");
  std::vector<double> a(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) a[static_cast<std::size_t>(i)] = 2.0 * kPi * i / count;
  return a;
}

NodalCurve::NodalCurve(const StarlikeCurve& curve, int n) : grid(n) {
  jets.reserve(static_cast<std::size_t>(grid.size()));
  for (double t : grid.nodes) jets.push_back(curve.jet(t));
}

BoundaryOperators boundary_operators(const NodalCurve& nodal, double kappa) {
  const int N = nodal.size();
  const int n = nodal.grid.n;
  const auto table = quadrature::weight_table(n);
  const double h = kPi / n;
  BoundaryOperators ops;
  ops.kappa = kappa;
  ops.S.resize(N, N);
  ops.K.resize(N, N);
  ops.H.resize(N, N);
  for (int i = 0; i < N; ++i) {
    const CurveJet& jt = nodal.jets[static_cast<std::size_t>(i)];
    const double ti = nodal.grid[i];
    for (int j = 0; j < N; ++j) {
      const auto sp = kernels::split_all(jt, ti, nodal.jets[static_cast<std::size_t>(j)], nodal.grid[j], kappa);
      const double R = table->R(i, j);
      ops.S(i, j) = R * sp.m.m1 + h * sp.m.m2;
      ops.K(i, j) = (R * sp.k.k1 + h * sp.k.k2) / jt.G;
      ops.H(i, j) = (table->T(i, j) * sp.h.h1 + R * sp.h.h2 + h * sp.h.h3) / jt.G;
    }
  }
  return ops;
}

CVec RhsVectors::stacked() const {
  CVec x(w1.size() + w2.size() + w3.size());
  x << w1, w2, w3;
  return x;
}

RhsVectors rhs_plane_wave(const StarlikeCurve& curve, const MaterialParams& params, const IncidentWave& wave,
                          const NodeGrid& grid) {
  params.validate();
  const int N = grid.size();
  const double ka = params.kappa_a();
  const Vec2 d = wave.direction();
  RhsVectors w;
  w.w1.resize(N);
  w.w2 = CVec::Zero(N);
  w.w3.resize(N);
  for (int i = 0; i < N; ++i) {
    const CurveJet j = curve.jet(grid[i]);
    const cplx ui = std::exp(kI * ka * j.p.dot(d));
    w.w1(i) = -2.0 * ui;
    w.w3(i) = 2.0 * kI * ka * j.nu.dot(d) * ui / params.fluid_coupling();
  }
  return w;
}

CMat assemble_system(const StarlikeCurve& curve, const MaterialParams& params, const NodeGrid& grid) {
  return assemble_system(NodalCurve(curve, grid.n), params);
}

CMat assemble_system(const NodalCurve& nodal, const MaterialParams& params) {
  params.validate();
  const int N = nodal.size();
  const double mu = params.mu;
  const double lm = params.lambda + params.mu;
  const double kp = params.kappa_p();
  const double ks = params.kappa_s();
  const double ka = params.kappa_a();
  const double w2r = params.fluid_coupling();

  const BoundaryOperators P = boundary_operators(nodal, kp);
  const BoundaryOperators Sh = boundary_operators(nodal, ks);
  const BoundaryOperators A = boundary_operators(nodal, ka);
  const CMat D = quadrature::weight_table(nodal.grid.n)->D.cast<cplx>();

  // Geometric factors: target i (nu, tau at t_i) against source j.
  RMat qx11(N, N), qx12(N, N), qx13(N, N), qx14(N, N), qx15(N, N), qx21(N, N);
  RMat qy11(N, N), qy12(N, N), qy13(N, N), qy14(N, N), qy15(N, N), qy21(N, N), g2(N, N);
  RVec dx1(N), dx2(N), dy1(N), dy2(N), gt(N);
  for (int i = 0; i < N; ++i) {
    const CurveJet& ti = nodal.jets[static_cast<std::size_t>(i)];
    gt(i) = ti.G;
    dx1(i) = mu * ti.nu.dot(ti.dn_perp) / ti.G;
    dx2(i) = mu * ti.nu.dot(ti.dn) / ti.G;
    dy1(i) = ti.tau.dot(ti.dn_perp) / ti.G;
    dy2(i) = ti.tau.dot(ti.dn) / ti.G;
    for (int j = 0; j < N; ++j) {
      const CurveJet& sj = nodal.jets[static_cast<std::size_t>(j)];
      const double vn = ti.nu.dot(sj.n);
      const double vnp = ti.nu.dot(sj.n_perp);
      const double tn = ti.tau.dot(sj.n);
      const double tnp = ti.tau.dot(sj.n_perp);
      qx11(i, j) = vn * vn;
      qx12(i, j) = vnp;
      qx13(i, j) = ti.nu.dot(sj.dn_perp);
      qx14(i, j) = vn;
      qx15(i, j) = ti.nu.dot(sj.dn);
      qx21(i, j) = vnp * vn;
      qy11(i, j) = tn * vn;
      qy12(i, j) = tnp;
      qy13(i, j) = ti.tau.dot(sj.dn_perp);
      qy14(i, j) = tn;
      qy15(i, j) = ti.tau.dot(sj.dn);
      qy21(i, j) = tnp * vn;
      g2(i, j) = sj.G * sj.G;
    }
  }

  CMat X1 = -mu * kp * kp * had(P.S, qx11) + mu * had(P.K, qx12) * D + mu * had(P.K, qx13) -
            mu * had(P.H, qx14) * D - mu * had(P.H, qx15) - lm * kp * kp * had(P.S, g2);
  X1.diagonal() += dx1.cast<cplx>();
  CMat X2 = mu * ks * ks * had(Sh.S, qx21) + mu * had(Sh.K, qx14) * D + mu * had(Sh.K, qx15) +
            mu * had(Sh.H, qx12) * D + mu * had(Sh.H, qx13) + mu * D;
  X2.diagonal() += dx2.cast<cplx>();
  const CMat X3 = had(A.S, g2);

  CMat Y1 = -kp * kp * had(P.S, qy11) + had(P.K, qy12) * D + had(P.K, qy13) - had(P.H, qy14) * D -
            had(P.H, qy15) + D;
  Y1.diagonal() += dy1.cast<cplx>();
  CMat Y2 = ks * ks * had(Sh.S, qy21) + had(Sh.K, qy14) * D + had(Sh.K, qy15) + had(Sh.H, qy12) * D +
            had(Sh.H, qy13);
  Y2.diagonal() += dy2.cast<cplx>();

  CMat Z1 = had(P.K, g2);
  Z1.diagonal() += gt.cast<cplx>();
  const CMat Z2 = had(Sh.H, g2);
  CMat Z3 = -had(A.K, g2) / w2r;
  Z3.diagonal() += (gt / w2r).cast<cplx>();

  CMat M = CMat::Zero(3 * N, 3 * N);
  M.block(0, 0, N, N) = X1;
  M.block(0, N, N, N) = X2;
  M.block(0, 2 * N, N, N) = X3;
  M.block(N, 0, N, N) = Y1;
  M.block(N, N, N, N) = Y2;
  M.block(2 * N, 0, N, N) = Z1;
  M.block(2 * N, N, N, N) = Z2;
  M.block(2 * N, 2 * N, N, N) = Z3;
  return M;
}

CVec solve_dense(const CMat& system, const CVec& rhs, SolveReport* report) {
  if (system.rows() != system.cols() || system.rows() != rhs.size()) {
    throw InvalidArgument("system dimensions do not match");
  }
  if (!system.allFinite() || !rhs.allFinite()) throw SingularSystemError("system contains non-finite entries");
  const Eigen::PartialPivLU<CMat> lu(system);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-300) || !std::isfinite(rcond)) throw SingularSystemError("system matrix is singular");
  CVec x = lu.solve(rhs);
  if (!x.allFinite()) throw SingularSystemError("solve produced non-finite values");

  const double bnorm = rhs.norm();
  auto rel_residual = [&](const CVec& v) {
    const double r = (system * v - rhs).norm();
    return bnorm > 0.0 ? r / bnorm : r;
  };
  double res = rel_residual(x);
  if (res > 1e-10) {
    x += lu.solve(rhs - system * x);
    res = rel_residual(x);
  }
  SolveReport rep;
  rep.relative_residual = res;
  rep.condition_estimate = 1.0 / rcond;
  rep.ill_conditioned = rep.condition_estimate > 1e12;
  if (rep.ill_conditioned) {
    std::ostringstream msg;
    msg << "condition number estimate " << rep.condition_estimate << " exceeds 1e12";
    emit_warning(msg.str());
  }
  if (res > 1e-10) {
    std::ostringstream msg;
    msg << "linear solve residual " << res << " exceeds 1e-10";
    emit_warning(msg.str());
  }
  if (report) *report = rep;
  return x;
}

DensitySet solve_densities(const CMat& system, const RhsVectors& rhs, SolveReport* report) {
  return DensitySet::from_stacked(solve_dense(system, rhs.stacked(), report));
}

DensitySet solve_forward(const StarlikeCurve& curve, const MaterialParams& params, const IncidentWave& wave, int n,
                         SolveReport* report) {
  const NodalCurve nodal(curve, n);
  const CMat A = assemble_system(nodal, params);
  return solve_densities(A, rhs_plane_wave(curve, params, wave, nodal.grid), report);
}

FarField far_field(const DensitySet& densities, const StarlikeCurve& curve, const MaterialParams& params,
                   const std::vector<double>& obs_angles) {
  params.validate();
  const int n = densities.n();
  const NodeGrid grid(n);
  const double ka = params.kappa_a();
  FarField ff;
  ff.angles = obs_angles;
  ff.gamma_a = far_field_constant(ka);
  ff.values = CVec::Zero(static_cast<Eigen::Index>(obs_angles.size()));
  std::vector<Vec2> pts;
  std::vector<cplx> wts;
  for (int j = 0; j < grid.size(); ++j) {
    const CurveJet jt = curve.jet(grid[j]);
    pts.push_back(jt.p);
    wts.push_back(densities.phi3(j) * jt.G * jt.G);
  }
  const cplx pre = ff.gamma_a * (kPi / n);
  for (std::size_t i = 0; i < obs_angles.size(); ++i) {
    const Vec2 xh(std::cos(obs_angles[i]), std::sin(obs_angles[i]));
    cplx s = 0.0;
    for (std::size_t j = 0; j < pts.size(); ++j) s += std::exp(-kI * ka * xh.dot(pts[j])) * wts[j];
    ff.values(static_cast<Eigen::Index>(i)) = pre * s;
  }
  return ff;
}

NearField near_field(const DensitySet& densities, const StarlikeCurve& curve, const MaterialParams& params,
                     const Vec2& x) {
  params.validate();
  const int n = densities.n();
  constexpr int kProbe = 4096;
  double dist = std::numeric_limits<double>::infinity();
  for (int k = 0; k < kProbe; ++k) dist = std::min(dist, (curve.point(2.0 * kPi * k / kProbe) - x).norm());
  if (dist < kNearFieldMinDistance) {
    throw InvalidArgument("near-field point lies within 1e-3 of the boundary");
  }
  const double perim = curve.perimeter();
  int half = std::max(2 * n, static_cast<int>(std::ceil(3.0 * perim / dist)));
  half = std::min(half, 1 << 19);
  const int Nf = 2 * half;
  const double h = kPi / half;

  const double kp = params.kappa_p();
  const double ks = params.kappa_s();
  const double ka = params.kappa_a();
  NearField out{};
  out.phi = out.psi = out.us = 0.0;
  out.grad_phi.setZero();
  out.grad_psi.setZero();
  out.grad_us.setZero();

  constexpr int kChunk = 4096;
  for (int start = 0; start < Nf; start += kChunk) {
    const int count = std::min(kChunk, Nf - start);
    std::vector<double> ts(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) ts[static_cast<std::size_t>(k)] = h * (start + k);
    const RMat L = quadrature::interpolation_matrix(n, ts);
    const CVec f1 = L.cast<cplx>() * densities.phi1;
    const CVec f2 = L.cast<cplx>() * densities.phi2;
    const CVec f3 = L.cast<cplx>() * densities.phi3;
    for (int k = 0; k < count; ++k) {
      const CurveJet j = curve.jet(ts[static_cast<std::size_t>(k)]);
      const double w = h * j.G * j.G;
      out.phi += kernels::phi(x, j.p, kp) * f1(k) * w;
      out.grad_phi += kernels::grad_phi(x, j.p, kp) * (f1(k) * w);
      out.psi += kernels::phi(x, j.p, ks) * f2(k) * w;
      out.grad_psi += kernels::grad_phi(x, j.p, ks) * (f2(k) * w);
      out.us += kernels::phi(x, j.p, ka) * f3(k) * w;
      out.grad_us += kernels::grad_phi(x, j.p, ka) * (f3(k) * w);
    }
  }
  out.U = out.grad_phi + Eigen::Vector2cd(out.grad_psi.y(), -out.grad_psi.x());
  return out;
}

ResidualReport boundary_residual(const DensitySet& densities, const StarlikeCurve& curve,
                                 const MaterialParams& params, const IncidentWave& wave) {
  ResidualReport rep;
  const int n = densities.n();
  const int N = 2 * n;

  {
    const NodalCurve nodal(curve, n);
    const CVec r = assemble_system(nodal, params) * densities.stacked() -
                   rhs_plane_wave(curve, params, wave, nodal.grid).stacked();
    for (int e = 0; e < 3; ++e) rep.nodal[e] = r.segment(e * N, N).cwiseAbs().maxCoeff();
  }

  const NodalCurve fine(curve, 2 * n);
  const RMat L = quadrature::interpolation_matrix(n, fine.grid.nodes);
  CVec x(3 * 2 * N);
  x << L.cast<cplx>() * densities.phi1, L.cast<cplx>() * densities.phi2, L.cast<cplx>() * densities.phi3;
  const CVec r = assemble_system(fine, params) * x - rhs_plane_wave(curve, params, wave, fine.grid).stacked();
  for (int e = 0; e < 3; ++e) {
    double m = 0.0;
    for (int i = 1; i < 2 * N; i += 2) m = std::max(m, std::abs(r(e * 2 * N + i)));
    rep.offset[e] = m;
  }
  return rep;
}

bool JumpSeries::monotone() const {
  for (std::size_t k = 1; k < h.size(); ++k) {
    if (!(error_exterior[k] < error_exterior[k - 1])) return false;
    if (!(error_interior[k] < error_interior[k - 1])) return false;
  }
  return true;
}

bool JumpReport::all_monotone() const {
  return std::all_of(series.begin(), series.end(), [](const JumpSeries& s) { return s.monotone(); });
}

namespace {

using CV2 = Eigen::Vector2cd;

CV2 rot(const CV2& v) { return {v.y(), -v.x()}; }

struct OneSided {
  CV2 grad;
  CV2 dnu_grad;
};

// Trapezoid rule in u after s = t0 + u - a sin(u); the map clusters nodes at
// t0 by the factor 1 - a and keeps the integrand periodic and analytic.
OneSided graded_layer(const StarlikeCurve& curve, double kappa, const std::function<double(double)>& g, double t0,
                      const Vec2& x, const Vec2& nu0, double a) {
  constexpr int kNodes = 8192;
  OneSided out{CV2::Zero(), CV2::Zero()};
  const double hu = 2.0 * kPi / kNodes;
  for (int k = 0; k < kNodes; ++k) {
    const double u = hu * k;
    const double s = t0 + u - a * std::sin(u);
    const double ds = 1.0 - a * std::cos(u);
    const CurveJet j = curve.jet(s);
    const double w = hu * ds * j.G * g(s);
    out.grad += kernels::grad_phi(x, j.p, kappa) * w;
    out.dnu_grad += kernels::hess_phi(x, j.p, kappa) * nu0.cast<cplx>() * w;
  }
  return out;
}

}  // namespace

JumpReport jump_check(const StarlikeCurve& curve, double kappa, const std::function<double(double)>& density,
                      const std::vector<double>& h_sequence, int n, int node) {
  require_finite_positive(kappa, "kappa");
  const NodalCurve nodal(curve, n);
  const int N = nodal.size();
  if (node < 0 || node >= N) throw InvalidArgument("jump_check node out of range");
  const BoundaryOperators ops = boundary_operators(nodal, kappa);
  const RMat& D = quadrature::weight_table(n)->D;

  const CurveJet& j0 = nodal.jets[static_cast<std::size_t>(node)];
  const double t0 = nodal.grid[node];
  const double g0 = density(t0);

  CVec theta(N), tg1(N), tg2(N), vg1(N), vg2(N), sdens(N);
  for (int j = 0; j < N; ++j) {
    const CurveJet& jj = nodal.jets[static_cast<std::size_t>(j)];
    const double gj = density(nodal.grid[j]);
    theta(j) = jj.G * gj;
    tg1(j) = jj.tau.x() * gj;
    tg2(j) = jj.tau.y() * gj;
    vg1(j) = jj.nu.x() * gj;
    vg2(j) = jj.nu.y() * gj;
    sdens(j) = j0.nu.dot(jj.nu) * gj * jj.G;
  }
  const CMat Dc = D.cast<cplx>();
  const CVec dtg1 = Dc * tg1, dtg2 = Dc * tg2, dvg1 = Dc * vg1, dvg2 = Dc * vg2;

  // Principal values at the node.
  const cplx Kt = ops.K.row(node) * theta;
  const cplx Ht = ops.H.row(node) * theta;
  const CV2 pv_grad = j0.nu.cast<cplx>() * (0.5 * Kt) + j0.tau.cast<cplx>() * (0.5 * Ht);

  CV2 k_dtg(ops.K.row(node) * dtg1, ops.K.row(node) * dtg2);
  CV2 h_dvg(ops.H.row(node) * dvg1, ops.H.row(node) * dvg2);
  CVec sx(N), sy(N);
  for (int j = 0; j < N; ++j) {
    const CurveJet& jj = nodal.jets[static_cast<std::size_t>(j)];
    sx(j) = sdens(j) * jj.nu.x();
    sy(j) = sdens(j) * jj.nu.y();
  }
  const CV2 s_term(ops.S.row(node) * sx, ops.S.row(node) * sy);
  const CV2 pv_dnu = 0.5 * k_dtg - 0.5 * h_dvg - 0.5 * kappa * kappa * s_term;

  const CV2 jump_grad = -j0.nu.cast<cplx>() * g0;                       // exterior minus interior
  const CV2 jump_dnu = -CV2(dtg1(node), dtg2(node)) / j0.G;

  JumpSeries grad{"grad", {}, {}, {}, 0.0};
  JumpSeries curl{"curl", {}, {}, {}, 0.0};
  JumpSeries dgrad{"dnu_grad", {}, {}, {}, 0.0};
  JumpSeries dcurl{"dnu_curl", {}, {}, {}, 0.0};

  for (double h : h_sequence) {
    if (!(h > 0.0)) throw InvalidArgument("jump_check offsets must be positive");
    const double a = 1.0 - std::min(1.0, 100.0 * h);
    const OneSided ext = graded_layer(curve, kappa, density, t0, j0.p + h * j0.nu, j0.nu, a);
    const OneSided in = graded_layer(curve, kappa, density, t0, j0.p - h * j0.nu, j0.nu, a);

    const CV2 lim_grad_e = pv_grad + 0.5 * jump_grad, lim_grad_i = pv_grad - 0.5 * jump_grad;
    const CV2 lim_dnu_e = pv_dnu + 0.5 * jump_dnu, lim_dnu_i = pv_dnu - 0.5 * jump_dnu;

    for (JumpSeries* s : {&grad, &curl, &dgrad, &dcurl}) s->h.push_back(h);
    grad.error_exterior.push_back((ext.grad - lim_grad_e).norm());
    grad.error_interior.push_back((in.grad - lim_grad_i).norm());
    curl.error_exterior.push_back((rot(ext.grad) - rot(lim_grad_e)).norm());
    curl.error_interior.push_back((rot(in.grad) - rot(lim_grad_i)).norm());
    dgrad.error_exterior.push_back((ext.dnu_grad - lim_dnu_e).norm());
    dgrad.error_interior.push_back((in.dnu_grad - lim_dnu_i).norm());
    dcurl.error_exterior.push_back((rot(ext.dnu_grad) - rot(lim_dnu_e)).norm());
    dcurl.error_interior.push_back((rot(in.dnu_grad) - rot(lim_dnu_i)).norm());

    grad.jump_error = ((ext.grad - in.grad) - jump_grad).norm();
    curl.jump_error = (rot(ext.grad - in.grad) - rot(jump_grad)).norm();
    dgrad.jump_error = ((ext.dnu_grad - in.dnu_grad) - jump_dnu).norm();
    dcurl.jump_error = (rot(ext.dnu_grad - in.dnu_grad) - rot(jump_dnu)).norm();
  }

  JumpReport rep;
  rep.series = {grad, curl, dgrad, dcurl};
  return rep;
}

}  // namespace elastoscat

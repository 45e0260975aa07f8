#include "elastoscat/kernels.hpp"

#include <cmath>

#include "elastoscat/specfun.hpp"

namespace elastoscat::kernels {

namespace {

double wrapped_offset(double t, double s) {
  // distance of t - s to the nearest multiple of 2 pi
  double u = std::remainder(t - s, 2.0 * kPi);
  return std::abs(u);
}

KernelSplits diagonal(const CurveJet& jt, double kappa) {
  KernelSplits out;
  out.m.m1 = -1.0 / (2.0 * kPi);
  out.m.m2 = cplx(-specfun::kEulerGamma / kPi - std::log(0.5 * kappa * jt.G) / kPi, 0.5);
  out.k.k1 = 0.0;
  out.k.k2 = jt.n.dot(jt.ddp) / (2.0 * kPi * jt.G * jt.G);
  out.h.h1 = 1.0 / kPi;
  out.h.h2 = 0.0;
  out.h.h3 = 0.0;
  return out;
}

}  // namespace

double log_factor(double t, double s) {
  const double sn = std::sin(0.5 * (t - s));
  return std::log(4.0 * sn * sn);
}

cplx phi(const Vec2& x, const Vec2& y, double kappa) {
  const double r = (x - y).norm();
  if (!(r > 0.0)) throw InvalidArgument("fundamental solution evaluated at coincident points");
  return 0.25 * kI * specfun::hankel1_0(kappa * r);
}

CVec2 grad_phi(const Vec2& x, const Vec2& y, double kappa) {
  const Vec2 d = x - y;
  const double r = d.norm();
  if (!(r > 0.0)) throw InvalidArgument("fundamental solution gradient at coincident points");
  const cplx h1 = specfun::hankel1_1(kappa * r);
  const cplx c = -0.25 * kI * kappa * h1 / r;
  return CVec2(c * d.x(), c * d.y());
}

CMat2 hess_phi(const Vec2& x, const Vec2& y, double kappa) {
  const Vec2 d = x - y;
  const double r = d.norm();
  if (!(r > 0.0)) throw InvalidArgument("fundamental solution Hessian at coincident points");
  const double z = kappa * r;
  const auto h = specfun::hankel01(z);
  const cplx dh1 = h.h0 - h.h1 / z;
  const Vec2 e = d / r;
  const Eigen::Matrix2d ee = e * e.transpose();
  const Eigen::Matrix2d rest = Eigen::Matrix2d::Identity() - ee;
  const cplx pre = -0.25 * kI * kappa;
  CMat2 out = (pre * kappa * dh1) * ee.cast<cplx>() + (pre * h.h1 / r) * rest.cast<cplx>();
  return out;
}

KernelSplits split_all(const CurveJet& jt, double t, const CurveJet& js, double s, double kappa) {
  if (wrapped_offset(t, s) < kDiagonalCutoff) return diagonal(jt, kappa);

  const Vec2 delta = js.p - jt.p;  // p(s) - p(t)
  const double r2 = delta.squaredNorm();
  const double r = std::sqrt(r2);
  const double z = kappa * r;
  const specfun::Bessel01 b = specfun::bessel01(z);
  const cplx h0(b.j0, b.y0);
  const cplx h1(b.j1, b.y1);
  const double L = log_factor(t, s);

  const double n_dot = jt.n.dot(delta);
  const double np_dot = jt.n_perp.dot(delta);

  KernelSplits out;
  const cplx M = 0.5 * kI * h0;
  out.m.m1 = -b.j0 / (2.0 * kPi);
  out.m.m2 = M - out.m.m1 * L;

  const cplx K = 0.5 * kI * kappa * n_dot * h1 / r;
  out.k.k1 = -kappa / (2.0 * kPi) * n_dot * b.j1 / r;
  out.k.k2 = K - out.k.k1 * L;

  const cplx H = 0.5 * kI * kappa * np_dot * h1 / r;
  const double cauchy = np_dot / (kPi * r2);  // h1 / sin(s - t), finite at s = t + pi
  out.h.h1 = cauchy * std::sin(s - t);
  out.h.h2 = -kappa / (2.0 * kPi) * np_dot * b.j1 / r;
  out.h.h3 = H - cauchy - out.h.h2 * L;
  return out;
}

KernelSplitM split_m(const StarlikeCurve& curve, double t, double s, double kappa) {
  return split_all(curve.jet(t), t, curve.jet(s), s, kappa).m;
}

KernelSplitK split_k(const StarlikeCurve& curve, double t, double s, double kappa) {
  return split_all(curve.jet(t), t, curve.jet(s), s, kappa).k;
}

KernelSplitH split_h(const StarlikeCurve& curve, double t, double s, double kappa) {
  return split_all(curve.jet(t), t, curve.jet(s), s, kappa).h;
}

cplx kernel_m(const StarlikeCurve& curve, double t, double s, double kappa) {
  const double r = (curve.point(s) - curve.point(t)).norm();
  return 0.5 * kI * specfun::hankel1_0(kappa * r);
}

cplx kernel_k(const StarlikeCurve& curve, double t, double s, double kappa) {
  const CurveJet jt = curve.jet(t);
  const Vec2 delta = curve.point(s) - jt.p;
  const double r = delta.norm();
  return 0.5 * kI * kappa * jt.n.dot(delta) * specfun::hankel1_1(kappa * r) / r;
}

cplx kernel_h(const StarlikeCurve& curve, double t, double s, double kappa) {
  const CurveJet jt = curve.jet(t);
  const Vec2 delta = curve.point(s) - jt.p;
  const double r = delta.norm();
  return 0.5 * kI * kappa * jt.n_perp.dot(delta) * specfun::hankel1_1(kappa * r) / r;
}

}  // namespace elastoscat::kernels

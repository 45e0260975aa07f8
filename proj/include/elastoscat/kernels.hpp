#pragma once

#include "elastoscat/geometry.hpp"
#include "elastoscat/types.hpp"

namespace elastoscat::kernels {

using CVec2 = Eigen::Vector2cd;
using CMat2 = Eigen::Matrix2cd;

/// Below this parameter distance the split kernels return their diagonal limits.
inline constexpr double kDiagonalCutoff = 1e-6;

/// Helmholtz fundamental solution (i/4) H0(kappa |x - y|).
cplx phi(const Vec2& x, const Vec2& y, double kappa);
/// Gradient with respect to x.
CVec2 grad_phi(const Vec2& x, const Vec2& y, double kappa);
/// Hessian with respect to x, closed form.
CMat2 hess_phi(const Vec2& x, const Vec2& y, double kappa);

/// M(t,s) = m1 ln(4 sin^2((t-s)/2)) + m2, M = (i/2) H0(kappa |p(t) - p(s)|).
struct KernelSplitM {
  cplx m1;
  cplx m2;
};

/// K(t,s) = k1 ln(...) + k2, K = (i kappa/2) n(t).(p(s)-p(t)) H1(kappa r)/r.
struct KernelSplitK {
  cplx k1;
  cplx k2;
};

/// H(t,s) = h1 / sin(s-t) + h2 ln(...) + h3, H built with n_perp(t).
struct KernelSplitH {
  cplx h1;
  cplx h2;
  cplx h3;
};

struct KernelSplits {
  KernelSplitM m;
  KernelSplitK k;
  KernelSplitH h;
};

/// Evaluates all three splits for target jet `jt` at angle t and source jet
/// `js` at angle s. Shares one Bessel evaluation.
KernelSplits split_all(const CurveJet& jt, double t, const CurveJet& js, double s, double kappa);

KernelSplitM split_m(const StarlikeCurve& curve, double t, double s, double kappa);
KernelSplitK split_k(const StarlikeCurve& curve, double t, double s, double kappa);
KernelSplitH split_h(const StarlikeCurve& curve, double t, double s, double kappa);

/// The unsplit kernels, for recomposition checks.
cplx kernel_m(const StarlikeCurve& curve, double t, double s, double kappa);
cplx kernel_k(const StarlikeCurve& curve, double t, double s, double kappa);
cplx kernel_h(const StarlikeCurve& curve, double t, double s, double kappa);

/// ln(4 sin^2((t - s)/2)).
double log_factor(double t, double s);

}  // namespace elastoscat::kernels

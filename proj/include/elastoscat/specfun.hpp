#pragma once

#include "elastoscat/types.hpp"

namespace elastoscat::specfun {

inline constexpr double kEulerGamma = 0.5772156649015329;

/// J0, J1, Y0, Y1 at one argument. Computing them together is what the kernel
/// splits need and shares the recurrence work.
struct Bessel01 {
  double j0 = 0.0;
  double j1 = 0.0;
  double y0 = 0.0;
  double y1 = 0.0;
};

/// Valid for x > 0. Accurate to ~1e-15 absolute (relative away from zeros) on
/// (0, 100]; the large-argument branch stays accurate beyond that range.
Bessel01 bessel01(double x);

double bessel_j0(double x);
double bessel_j1(double x);
cplx hankel1_0(double x);
cplx hankel1_1(double x);

/// H0(x) and H1(x) together.
struct Hankel01 {
  cplx h0;
  cplx h1;
};
Hankel01 hankel01(double x);

}  // namespace elastoscat::specfun

#include "elastoscat/specfun.hpp"

#include <cmath>
#include <vector>

namespace elastoscat::specfun {

namespace {

constexpr double kAsymptoticThreshold = 20.0;

// Miller backward recurrence for J_0..J_N normalized with J0 + 2 sum J_2k = 1,
// followed by Neumann series for Y0 and Y1.
Bessel01 bessel01_recurrence(double x) {
  int top = static_cast<int>(x + 30.0 + 10.0 * std::sqrt(x));
  top += top % 2;
  thread_local std::vector<double> j;
  j.assign(static_cast<std::size_t>(top + 2), 0.0);
  j[static_cast<std::size_t>(top + 1)] = 0.0;
  j[static_cast<std::size_t>(top)] = 1.0;
  const double inv_x = 1.0 / x;
  for (int k = top; k >= 1; --k) {
    const auto uk = static_cast<std::size_t>(k);
    double prev = 2.0 * k * inv_x * j[uk] - j[uk + 1];
    j[uk - 1] = prev;
    if (std::abs(prev) > 1e250) {
      for (std::size_t m = uk - 1; m <= static_cast<std::size_t>(top); ++m) j[m] *= 1e-250;
    }
  }
  double norm = j[0];
  for (int k = 2; k <= top; k += 2) norm += 2.0 * j[static_cast<std::size_t>(k)];
  const double scale = 1.0 / norm;

  auto J = [&](int k) { return j[static_cast<std::size_t>(k)] * scale; };

  const double log_term = std::log(0.5 * x) + kEulerGamma;
  double sum0 = 0.0;
  double sum1 = 0.0;
  for (int k = 1; 2 * k + 1 <= top; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    sum0 += sign * J(2 * k) / k;
    sum1 += sign * (J(2 * k - 1) - J(2 * k + 1)) / k;
  }
  Bessel01 out;
  out.j0 = J(0);
  out.j1 = J(1);
  out.y0 = (2.0 / kPi) * (log_term * out.j0 - 2.0 * sum0);
  out.y1 = (2.0 / kPi) * (log_term * out.j1 - out.j0 * inv_x + sum1);
  return out;
}

// Hankel large-argument expansion: P and Q series for order nu.
void asymptotic_pq(double nu, double x, double& P, double& Q) {
  const double mu = 4.0 * nu * nu;
  P = 1.0;
  Q = 0.0;
  double term = 1.0;
  double last = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * 8.0 * x);
    const double mag = std::abs(term);
    if (mag > last) break;  // asymptotic series started to diverge
    last = mag;
    // i^k pattern: k=1 -> Q+, k=2 -> P-, k=3 -> Q-, k=4 -> P+
    switch (k % 4) {
      case 1: Q += term; break;
      case 2: P -= term; break;
      case 3: Q -= term; break;
      default: P += term; break;
    }
    if (mag < 1e-18) break;
  }
}

Bessel01 bessel01_asymptotic(double x) {
  const double amp = std::sqrt(2.0 / (kPi * x));
  Bessel01 out;
  double P, Q;
  asymptotic_pq(0.0, x, P, Q);
  double chi = x - 0.25 * kPi;
  out.j0 = amp * (P * std::cos(chi) - Q * std::sin(chi));
  out.y0 = amp * (P * std::sin(chi) + Q * std::cos(chi));
  asymptotic_pq(1.0, x, P, Q);
  chi = x - 0.75 * kPi;
  out.j1 = amp * (P * std::cos(chi) - Q * std::sin(chi));
  out.y1 = amp * (P * std::sin(chi) + Q * std::cos(chi));
  return out;
}

}  // namespace

Bessel01 bessel01(double x) {
  if (std::isnan(x)) throw InvalidArgument("Bessel function argument is NaN");
  if (!(x > 0.0)) throw InvalidArgument("Bessel pair requires x > 0 (Y0, Y1 are singular at 0)");
  if (x > kAsymptoticThreshold) return bessel01_asymptotic(x);
  return bessel01_recurrence(x);
}

double bessel_j0(double x) {
  if (std::isnan(x)) throw InvalidArgument("bessel_j0: NaN argument");
  if (x < 0.0) throw InvalidArgument("bessel_j0: negative argument");
  if (x == 0.0) return 1.0;
  return bessel01(x).j0;
}

double bessel_j1(double x) {
  if (std::isnan(x)) throw InvalidArgument("bessel_j1: NaN argument");
  if (x < 0.0) throw InvalidArgument("bessel_j1: negative argument");
  if (x == 0.0) return 0.0;
  return bessel01(x).j1;
}

Hankel01 hankel01(double x) {
  if (!(x > 0.0)) throw InvalidArgument("Hankel functions require x > 0");
  const Bessel01 b = bessel01(x);
  return {cplx(b.j0, b.y0), cplx(b.j1, b.y1)};
}

cplx hankel1_0(double x) { return hankel01(x).h0; }
cplx hankel1_1(double x) { return hankel01(x).h1; }

}  // namespace elastoscat::specfun

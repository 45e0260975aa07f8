#pragma once

#include <vector>

#include "elastoscat/types.hpp"

namespace elastoscat {

/// Radial function value and its first two derivatives at one angle.
struct RadialJet {
  double r = 0.0;
  double dr = 0.0;
  double ddr = 0.0;
};

/// Radial profile r(t) of a starlike curve: an optional closed-form preset plus
/// a truncated Fourier series a0 + sum a_m cos(mt) + b_m sin(mt). The Fourier
/// part is the correction the inversion iterates on; for the circle and Fourier
/// kinds it is the whole profile.
class RadialProfile {
 public:
  enum class Kind { Apple, Peanut, Circle, Fourier };

  static RadialProfile apple();
  static RadialProfile peanut();
  static RadialProfile constant(double radius);
  /// `cos_coeffs` holds a0..aM, `sin_coeffs` holds b1..bM.
  static RadialProfile fourier(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);

  RadialJet eval(double t) const;

  Kind kind() const { return kind_; }
  const std::vector<double>& cos_coeffs() const { return cos_; }
  const std::vector<double>& sin_coeffs() const { return sin_; }
  /// Highest Fourier degree present in the correction part.
  int degree() const;

  /// Adds a Fourier correction; a circle becomes a general Fourier profile.
  RadialProfile plus(const std::vector<double>& dcos, const std::vector<double>& dsin) const;

 private:
  RadialProfile(Kind kind, std::vector<double> c, std::vector<double> s)
      : kind_(kind), cos_(std::move(c)), sin_(std::move(s)) {}

  Kind kind_;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

/// Pointwise geometric data of a parametrized curve. `n` is the unnormalized
/// normal (p2', -p1'), `n_perp` the unnormalized tangent (p1', p2').
struct CurveJet {
  Vec2 p;
  Vec2 dp;
  Vec2 ddp;
  double G = 0.0;
  Vec2 n;
  Vec2 n_perp;
  Vec2 nu;
  Vec2 tau;
  Vec2 dn;
  Vec2 dn_perp;
};

/// Boundary p(t) = c + r(t)(cos t, sin t). Immutable; r > 0 is enforced at
/// construction on a 512-point grid.
class StarlikeCurve {
 public:
  static constexpr int kPositivitySamples = 512;

  StarlikeCurve(Vec2 center, RadialProfile radial);

  const Vec2& center() const { return center_; }
  const RadialProfile& radial() const { return radial_; }

  Vec2 point(double t) const;
  CurveJet jet(double t) const;
  StarlikeCurve translated(const Vec2& h) const;

  /// Largest/smallest radial value over the positivity grid.
  double max_radius() const;
  double min_radius() const;
  /// Arc length by the trapezoid rule on `samples` points.
  double perimeter(int samples = 512) const;

 private:
  Vec2 center_;
  RadialProfile radial_;
};

StarlikeCurve make_apple();
StarlikeCurve make_peanut();
StarlikeCurve make_circle(const Vec2& center, double radius);
StarlikeCurve make_fourier(const Vec2& center, std::vector<double> cos_coeffs,
                           std::vector<double> sin_coeffs);

inline CurveJet jet(const StarlikeCurve& curve, double t) { return curve.jet(t); }
inline StarlikeCurve translate(const StarlikeCurve& curve, const Vec2& h) { return curve.translated(h); }

/// Equispaced nodes pi*j/n, j = 0..2n-1.
struct NodeGrid {
  int n = 0;
  std::vector<double> nodes;

  explicit NodeGrid(int n_half);
  int size() const { return 2 * n; }
  double spacing() const { return kPi / n; }
  double operator[](int j) const { return nodes[static_cast<std::size_t>(j)]; }
};

/// Relative L2 distance between two parametrizations sampled at `samples`
/// equispaced angles, normalized by the second curve.
double relative_l2_distance(const StarlikeCurve& a, const StarlikeCurve& b, int samples = 256);

/// Minimum Euclidean distance between the two curves sampled at `samples` angles each.
double curve_separation(const StarlikeCurve& a, const StarlikeCurve& b, int samples = 256);

/// Symmetric Hausdorff distance between the two point sets sampled at
/// `samples` angles; independent of the parametrization.
double hausdorff_distance(const StarlikeCurve& a, const StarlikeCurve& b, int samples = 512);

}  // namespace elastoscat

#include "elastoscat/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace elastoscat {

namespace {

RadialJet apple_jet(double t) {
  // r = f/g with f = 0.55(1 + 0.9cos t + 0.1 sin 2t), g = 1 + 0.75 cos t
  const double c = std::cos(t), s = std::sin(t);
  const double c2 = std::cos(2 * t), s2 = std::sin(2 * t);
  const double f = 0.55 * (1.0 + 0.9 * c + 0.1 * s2);
  const double df = 0.55 * (-0.9 * s + 0.2 * c2);
  const double ddf = 0.55 * (-0.9 * c - 0.4 * s2);
  const double g = 1.0 + 0.75 * c;
  const double dg = -0.75 * s;
  const double ddg = -0.75 * c;
  RadialJet out;
  out.r = f / g;
  out.dr = (df * g - f * dg) / (g * g);
  out.ddr = (ddf - 2.0 * out.dr * dg - out.r * ddg) / g;
  return out;
}

RadialJet peanut_jet(double t) {
  // r = 0.65 sqrt(u), u = 0.25 cos^2 t + sin^2 t = 0.625 - 0.375 cos 2t
  const double u = 0.625 - 0.375 * std::cos(2 * t);
  const double du = 0.75 * std::sin(2 * t);
  const double ddu = 1.5 * std::cos(2 * t);
  const double su = std::sqrt(u);
  RadialJet out;
  out.r = 0.65 * su;
  out.dr = 0.65 * du / (2.0 * su);
  out.ddr = 0.65 * (ddu / (2.0 * su) - du * du / (4.0 * u * su));
  return out;
}

}  // namespace

RadialProfile RadialProfile::apple() { return RadialProfile(Kind::Apple, {}, {}); }
RadialProfile RadialProfile::peanut() { return RadialProfile(Kind::Peanut, {}, {}); }

RadialProfile RadialProfile::constant(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw GeometryError("circle radius must be positive, got " + std::to_string(radius));
  }
  return RadialProfile(Kind::Circle, {radius}, {});
}

RadialProfile RadialProfile::fourier(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs) {
  if (cos_coeffs.empty()) cos_coeffs.push_back(0.0);
  return RadialProfile(Kind::Fourier, std::move(cos_coeffs), std::move(sin_coeffs));
}

int RadialProfile::degree() const {
  const int dc = cos_.empty() ? 0 : static_cast<int>(cos_.size()) - 1;
  return std::max(dc, static_cast<int>(sin_.size()));
}

RadialJet RadialProfile::eval(double t) const {
  RadialJet out;
  if (kind_ == Kind::Apple) out = apple_jet(t);
  if (kind_ == Kind::Peanut) out = peanut_jet(t);
  for (std::size_t m = 0; m < cos_.size(); ++m) {
    const double dm = static_cast<double>(m);
    const double cm = std::cos(dm * t), sm = std::sin(dm * t);
    out.r += cos_[m] * cm;
    out.dr -= cos_[m] * dm * sm;
    out.ddr -= cos_[m] * dm * dm * cm;
  }
  for (std::size_t k = 0; k < sin_.size(); ++k) {
    const double dm = static_cast<double>(k + 1);
    const double cm = std::cos(dm * t), sm = std::sin(dm * t);
    out.r += sin_[k] * sm;
    out.dr += sin_[k] * dm * cm;
    out.ddr -= sin_[k] * dm * dm * sm;
  }
  return out;
}

RadialProfile RadialProfile::plus(const std::vector<double>& dcos, const std::vector<double>& dsin) const {
  std::vector<double> c = cos_;
  std::vector<double> s = sin_;
  if (c.size() < dcos.size()) c.resize(dcos.size(), 0.0);
  if (s.size() < dsin.size()) s.resize(dsin.size(), 0.0);
  for (std::size_t m = 0; m < dcos.size(); ++m) c[m] += dcos[m];
  for (std::size_t m = 0; m < dsin.size(); ++m) s[m] += dsin[m];
  const Kind k = (kind_ == Kind::Circle) ? Kind::Fourier : kind_;
  return RadialProfile(k, std::move(c), std::move(s));
}

StarlikeCurve::StarlikeCurve(Vec2 center, RadialProfile radial)
    : center_(std::move(center)), radial_(std::move(radial)) {
  if (!center_.allFinite()) throw GeometryError("curve center is not finite");
  for (int j = 0; j < kPositivitySamples; ++j) {
    const double t = 2.0 * kPi * j / kPositivitySamples;
    const double r = radial_.eval(t).r;
    if (!(r > 0.0) || !std::isfinite(r)) {
      std::ostringstream msg;
      msg << "radial function is not positive: r(" << t << ") = " << r;
      throw GeometryError(msg.str());
    }
  }
}

Vec2 StarlikeCurve::point(double t) const {
  const double r = radial_.eval(t).r;
  return center_ + r * Vec2(std::cos(t), std::sin(t));
}

CurveJet StarlikeCurve::jet(double t) const {
  const RadialJet rj = radial_.eval(t);
  const Vec2 xh(std::cos(t), std::sin(t));
  const Vec2 xh_d(-std::sin(t), std::cos(t));
  CurveJet out;
  out.p = center_ + rj.r * xh;
  out.dp = rj.dr * xh + rj.r * xh_d;
  out.ddp = rj.ddr * xh + 2.0 * rj.dr * xh_d - rj.r * xh;
  out.G = out.dp.norm();
  out.n = Vec2(out.dp.y(), -out.dp.x());
  out.n_perp = out.dp;
  out.nu = out.n / out.G;
  out.tau = out.n_perp / out.G;
  out.dn = Vec2(out.ddp.y(), -out.ddp.x());
  out.dn_perp = out.ddp;
  return out;
}

StarlikeCurve StarlikeCurve::translated(const Vec2& h) const { return StarlikeCurve(center_ + h, radial_); }

double StarlikeCurve::max_radius() const {
  double m = 0.0;
  for (int j = 0; j < kPositivitySamples; ++j) {
    m = std::max(m, radial_.eval(2.0 * kPi * j / kPositivitySamples).r);
  }
  return m;
}

double StarlikeCurve::min_radius() const {
  double m = std::numeric_limits<double>::infinity();
  for (int j = 0; j < kPositivitySamples; ++j) {
    m = std::min(m, radial_.eval(2.0 * kPi * j / kPositivitySamples).r);
  }
  return m;
}

double StarlikeCurve::perimeter(int samples) const {
  double sum = 0.0;
  for (int j = 0; j < samples; ++j) sum += jet(2.0 * kPi * j / samples).G;
  return sum * 2.0 * kPi / samples;
}

StarlikeCurve make_apple() { return StarlikeCurve(Vec2::Zero(), RadialProfile::apple()); }
StarlikeCurve make_peanut() { return StarlikeCurve(Vec2::Zero(), RadialProfile::peanut()); }

StarlikeCurve make_circle(const Vec2& center, double radius) {
  return StarlikeCurve(center, RadialProfile::constant(radius));
}

StarlikeCurve make_fourier(const Vec2& center, std::vector<double> cos_coeffs,
                           std::vector<double> sin_coeffs) {
  return StarlikeCurve(center, RadialProfile::fourier(std::move(cos_coeffs), std::move(sin_coeffs)));
}

NodeGrid::NodeGrid(int n_half) : n(n_half) {
  if (n_half < 1) throw InvalidArgument("grid size n must be >= 1");
  nodes.resize(static_cast<std::size_t>(2 * n_half));
  for (int j = 0; j < 2 * n_half; ++j) nodes[static_cast<std::size_t>(j)] = kPi * j / n_half;
}

double relative_l2_distance(const StarlikeCurve& a, const StarlikeCurve& b, int samples) {
  double num = 0.0, den = 0.0;
  for (int j = 0; j < samples; ++j) {
    const double t = 2.0 * kPi * j / samples;
    const Vec2 pb = b.point(t);
    num += (a.point(t) - pb).squaredNorm();
    den += pb.squaredNorm();
  }
  return std::sqrt(num / den);
}

double curve_separation(const StarlikeCurve& a, const StarlikeCurve& b, int samples) {
  std::vector<Vec2> pb(static_cast<std::size_t>(samples));
  for (int j = 0; j < samples; ++j) pb[static_cast<std::size_t>(j)] = b.point(2.0 * kPi * j / samples);
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const Vec2 pa = a.point(2.0 * kPi * i / samples);
    for (const Vec2& q : pb) best = std::min(best, (pa - q).norm());
  }
  return best;
}

double hausdorff_distance(const StarlikeCurve& a, const StarlikeCurve& b, int samples) {
  std::vector<Vec2> pa(static_cast<std::size_t>(samples)), pb(static_cast<std::size_t>(samples));
  for (int j = 0; j < samples; ++j) {
    const double t = 2.0 * kPi * j / samples;
    pa[static_cast<std::size_t>(j)] = a.point(t);
    pb[static_cast<std::size_t>(j)] = b.point(t);
  }
  auto directed = [](const std::vector<Vec2>& from, const std::vector<Vec2>& to) {
    double worst = 0.0;
    for (const Vec2& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const Vec2& q : to) best = std::min(best, (p - q).squaredNorm());
      worst = std::max(worst, best);
    }
    return std::sqrt(worst);
  };
  return std::max(directed(pa, pb), directed(pb, pa));
}

}  // namespace elastoscat

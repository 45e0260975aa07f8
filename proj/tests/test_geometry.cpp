#include <doctest.h>

#include <cmath>
#include <random>

#include "elastoscat/geometry.hpp"

using namespace elastoscat;

TEST_SUITE("geometry") {

TEST_CASE("apple and peanut match their closed forms") {
  const StarlikeCurve a = make_apple();
  const StarlikeCurve p = make_peanut();
  for (double t : {0.0, 0.7, 2.0, 3.5, 5.9}) {
    const double ra = 0.55 * (1.0 + 0.9 * std::cos(t) + 0.1 * std::sin(2.0 * t)) / (1.0 + 0.75 * std::cos(t));
    CHECK((a.point(t) - ra * Vec2(std::cos(t), std::sin(t))).norm() < 1e-15);
    const double rp = 0.65 * std::sqrt(0.25 * std::cos(t) * std::cos(t) + std::sin(t) * std::sin(t));
    CHECK((p.point(t) - rp * Vec2(std::cos(t), std::sin(t))).norm() < 1e-15);
  }
}

TEST_CASE("jet derivatives agree with central differences") {
  const StarlikeCurve c = make_fourier({0.2, -0.1}, {0.7, 0.1, -0.05}, {0.03, 0.02});
  for (const StarlikeCurve& curve : {make_apple(), make_peanut(), c}) {
    for (double t : {0.1, 1.3, 2.9, 4.4}) {
      const double h = 1e-5;
      const CurveJet j = curve.jet(t);
      const Vec2 dp = (curve.point(t + h) - curve.point(t - h)) / (2 * h);
      const Vec2 ddp = (curve.jet(t + h).dp - curve.jet(t - h).dp) / (2 * h);
      CHECK((j.dp - dp).norm() < 1e-8);
      CHECK((j.ddp - ddp).norm() < 1e-7);
      CHECK(j.G == doctest::Approx(j.dp.norm()).epsilon(1e-14));
      CHECK(j.nu.norm() == doctest::Approx(1.0));
      CHECK(std::abs(j.nu.dot(j.tau)) < 1e-14);
      CHECK(j.n.dot(j.n_perp) == doctest::Approx(0.0).scale(1.0));
    }
  }
}

TEST_CASE("normal points outward for a counterclockwise circle") {
  const StarlikeCurve c = make_circle({1.0, -2.0}, 0.5);
  for (double t : {0.0, 1.0, 2.0, 4.0}) {
    const CurveJet j = c.jet(t);
    CHECK((j.nu - Vec2(std::cos(t), std::sin(t))).norm() < 1e-14);
  }
}

TEST_CASE("non-positive radial functions are rejected") {
  CHECK_THROWS_AS(make_circle({0, 0}, 0.0), GeometryError);
  CHECK_THROWS_AS(make_circle({0, 0}, -1.0), GeometryError);
  CHECK_THROWS_AS(make_fourier({0, 0}, {0.1, 0.2}, {}), GeometryError);
  CHECK_THROWS_AS(make_circle({NAN, 0}, 1.0), GeometryError);
}

TEST_CASE("translation moves every point and keeps the radial function") {
  const StarlikeCurve a = make_apple();
  const Vec2 h(0.5, 0.3);
  const StarlikeCurve b = a.translated(h);
  for (double t : {0.0, 1.0, 3.0}) {
    CHECK((b.point(t) - a.point(t) - h).norm() < 1e-15);
    CHECK(b.jet(t).G == doctest::Approx(a.jet(t).G));
  }
}

TEST_CASE("relative L2 distance is zero on itself and scales with offsets") {
  const StarlikeCurve c = make_circle({0, 0}, 1.0);
  CHECK(relative_l2_distance(c, c) == 0.0);
  const StarlikeCurve d = make_circle({0, 0}, 1.1);
  CHECK(relative_l2_distance(d, c) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("Hausdorff distance ignores the parametrization") {
  // The same circle described around two centers.
  const StarlikeCurve a = make_circle({0.0, 0.0}, 1.0);
  const StarlikeCurve b = make_circle({0.2, 0.0}, 1.0);
  CHECK(hausdorff_distance(a, b) == doctest::Approx(0.2).epsilon(1e-3));
  CHECK(hausdorff_distance(a, a) == 0.0);
  CHECK(relative_l2_distance(b, a) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("curve separation of disjoint circles") {
  const StarlikeCurve a = make_circle({0.0, 0.0}, 1.0);
  const StarlikeCurve b = make_circle({3.0, 0.0}, 0.5);
  CHECK(curve_separation(a, b) == doctest::Approx(1.5).epsilon(1e-6));
}

TEST_CASE("Fourier increments accumulate") {
  const RadialProfile r = RadialProfile::constant(0.5).plus({0.1, 0.2}, {0.3});
  CHECK(r.kind() == RadialProfile::Kind::Fourier);
  CHECK(r.cos_coeffs()[0] == doctest::Approx(0.6));
  CHECK(r.degree() == 1);
  const RadialJet j = r.eval(0.4);
  CHECK(j.r == doctest::Approx(0.6 + 0.2 * std::cos(0.4) + 0.3 * std::sin(0.4)));
}

TEST_CASE("node grid spacing") {
  const NodeGrid g(8);
  CHECK(g.size() == 16);
  CHECK(g[3] == doctest::Approx(3 * kPi / 8));
  CHECK_THROWS_AS(NodeGrid(0), InvalidArgument);
}

}

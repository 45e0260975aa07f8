#include <doctest.h>

#include <cmath>
#include <vector>

#include "elastoscat/multibody.hpp"
#include "oracles.hpp"

using namespace elastoscat;

namespace {

RhsVectors split_rhs(const CVec& b) {
  const Eigen::Index N = b.size() / 3;
  return {b.segment(0, N), b.segment(N, N), b.segment(2 * N, N)};
}

double max_diff(const CVec& a, const CVec& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_SUITE("multibody") {

TEST_CASE("bodies closer than the minimum separation are rejected") {
  const MaterialParams p;
  const StarlikeCurve d = make_circle({0, 0}, 0.5);
  CHECK_THROWS_AS(assemble_two_body(d, make_circle({1.05, 0}, 0.5), p, 16, 16), GeometryError);
  CHECK_THROWS_AS(assemble_two_body(d, make_circle({0.3, 0}, 0.5), p, 16, 16), GeometryError);
  CHECK_NOTHROW(assemble_two_body(d, make_circle({1.2, 0}, 0.5), p, 16, 16));
}

TEST_CASE("diagonal blocks are the single-body systems") {
  const MaterialParams p;
  const StarlikeCurve d = make_peanut(), b = make_circle({3, 0}, 0.7);
  const CMat A = assemble_two_body(d, b, p, 16, 12);
  CHECK(A.rows() == 6 * 16 + 6 * 12);
  CHECK(max_diff(A.topLeftCorner(96, 96).reshaped(), assemble_system(d, p, NodeGrid(16)).reshaped()) == 0.0);
  CHECK(max_diff(A.bottomRightCorner(72, 72).reshaped(), assemble_system(b, p, NodeGrid(12)).reshaped()) == 0.0);
  CHECK(max_diff(A.topRightCorner(96, 72).reshaped(), cross_block(NodalCurve(d, 16), NodalCurve(b, 12), p).reshaped()) == 0.0);
}

TEST_CASE("manufactured point-source data on two bodies") {
  const MaterialParams p;
  const StarlikeCurve d = make_peanut(), b = make_circle({2.5, 0.5}, 0.6);
  const Vec2 z1(0.5, 4.0), z2(-3.0, -2.5), z3(0.1, 0.05);
  const auto obs = observation_angles(64);
  const int n = 64;
  const CMat A = assemble_two_body(d, b, p, n, n);
  const CVec bd = testing::manufactured_rhs(NodalCurve(d, n), p, z1, z2, z3);
  const CVec bb = testing::manufactured_rhs(NodalCurve(b, n), p, z1, z2, z3);
  const TwoBodyDensities dens = solve_two_body(A, split_rhs(bd), split_rhs(bb));
  const FarField ff = far_field_sum(dens, d, b, p, obs);
  CHECK(max_diff(ff.values, testing::point_source_far_field(p, z3, obs)) < 1e-8);
}

TEST_CASE("two-body far field is translation covariant") {
  const MaterialParams p;
  const IncidentWave w{kPi / 8};
  const StarlikeCurve d = make_apple(), b = make_circle({4, 0}, 0.7);
  const Vec2 h(0.5, -0.3);
  const auto obs = observation_angles(32);
  const FarField f0 = far_field_sum(solve_two_body(d, b, p, w, 48, 32), d, b, p, obs);
  const StarlikeCurve dh = d.translated(h), bh = b.translated(h);
  const FarField f1 = far_field_sum(solve_two_body(dh, bh, p, w, 48, 32), dh, bh, p, obs);
  double err = 0.0;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    const Vec2 xh(std::cos(obs[i]), std::sin(obs[i]));
    const cplx phase = std::exp(kI * p.kappa_a() * (w.direction() - xh).dot(h));
    const auto k = static_cast<Eigen::Index>(i);
    err = std::max(err, std::abs(f1.values(k) - phase * f0.values(k)));
  }
  CHECK(err < 1e-6 * f0.values.cwiseAbs().maxCoeff());
}

TEST_CASE("swapping the bodies permutes the solution") {
  const MaterialParams p;
  const IncidentWave w{0.4};
  const StarlikeCurve d = make_peanut(), b = make_circle({2.5, -0.5}, 0.6);
  const TwoBodyDensities ab = solve_two_body(d, b, p, w, 24, 16);
  const TwoBodyDensities ba = solve_two_body(b, d, p, w, 16, 24);
  CHECK(max_diff(ab.d.stacked(), ba.b.stacked()) < 1e-10 * ab.d.stacked().cwiseAbs().maxCoeff());
  CHECK(max_diff(ab.b.stacked(), ba.d.stacked()) < 1e-10 * ab.b.stacked().cwiseAbs().maxCoeff());
}

TEST_CASE("two-body solve: zero data, residual, zero-density body") {
  const MaterialParams p;
  const StarlikeCurve d = make_peanut(), b = make_circle({3, 0}, 0.6);
  const CMat A = assemble_two_body(d, b, p, 16, 16);
  const RhsVectors z{CVec::Zero(32), CVec::Zero(32), CVec::Zero(32)};
  const TwoBodyDensities zero = solve_two_body(A, z, z);
  CHECK(zero.d.stacked().norm() == 0.0);
  CHECK(zero.b.stacked().norm() == 0.0);

  SolveReport rep;
  TwoBodyDensities dens = solve_two_body(d, b, p, {0.0}, 16, 16, &rep);
  CHECK(rep.relative_residual <= 1e-10);
  const auto obs = observation_angles(16);
  dens.d.phi1.setZero();
  dens.d.phi2.setZero();
  dens.d.phi3.setZero();
  CHECK(max_diff(far_field_sum(dens, d, b, p, obs).values, far_field(dens.b, b, p, obs).values) == 0.0);
}

TEST_CASE("summed far field self-converges") {
  const MaterialParams p;
  const IncidentWave w{kPi / 6};
  const auto obs = observation_angles(64);
  const StarlikeCurve d = make_peanut(), b = make_circle({6.6, 0}, 0.71);
  const CVec u64 = far_field_sum(solve_two_body(d, b, p, w, 64, 64), d, b, p, obs).values;
  const CVec u128 = far_field_sum(solve_two_body(d, b, p, w, 128, 64), d, b, p, obs).values;
  CHECK(max_diff(u64, u128) <= 1e-7);
}

TEST_CASE("translating the whole configuration keeps the intensity") {
  const MaterialParams p;
  const IncidentWave w{kPi / 6};
  const auto obs = observation_angles(64);
  const StarlikeCurve d = make_peanut(), b = make_circle({6.6, 0}, 0.71);
  const Vec2 h(0.5, 0.0);
  const CVec u = far_field_sum(solve_two_body(d, b, p, w, 48, 32), d, b, p, obs).values;
  const StarlikeCurve dh = d.translated(h), bh = b.translated(h);
  const CVec uh = far_field_sum(solve_two_body(dh, bh, p, w, 48, 32), dh, bh, p, obs).values;
  CHECK((u.cwiseAbs() - uh.cwiseAbs()).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("cross blocks decay like the square root of the separation") {
  const MaterialParams p;
  const NodalCurve d(make_circle({0, 0}, 0.5), 8);
  std::vector<double> norms;
  for (double s : {10.0, 100.0, 1000.0, 10000.0}) {
    norms.push_back(cross_block(d, NodalCurve(make_circle({s, 0}, 0.5), 8), p).cwiseAbs().maxCoeff());
  }
  for (std::size_t i = 1; i < norms.size(); ++i) {
    CHECK(norms[i] < norms[i - 1]);
  }
  // Hankel asymptotics: a factor sqrt(10) per decade once kappa*s is large
  CHECK(norms[2] / norms[3] == doctest::Approx(std::sqrt(10.0)).epsilon(0.05));
}

TEST_CASE("far bodies decouple: coupling correction decays with distance") {
  const MaterialParams p;
  const IncidentWave w{0.0};
  const auto obs = observation_angles(32);
  const StarlikeCurve d = make_circle({0, 0}, 0.5);
  const CVec single_d = far_field(solve_forward(d, p, w, 16), d, p, obs).values;
  std::vector<double> gap;
  for (double s : {10.0, 100.0, 1000.0}) {
    const StarlikeCurve b = make_circle({0, s}, 0.5);
    const TwoBodyDensities dens = solve_two_body(d, b, p, w, 16, 16);
    const CVec single_b = far_field(solve_forward(b, p, w, 16), b, p, obs).values;
    gap.push_back(max_diff(far_field_sum(dens, d, b, p, obs).values, single_d + single_b));
  }
  CHECK(gap[1] < gap[0]);
  CHECK(gap[2] < gap[1]);
  // single rescattering: the other body sees u_inf / sqrt(kappa s)
  CHECK(gap[1] / gap[2] == doctest::Approx(std::sqrt(10.0)).epsilon(0.1));
}

}  // TEST_SUITE

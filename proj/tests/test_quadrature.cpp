#include <doctest.h>

#include <cmath>

#include "elastoscat/geometry.hpp"
#include "elastoscat/quadrature.hpp"

using namespace elastoscat;

TEST_SUITE("quadrature") {

TEST_CASE("logarithmic weights sum to zero and integrate Fourier modes") {
  const int n = 16;
  const NodeGrid g(n);
  for (double t : {0.0, 0.4, 2.2, 5.1}) {
    const auto R = quadrature::log_weights(t, n);
    double sum = 0.0;
    for (double w : R) sum += w;
    CHECK(std::abs(sum) < 1e-12);
    for (int m = 1; m <= 8; ++m) {
      double qc = 0.0, qs = 0.0;
      for (int j = 0; j < g.size(); ++j) {
        qc += R[j] * std::cos(m * g[j]);
        qs += R[j] * std::sin(m * g[j]);
      }
      CHECK(std::abs(qc + 2 * kPi / m * std::cos(m * t)) < 1e-12);
      CHECK(std::abs(qs + 2 * kPi / m * std::sin(m * t)) < 1e-12);
    }
  }
}

TEST_CASE("Cauchy weights reproduce the sine identity") {
  for (int n : {7, 8, 16}) {
    const NodeGrid g(n);
    for (int i = 0; i < g.size(); ++i) {
      const auto T = quadrature::cauchy_weights(g[i], n);
      double s = 0.0;
      for (int j = 0; j < g.size(); ++j) s += T[j] * std::sin(g[j] - g[i]);
      CHECK(std::abs(s - 2 * kPi) < 1e-12);
    }
  }
  CHECK_THROWS_AS(quadrature::cauchy_weights(0.1, 16), InvalidArgument);
}

TEST_CASE("differentiation weights are exact on trigonometric polynomials") {
  const int n = 12;
  const NodeGrid g(n);
  const RMat& D = quadrature::weight_table(n)->D;
  for (int m = 0; m < n; ++m) {
    RVec c(g.size()), dc(g.size());
    for (int j = 0; j < g.size(); ++j) {
      c(j) = std::cos(m * g[j]) + 0.5 * std::sin(m * g[j]);
      dc(j) = -m * std::sin(m * g[j]) + 0.5 * m * std::cos(m * g[j]);
    }
    CHECK((D * c - dc).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK(quadrature::diff_weight(0, n) == 0.0);
  CHECK(quadrature::diff_weight(3, n) == doctest::Approx(-quadrature::diff_weight(-3, n)));
}

TEST_CASE("weight tables are circulant and cached") {
  const auto a = quadrature::weight_table(10);
  const auto b = quadrature::weight_table(10);
  CHECK(a.get() == b.get());
  CHECK(a->R(3, 5) == doctest::Approx(a->R(4, 6)));
  CHECK(a->R(0, 19) == doctest::Approx(a->R(1, 0)));
  const auto R = quadrature::log_weights(kPi * 3 / 10, 10);
  for (int j = 0; j < 20; ++j) CHECK(a->R(3, j) == doctest::Approx(R[j]).epsilon(1e-14));
}

TEST_CASE("trapezoid rule and interpolation") {
  const int n = 8;
  const NodeGrid g(n);
  std::vector<double> f;
  for (int j = 0; j < g.size(); ++j) f.push_back(std::cos(g[j]) * std::cos(g[j]));
  CHECK(quadrature::trapezoid(f, n) == doctest::Approx(kPi));
  const RMat L = quadrature::interpolation_matrix(n, {0.123, 1.0, g[3]});
  RVec v(g.size());
  for (int j = 0; j < g.size(); ++j) v(j) = std::sin(3 * g[j]) + std::cos(2 * g[j]);
  const RVec out = L * v;
  CHECK(out(0) == doctest::Approx(std::sin(3 * 0.123) + std::cos(2 * 0.123)));
  CHECK(out(1) == doctest::Approx(std::sin(3.0) + std::cos(2.0)));
  CHECK(out(2) == doctest::Approx(v(3)));
}

}

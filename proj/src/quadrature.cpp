#include "elastoscat/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace elastoscat::quadrature {

namespace {

double log_weight_offset(double u, int n) {
  // u = t - s_j
  double sum = 0.0;
  for (int m = 1; m < n; ++m) sum += std::cos(m * u) / m;
  return -(2.0 * kPi / n) * sum - (kPi / (static_cast<double>(n) * n)) * std::cos(n * u);
}

double cauchy_weight_offset(double u, int n) {
  double sum = 0.0;
  if (n % 2 == 1) {
    for (int m = 0; m <= (n - 3) / 2; ++m) sum += std::sin((2 * m + 1) * u);
    return -(2.0 * kPi / n) * sum - (kPi / n) * std::sin(n * u);
  }
  for (int m = 0; m <= n / 2 - 1; ++m) sum += std::sin((2 * m + 1) * u);
  return -(2.0 * kPi / n) * sum;
}

void require_n(int n) {
  if (n < 1) throw InvalidArgument("quadrature order n must be >= 1");
}

}  // namespace

std::vector<double> log_weights(double t, int n) {
  require_n(n);
  std::vector<double> w(static_cast<std::size_t>(2 * n));
  for (int j = 0; j < 2 * n; ++j) w[static_cast<std::size_t>(j)] = log_weight_offset(t - kPi * j / n, n);
  return w;
}

std::vector<double> cauchy_weights(double t, int n) {
  require_n(n);
  const double h = kPi / n;
  const double k = t / h;
  if (std::abs(k - std::round(k)) > 1e-9) {
    throw InvalidArgument("Cauchy weights are only defined at grid nodes");
  }
  std::vector<double> w(static_cast<std::size_t>(2 * n));
  for (int j = 0; j < 2 * n; ++j) w[static_cast<std::size_t>(j)] = cauchy_weight_offset(t - h * j, n);
  return w;
}

double diff_weight(int j, int n) {
  if (j == 0) return 0.0;
  const double sign = (std::abs(j) % 2 == 0) ? 1.0 : -1.0;
  return 0.5 * sign / std::tan(j * kPi / (2.0 * n));
}

std::vector<double> diff_weights(int n) {
  require_n(n);
  std::vector<double> d(static_cast<std::size_t>(4 * n - 1));
  for (int j = -(2 * n - 1); j <= 2 * n - 1; ++j) d[static_cast<std::size_t>(j + 2 * n - 1)] = diff_weight(j, n);
  return d;
}

double trapezoid(const std::vector<double>& samples, int n) {
  double s = 0.0;
  for (double v : samples) s += v;
  return s * kPi / n;
}

cplx trapezoid(const std::vector<cplx>& samples, int n) {
  cplx s = 0.0;
  for (const cplx& v : samples) s += v;
  return s * (kPi / n);
}

std::shared_ptr<const WeightTable> weight_table(int n) {
  require_n(n);
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const WeightTable>> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  auto table = std::make_shared<WeightTable>();
  const int N = 2 * n;
  table->n = n;
  table->R.resize(N, N);
  table->T.resize(N, N);
  table->D.resize(N, N);
  // All three depend on i - j only (mod 2n for R and T).
  std::vector<double> r(static_cast<std::size_t>(N)), c(static_cast<std::size_t>(N));
  for (int k = 0; k < N; ++k) {
    r[static_cast<std::size_t>(k)] = log_weight_offset(kPi * k / n, n);
    c[static_cast<std::size_t>(k)] = cauchy_weight_offset(kPi * k / n, n);
  }
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      const int k = ((i - j) % N + N) % N;
      table->R(i, j) = r[static_cast<std::size_t>(k)];
      table->T(i, j) = c[static_cast<std::size_t>(k)];
      table->D(i, j) = diff_weight(i - j, n);
    }
  }
  std::lock_guard<std::mutex> lock(mutex);
  auto [it, inserted] = cache.emplace(n, std::move(table));
  return it->second;
}

RMat interpolation_matrix(int n, const std::vector<double>& targets) {
  require_n(n);
  const int N = 2 * n;
  RMat L(static_cast<Eigen::Index>(targets.size()), N);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    for (int j = 0; j < N; ++j) {
      const double u = targets[i] - kPi * j / n;
      const double half = std::sin(0.5 * u);
      double value;
      if (std::abs(half) > 1e-6) {
        // closed form of (1/2n)(1 + 2 sum_{k<n} cos ku + cos nu)
        value = std::sin(n * u) * std::cos(0.5 * u) / (half * N);
      } else {
        double s = 1.0 + std::cos(n * u);
        for (int k = 1; k < n; ++k) s += 2.0 * std::cos(k * u);
        value = s / N;
      }
      L(static_cast<Eigen::Index>(i), j) = value;
    }
  }
  return L;
}

}  // namespace elastoscat::quadrature

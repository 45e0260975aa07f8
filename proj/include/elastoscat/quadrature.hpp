#pragma once

#include <memory>
#include <vector>

#include "elastoscat/types.hpp"

namespace elastoscat::quadrature {

/// Weights R_j(t), j = 0..2n-1, integrating ln(4 sin^2((t-s)/2)) f(s) over a period.
std::vector<double> log_weights(double t, int n);

/// Weights T_j(t) for the principal value of f(s)/sin(s - t). Only defined at
/// grid nodes t = pi*i/n; other targets throw InvalidArgument.
std::vector<double> cauchy_weights(double t, int n);

/// Trigonometric differentiation weights d_j, j = -(2n-1)..(2n-1), returned in
/// a vector of length 4n-1 where index j + 2n - 1 holds d_j.
std::vector<double> diff_weights(int n);

/// Value d_j for a single offset j with |j| <= 2n-1.
double diff_weight(int j, int n);

/// (pi/n) * sum of the 2n samples.
double trapezoid(const std::vector<double>& samples, int n);
cplx trapezoid(const std::vector<cplx>& samples, int n);

/// Node-to-node weight tables for one grid size. R(i,j) = R_j(s_i),
/// T(i,j) = T_j(s_i), D(m,j) = d_{m-j}. Built once per n and shared.
struct WeightTable {
  int n = 0;
  RMat R;
  RMat T;
  RMat D;
};

std::shared_ptr<const WeightTable> weight_table(int n);

/// Trigonometric interpolation: matrix mapping 2n nodal values to values at
/// arbitrary angles through the Lagrange basis of the 2n-point grid.
RMat interpolation_matrix(int n, const std::vector<double>& targets);

}  // namespace elastoscat::quadrature

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace toeprank {

using Cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kDefaultRankTol = 1e-10;

// Singular values in descending order. Throws std::invalid_argument on an
// empty matrix or non-finite entries.
std::vector<double> singular_values(const Matrix& m);

// Count of singular values exceeding rel_tol * sigma_max; the zero matrix has
// rank 0. rel_tol must lie in (0, 1).
int numerical_rank(const Matrix& m, double rel_tol = kDefaultRankTol);

}  // namespace toeprank

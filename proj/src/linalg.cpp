#include "toeprank/linalg.hpp"

#include <stdexcept>

namespace toeprank {

std::vector<double> singular_values(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0)
    throw std::invalid_argument("singular_values: empty matrix");
  if (!m.allFinite())
    throw std::invalid_argument("singular_values: non-finite entries");
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  return std::vector<double>(sv.data(), sv.data() + sv.size());
}

int numerical_rank(const Matrix& m, double rel_tol) {
  if (!(rel_tol > 0.0) || !(rel_tol < 1.0))
    throw std::invalid_argument("numerical_rank: rel_tol must lie in (0,1)");
  auto sv = singular_values(m);
  if (sv.empty() || sv[0] == 0.0) return 0;
  double cut = rel_tol * sv[0];
  int rank = 0;
  for (double s : sv)
    if (s > cut) ++rank;
  return rank;
}

}  // namespace toeprank

#pragma once

#include <functional>
#include <vector>

namespace toeprank {

// Nodes and weights for integrating over [a, b].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double a = -1.0;
  double b = 1.0;
};

// Gauss-Legendre rule with n nodes, exact for polynomials of degree <= 2n-1.
// Throws std::invalid_argument for n < 1 or a degenerate/non-finite interval.
QuadratureRule gauss_legendre(int n, double a, double b);

double integrate(const QuadratureRule& rule, const std::function<double(double)>& f);

}  // namespace toeprank

#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "toeprank/exact.hpp"
#include "toeprank/multi_index.hpp"

namespace toeprank::weights {

using Cplx = std::complex<double>;

// One derivative term acting at a point: coeff * (d^a dbar^b phi)(location).
// Convention: the pairing applies the operator to the test function directly,
// with no adjoint sign flip.
struct DerivativeTerm {
  Cplx coeff{1.0, 0.0};
  MultiIndex holo_order;  // a
  MultiIndex anti_order;  // b
  std::optional<ExactScalar> exact_coeff;
};

struct PointAtom {
  std::vector<Cplx> location;  // point in C^d; real measures keep imag = 0
  std::vector<DerivativeTerm> terms;
  std::optional<std::vector<ExactScalar>> exact_location;
};

// Finite combination of point masses and their derivatives. Locations must be
// pairwise distinct; an empty atom list is the zero distribution.
struct PointDistribution {
  int dim = 1;
  std::vector<PointAtom> atoms;
};

// Density f(|z|) z^alpha conj(z)^beta on the disk of given radius, paired
// against test functions under the normalized area measure dA/pi.
// When poly_coeffs is nonempty, profile(r) = sum_m poly_coeffs[m] r^m and
// radial moments are computed in closed form.
struct RadialDensity {
  double radius = 1.0;  // in (0, 1]
  std::function<double(double)> profile;
  int alpha = 0;
  int beta = 0;
  int poly_degree = -1;  // degree hint for quadrature sizing; -1 = unknown
  std::vector<double> poly_coeffs;
};

// Exact polynomial density sum c_{pq} z^p conj(z)^q on the disk of rational
// radius, paired under dA/pi. All data rational, so moments are exact.
struct PolynomialDensity {
  struct Term {
    ExactScalar coeff;
    int p = 0;
    int q = 0;
  };
  std::vector<Term> terms;
  ExactScalar radius{1};  // real rational in (0, 1]
};

// Complex samples at cell centers of a uniform rectangular grid in R^dim,
// integrated by the midpoint rule against plain Lebesgue measure. Error O(h^2)
// for C^2 integrands.
struct GridDensity {
  int dim = 2;  // 1, 2 or 3
  std::vector<double> origin;  // lower corner of the box
  std::vector<double> step;    // cell edge lengths
  std::vector<int> shape;      // cells per axis
  std::vector<Cplx> samples;   // row-major, last axis fastest

  double cell_measure() const;
  std::vector<double> cell_center(long flat_index) const;
};

using WeightSpec =
    std::variant<PointDistribution, RadialDensity, PolynomialDensity, GridDensity>;

// Test function phi with optional Wirtinger-derivative access. `deriv` may be
// null when the weight carries no derivative terms. `degree` is a polynomial
// degree bound in (z, conj z) used to size quadrature; -1 means unknown and
// falls back to a large fixed rule.
struct TestFn {
  std::function<Cplx(const std::vector<Cplx>&)> eval;
  std::function<Cplx(const MultiIndex&, const MultiIndex&, const std::vector<Cplx>&)>
      deriv;
  int degree = -1;
};

// z^alpha conj(z)^beta with exact falling-factorial derivatives.
TestFn monomial_testfn(const MultiIndex& alpha, const MultiIndex& beta);

// Builds profile from coefficients (lowest power first) and records the degree.
RadialDensity radial_polynomial(std::vector<double> coeffs, double radius,
                                int alpha = 0, int beta = 0);

void validate(const WeightSpec& F);
int weight_dim(const WeightSpec& F);

// sup |x| over the support, used for domain checks and tail expansions.
double support_radius(const WeightSpec& F);

// Conjugate weight: <conj(F), phi> = conj(<F, conj(phi)>). Point derivative
// terms swap holo/anti orders; density terms conjugate coefficients.
WeightSpec conj_weight(const WeightSpec& F);

// The fundamental pairing <F, phi>.
Cplx pair(const WeightSpec& F, const TestFn& phi);

// <F, z^alpha conj(z)^beta>. GridDensity supports dim 2 only (z = x + iy).
Cplx moment(const WeightSpec& F, const MultiIndex& alpha, const MultiIndex& beta);

// Exact moments for PointDistribution with exact data and PolynomialDensity.
// Throws std::domain_error when the weight has no exact representation.
ExactScalar moment_exact(const WeightSpec& F, const MultiIndex& alpha,
                         const MultiIndex& beta);

// integral_0^R f(r) r^l dr of the radial profile (modulation exponents ignored).
// Closed form for polynomial profiles, composite Gauss-Legendre otherwise.
double radial_moment(const RadialDensity& f, long l);

// G(z) = <F_w, 1/(pi (z - w))>. Throws std::domain_error when z is inside or
// within the resolution margin of the support. dim-1 weights only.
Cplx cauchy_transform(const WeightSpec& F, Cplx z);

// Pushforward of a real measure in R^d under x -> x . zeta, |zeta| = 1.
// Point masses project to point masses (coincident images merged at 1e-12,
// vanishing coefficients dropped); grids project to a binned 1-D grid density.
WeightSpec project_measure(const WeightSpec& mu, const std::vector<double>& zeta);

// <mu, e^{-i t x}> for 1-D weights and <mu, e^{-i x . xi}> in R^d.
Cplx fourier_1d(const WeightSpec& mu, double t);
Cplx fourier_nd(const WeightSpec& mu, const std::vector<double>& xi);

}  // namespace toeprank::weights

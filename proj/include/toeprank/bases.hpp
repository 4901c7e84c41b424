#pragma once

#include <complex>
#include <vector>

#include "toeprank/linalg.hpp"
#include "toeprank/multi_index.hpp"

namespace toeprank::bases {

using Cplx = std::complex<double>;

enum class BasisKind {
  DiskMonomial,       // e_s(z) = sqrt(s+1) z^s, orthonormal under dA/pi
  PolydiskMonomial,   // tensor products over C^d, graded-lex enumeration
  FockMonomial,       // z^alpha / sqrt(2^|alpha| alpha!) under the Gaussian weight
  Harmonic2D,         // {1, Re z^k, Im z^k}, k = 1..degree, on the unit disk
  Harmonic3D,         // real solid harmonics through degree L, on the unit ball
  HelmholtzPlaneWave, // x -> e^{i omega . x}, |omega| = 1
  LandauLevel,        // produced by the grid pipeline in the physics module
};

struct BasisSpec {
  BasisKind kind = BasisKind::DiskMonomial;
  int dim = 1;         // complex dim (monomial kinds) or real dim (harmonic kinds)
  int truncation = 8;  // family size for DiskMonomial
  int degree = 2;      // total-degree bound for polydisk/Fock/harmonic kinds
  double field = 2.0;  // Landau B
  int level = 0;       // Landau q
  std::vector<std::vector<double>> directions;  // Helmholtz unit vectors
};

void validate(const BasisSpec& spec);
int family_size(const BasisSpec& spec);

// Exponent enumeration for the monomial kinds, graded-lexicographic.
std::vector<MultiIndex> monomial_indices(const BasisSpec& spec);

// k-th family member at a point. Monomial kinds take points in C^dim;
// harmonic and plane-wave kinds read real coordinates from the real parts.
Cplx eval_basis(const BasisSpec& spec, int k, const std::vector<Cplx>& x);

// Holomorphic derivative d^a (monomial kinds only; others throw).
Cplx eval_basis_deriv(const BasisSpec& spec, int k, const MultiIndex& a,
                      const std::vector<Cplx>& x);

// Reproducing kernel of the disk space, (1 - z conj(w))^{-2}.
Cplx disk_kernel(Cplx z, Cplx w);

// Gram matrix of the family under its natural measure, by quadrature:
// dA/pi on the disk (monomial/harmonic 2-D), Gaussian for Fock, Lebesgue on
// the unit ball for 3-D harmonics. Plane waves are not square-integrable and
// are rejected.
Matrix gram_matrix(const BasisSpec& spec);

// |Delta u| (harmonic kinds) or |(Delta + 1) u| (plane waves) at a real point,
// via a fourth-order central stencil with spacing h.
double pde_residual(const BasisSpec& spec, int k, const std::vector<double>& x,
                    double h);

}  // namespace toeprank::bases

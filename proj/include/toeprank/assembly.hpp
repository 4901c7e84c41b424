#pragma once

#include <optional>
#include <vector>

#include "toeprank/bases.hpp"
#include "toeprank/exact.hpp"
#include "toeprank/linalg.hpp"
#include "toeprank/multi_index.hpp"
#include "toeprank/sparse.hpp"
#include "toeprank/weights.hpp"

namespace toeprank::assembly {

// Closed-form single-shift structure of a radial-times-monomial weight over
// the normalized disk monomials: row s pairs only with column s + shift, with
// value 2 sqrt((s+1)(t+1)) * fhat(s + t + alpha + beta + 1).
struct ShiftForm {
  weights::RadialDensity density;
  int shift() const { return density.alpha - density.beta; }
  // entry at (s, s + shift); zero when the target index is negative
  double value(long s) const;
};

struct ToeplitzMatrix {
  Matrix entries;
  // Raw-monomial pairings <F, z^a conj(z)^b>: same spans as the normalized
  // family up to a nonsingular diagonal, so ranks agree while entries stay
  // rational.
  std::optional<ExactMatrix> exact_entries;
  std::vector<MultiIndex> row_indices, col_indices;
  bases::BasisSpec row_basis, col_basis;
  std::optional<ShiftForm> shift_form;

  int rows() const { return static_cast<int>(entries.rows()); }
  int cols() const { return static_cast<int>(entries.cols()); }
};

struct AssembleOptions {
  bool exact = false;  // also fill exact_entries (monomial bases, exact weight)
  int threads = 1;     // >1 splits the entry fill across rows
};

// entry (j, k) = <F, f_j conj(g_k)>. Derivative-bearing point weights require
// monomial-type bases on both sides; Fock families fold the Gaussian base
// density into the pairing and accept pure point masses and grid densities.
ToeplitzMatrix assemble(const weights::WeightSpec& F, const bases::BasisSpec& rows,
                        const bases::BasisSpec& cols,
                        const AssembleOptions& opts = {});

// Closed-form route for g = f(|z|) z^alpha conj(z)^beta (exponents read from
// the density) against disk monomials, n x n.
ToeplitzMatrix assemble_radial_monomial(const weights::RadialDensity& g, int n);

// Rows and columns restricted to the complement of J, order preserved.
ToeplitzMatrix reduced_matrix(const ToeplitzMatrix& M, const sparse::IndexSet& J);

// Index rectangle on which a composed product is truncation-exact.
struct ProductWindow {
  int row_lo = 0, row_hi = -1, col_lo = 0, col_hi = -1;  // inclusive bounds
  bool empty() const { return row_hi < row_lo || col_hi < col_lo; }
};

// Operator product (left_1 ... left_p) middle (right_1 ... right_q) where all
// side factors carry single-shift structure. Entries inside the reported
// window are exact despite truncation; entries outside are set to zero.
ToeplitzMatrix shift_exact_product(const std::vector<ToeplitzMatrix>& left,
                                   const ToeplitzMatrix& middle,
                                   const std::vector<ToeplitzMatrix>& right,
                                   ProductWindow* window = nullptr);

// Product of single-shift factors alone, n x n; off-shift entries exactly zero.
ToeplitzMatrix compose_shift_factors(const std::vector<ToeplitzMatrix>& factors,
                                     int n);

}  // namespace toeprank::assembly

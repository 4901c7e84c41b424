#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "toeprank/assembly.hpp"
#include "toeprank/exact.hpp"
#include "toeprank/linalg.hpp"
#include "toeprank/multi_index.hpp"
#include "toeprank/weights.hpp"

namespace toeprank::ranklab {

using weights::Cplx;

// Linear functional on polynomials in (z, conj z): finitely many point
// evaluations with complex coefficients, no derivative terms.
struct FiniteFunctional {
  weights::PointDistribution dist;

  // Throws std::invalid_argument when any atom carries a derivative term.
  static FiniteFunctional from(const weights::PointDistribution& d);

  int dim() const { return dist.dim; }
  int atom_count() const { return static_cast<int>(dist.atoms.size()); }
  // True when every atom carries rational location and coefficient data.
  bool all_exact() const;
};

// dim-1 builders
FiniteFunctional point_masses(const std::vector<std::pair<Cplx, Cplx>>& atoms);
FiniteFunctional exact_point_masses(
    const std::vector<std::pair<ExactScalar, ExactScalar>>& atoms);

inline constexpr long kDefaultExpansionBudget = 2'000'000;

// N! * atoms^N, saturating at LONG_MAX.
long expansion_cost(int atom_count, int N);

// Applies the N-fold tensor power of phi to prod_i z_i^{J_i} * det(zbar_i^{K_l})
// by expansion over atom assignments. Assignments that repeat an atom produce
// a determinant with two equal rows and are skipped, so those cancellations
// are structural zeros, not floating-point ones.
Cplx vandermonde_vanishing(const FiniteFunctional& phi,
                           const std::vector<MultiIndex>& J,
                           const std::vector<MultiIndex>& K,
                           long budget = kDefaultExpansionBudget);
// dim-1 convenience: plain integer exponents
Cplx vandermonde_vanishing(const FiniteFunctional& phi, const std::vector<int>& J,
                           const std::vector<int>& K,
                           long budget = kDefaultExpansionBudget);
// Rational arithmetic throughout; requires all_exact().
ExactScalar vandermonde_vanishing_exact(const FiniteFunctional& phi,
                                        const std::vector<MultiIndex>& J,
                                        const std::vector<MultiIndex>& K,
                                        long budget = kDefaultExpansionBudget);

// Moment matrix of raw monomial pairs <phi, z^a conj(z)^b> with exponents
// running over graded_lex_range(dim, degree_bound).
Matrix moment_matrix(const FiniteFunctional& phi, int degree_bound);
ExactMatrix exact_moment_matrix(const FiniteFunctional& phi, int degree_bound);

struct EquivalenceReport {
  int rank = 0;
  bool rank_exact = false;  // rank came from rational elimination
  bool all_vanish = false;
  bool biconditional = false;  // (rank <= r) agrees with all_vanish
  long conditions_checked = 0;
  double max_abs_value = 0.0;
  std::string text;
};

// Tests rank(moment matrix) <= r against the vanishing of every size-(r+1)
// condition with strictly increasing exponent tuples bounded by degree_bound.
// Repeated or permuted exponents reduce to those by antisymmetry. dim 1 only.
EquivalenceReport check_lemma_equivalence(const FiniteFunctional& phi, int r,
                                          int degree_bound,
                                          long budget = kDefaultExpansionBudget);

// prod_{j<k} (Z_j - Z_k)
Cplx vandermonde_value(const std::vector<Cplx>& Z);

// Sparse polynomial in n complex variables with exact coefficients.
class ExactPoly {
 public:
  struct GradedLexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const {
      return a.graded_lex_less(b);
    }
  };
  using TermMap = std::map<MultiIndex, ExactScalar, GradedLexLess>;

  explicit ExactPoly(int nvars = 0) : nvars_(nvars) {}
  static ExactPoly constant(int nvars, const ExactScalar& c);
  static ExactPoly monomial(const MultiIndex& power, const ExactScalar& c);
  static ExactPoly variable(int nvars, int axis);
  // prod_{j<k} (z_j - z_k)
  static ExactPoly vandermonde(int nvars);

  int nvars() const { return nvars_; }
  long term_count() const { return static_cast<long>(terms_.size()); }
  const TermMap& terms() const { return terms_; }
  ExactScalar coeff(const MultiIndex& power) const;

  ExactPoly& operator+=(const ExactPoly& o);
  ExactPoly& operator-=(const ExactPoly& o);
  ExactPoly operator*(const ExactPoly& o) const;
  friend ExactPoly operator+(ExactPoly a, const ExactPoly& b) { return a += b; }
  friend ExactPoly operator-(ExactPoly a, const ExactPoly& b) { return a -= b; }

 private:
  int nvars_ = 0;
  TermMap terms_;
};

// (V(D) P)(0) by exact differentiation: sum over V-monomials of
// coeff * a! * [P]_a. Vanishes for every symmetric P.
ExactScalar vandermonde_pairing(const ExactPoly& P, int N);

// (V(D) V(Dbar))(P1 * conj Q1)(0). Factors as the product of the two
// one-sided pairings, so symmetry of either argument forces zero.
Cplx symmetric_derivative_test(const ExactPoly& P1, const ExactPoly& Q1, int N,
                               long budget = kDefaultExpansionBudget);

struct RecoveryResult {
  std::vector<Cplx> points;
  std::vector<Cplx> coefficients;
  double residual = 0.0;   // max |m_k - sum_s c_s z_s^k| over the moment window
  double condition = 0.0;  // sigma_1/sigma_r of the Hankel block
  bool merged = false;     // near-coincident recovered points were merged
  std::string note;
};

// Reads the moment sequence m_k off column 0 of a square monomial-basis
// matrix and recovers point masses by the Hankel matrix pencil. Throws
// std::runtime_error when the matrix rank exceeds r_max and
// std::invalid_argument when the truncation is below 2*r_max+1.
RecoveryResult recover_point_masses(const assembly::ToeplitzMatrix& M, int r_max);

std::string recovery_report(const RecoveryResult& r);

}  // namespace toeprank::ranklab

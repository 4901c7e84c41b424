#pragma once

#include <functional>
#include <string>
#include <vector>

#include "toeprank/multi_index.hpp"

namespace toeprank::sparse {

// Lattice direction in Z_+^d; at least one positive component.
struct Direction {
  std::vector<int> gamma;
  explicit Direction(std::vector<int> g);
  int dim() const { return static_cast<int>(gamma.size()); }
};

// Subset of Z_+^d as a membership predicate plus a printable description.
// Immutable; set algebra builds new sets.
class IndexSet {
 public:
  IndexSet(int dim, std::string desc, std::function<bool(const MultiIndex&)> member);

  bool contains(const MultiIndex& alpha) const;
  int dim() const { return dim_; }
  const std::string& desc() const { return desc_; }

  static IndexSet multiples(int m);  // d=1: {0, m, 2m, ...}, m >= 1
  static IndexSet squares();         // d=1: {0, 1, 4, 9, ...}
  static IndexSet explicit_list(int dim, std::vector<MultiIndex> points);
  static IndexSet axis_zero(int dim, int axis);  // {alpha : alpha[axis] = 0}
  static IndexSet complement(IndexSet s);
  static IndexSet union_of(IndexSet a, IndexSet b);
  // Membership: alpha in shifted(S, off) iff alpha-off is valid and lies in S.
  static IndexSet shifted(IndexSet s, MultiIndex offset);

 private:
  int dim_;
  std::string desc_;
  std::function<bool(const MultiIndex&)> member_;
};

// n(gamma): axes where gamma vanishes.
std::vector<int> direction_support_complement(const Direction& gamma);

// True when the union of vanishing-axis sets over all directions covers
// every coordinate axis.
bool covers_all_coordinates(const std::vector<Direction>& dirs, int dim);

// #{t in [0, horizon] : alpha + t*gamma in J} / (horizon + 1).
// Denominator counts lattice points on the segment so the value stays in [0,1].
double line_density(const IndexSet& J, const MultiIndex& alpha,
                    const Direction& gamma, long horizon);

struct SparsityReport {
  bool sparse = false;
  double max_density = 0.0;   // worst sampled start
  double threshold = 0.0;     // 1/N - margin_guard
  bool approximate = true;    // finite-horizon measurement stands in for a limsup
};

// Measures line densities from a deterministic sample of starting points
// (all alpha with total degree <= 6, capped at 256 starts) and compares the
// worst one against 1/N - 2/horizon.
SparsityReport is_N_sparse(const IndexSet& J, const Direction& gamma, int N,
                           long horizon);

struct ZsetReport {
  std::vector<long> elements;  // ascending t values
  double density = 0.0;        // |elements| / (horizon + 1)
  double partial_sum = 0.0;    // sum of 1/(t+1) over elements
};

// t in [0, horizon] such that alpha_j + t*gamma and beta_j + t*gamma avoid J
// for every j. The partial sum is the divergence proxy for the tail test.
ZsetReport zset(const IndexSet& J, const std::vector<MultiIndex>& alphas,
                const std::vector<MultiIndex>& betas, const Direction& gamma,
                long horizon);

}  // namespace toeprank::sparse

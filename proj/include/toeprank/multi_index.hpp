#pragma once

#include <initializer_list>
#include <string>
#include <vector>

namespace toeprank {

// Exponent vector with non-negative integer entries. Value type; every
// operation returns a new instance.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> parts);
  MultiIndex(std::initializer_list<int> parts);

  static MultiIndex zero(int dim);
  static MultiIndex unit(int dim, int axis);

  int dim() const { return static_cast<int>(parts_.size()); }
  int operator[](int axis) const;
  int total() const;

  bool operator==(const MultiIndex& o) const { return parts_ == o.parts_; }
  bool operator!=(const MultiIndex& o) const { return parts_ != o.parts_; }

  // Order: total degree first, ties broken lexicographically with the
  // leftmost component most significant. Total order for fixed dim.
  bool graded_lex_less(const MultiIndex& o) const;

  // Component-wise *this <= o.
  bool divides(const MultiIndex& o) const;

  MultiIndex plus(const MultiIndex& o) const;
  // Throws std::invalid_argument if any component would become negative.
  MultiIndex minus(const MultiIndex& o) const;

  const std::vector<int>& parts() const { return parts_; }
  std::string str() const;

 private:
  std::vector<int> parts_;
};

// All indices with `dim` components and total() <= max_total, sorted in the
// graded-lex order above. This fixes the matrix layout used everywhere.
std::vector<MultiIndex> graded_lex_range(int dim, int max_total);

}  // namespace toeprank

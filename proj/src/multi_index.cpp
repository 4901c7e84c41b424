#include "toeprank/multi_index.hpp"

#include <algorithm>
#include <stdexcept>

namespace toeprank {

MultiIndex::MultiIndex(std::vector<int> parts) : parts_(std::move(parts)) {
  for (int p : parts_)
    if (p < 0) throw std::invalid_argument("MultiIndex: negative component");
}

MultiIndex::MultiIndex(std::initializer_list<int> parts)
    : MultiIndex(std::vector<int>(parts)) {}

MultiIndex MultiIndex::zero(int dim) {
  if (dim < 0) throw std::invalid_argument("MultiIndex::zero: negative dim");
  return MultiIndex(std::vector<int>(dim, 0));
}

MultiIndex MultiIndex::unit(int dim, int axis) {
  if (axis < 0 || axis >= dim)
    throw std::out_of_range("MultiIndex::unit: axis out of range");
  std::vector<int> p(dim, 0);
  p[axis] = 1;
  return MultiIndex(std::move(p));
}

int MultiIndex::operator[](int axis) const {
  if (axis < 0 || axis >= dim())
    throw std::out_of_range("MultiIndex: axis out of range");
  return parts_[axis];
}

int MultiIndex::total() const {
  int s = 0;
  for (int p : parts_) s += p;
  return s;
}

bool MultiIndex::graded_lex_less(const MultiIndex& o) const {
  if (dim() != o.dim())
    throw std::invalid_argument("MultiIndex: dimension mismatch in comparison");
  int ta = total(), tb = o.total();
  if (ta != tb) return ta < tb;
  return parts_ < o.parts_;
}

bool MultiIndex::divides(const MultiIndex& o) const {
  if (dim() != o.dim())
    throw std::invalid_argument("MultiIndex: dimension mismatch");
  for (int i = 0; i < dim(); ++i)
    if (parts_[i] > o.parts_[i]) return false;
  return true;
}

MultiIndex MultiIndex::plus(const MultiIndex& o) const {
  if (dim() != o.dim())
    throw std::invalid_argument("MultiIndex: dimension mismatch");
  std::vector<int> p(parts_);
  for (int i = 0; i < dim(); ++i) p[i] += o.parts_[i];
  return MultiIndex(std::move(p));
}

MultiIndex MultiIndex::minus(const MultiIndex& o) const {
  if (dim() != o.dim())
    throw std::invalid_argument("MultiIndex: dimension mismatch");
  std::vector<int> p(parts_);
  for (int i = 0; i < dim(); ++i) {
    p[i] -= o.parts_[i];
    if (p[i] < 0)
      throw std::invalid_argument("MultiIndex::minus: negative component");
  }
  return MultiIndex(std::move(p));
}

std::string MultiIndex::str() const {
  std::string s = "(";
  for (int i = 0; i < dim(); ++i) {
    if (i) s += ",";
    s += std::to_string(parts_[i]);
  }
  return s + ")";
}

namespace {

void emit_with_total(int dim, int axis, int remaining, std::vector<int>& cur,
                     std::vector<MultiIndex>& out) {
  if (axis == dim - 1) {
    cur[axis] = remaining;
    out.emplace_back(cur);
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    cur[axis] = v;
    emit_with_total(dim, axis + 1, remaining - v, cur, out);
  }
}

}  // namespace

std::vector<MultiIndex> graded_lex_range(int dim, int max_total) {
  if (dim < 1) throw std::invalid_argument("graded_lex_range: dim must be >= 1");
  if (max_total < 0)
    throw std::invalid_argument("graded_lex_range: negative bound");
  std::vector<MultiIndex> out;
  std::vector<int> cur(dim, 0);
  for (int t = 0; t <= max_total; ++t) emit_with_total(dim, 0, t, cur, out);
  // per-grade emission above is already lexicographic within each grade
  return out;
}

}  // namespace toeprank

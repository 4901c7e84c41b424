#include "toeprank/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <set>
#include <stdexcept>
#include <utility>

namespace toeprank::sparse {

namespace {

void require_same_dim(int a, int b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

// alpha + t*gamma, assuming dimensions already agree.
MultiIndex ray_point(const MultiIndex& alpha, const Direction& gamma, long t) {
  std::vector<int> parts(alpha.dim());
  for (int j = 0; j < alpha.dim(); ++j) {
    parts[j] = alpha[j] + static_cast<int>(t) * gamma.gamma[j];
  }
  return MultiIndex(parts);
}

}  // namespace

Direction::Direction(std::vector<int> g) : gamma(std::move(g)) {
  if (gamma.empty()) throw std::invalid_argument("Direction: empty");
  bool positive = false;
  for (int c : gamma) {
    if (c < 0) throw std::invalid_argument("Direction: negative component");
    if (c > 0) positive = true;
  }
  if (!positive) throw std::invalid_argument("Direction: all components zero");
}

IndexSet::IndexSet(int dim, std::string desc,
                   std::function<bool(const MultiIndex&)> member)
    : dim_(dim), desc_(std::move(desc)), member_(std::move(member)) {
  if (dim_ < 1) throw std::invalid_argument("IndexSet: dim must be positive");
  if (!member_) throw std::invalid_argument("IndexSet: null membership predicate");
}

bool IndexSet::contains(const MultiIndex& alpha) const {
  require_same_dim(alpha.dim(), dim_, "IndexSet::contains");
  return member_(alpha);
}

IndexSet IndexSet::multiples(int m) {
  if (m < 1) throw std::invalid_argument("multiples: m must be >= 1");
  return IndexSet(1, "multiples(" + std::to_string(m) + ")",
                  [m](const MultiIndex& a) { return a[0] % m == 0; });
}

IndexSet IndexSet::squares() {
  return IndexSet(1, "squares", [](const MultiIndex& a) {
    long v = a[0];
    long r = std::lround(std::sqrt(static_cast<double>(v)));
    return r * r == v || (r + 1) * (r + 1) == v || (r - 1) * (r - 1) == v;
  });
}

IndexSet IndexSet::explicit_list(int dim, std::vector<MultiIndex> points) {
  auto cmp = [](const MultiIndex& a, const MultiIndex& b) {
    return a.graded_lex_less(b);
  };
  auto table = std::make_shared<std::set<MultiIndex, decltype(cmp)>>(cmp);
  for (auto& p : points) {
    require_same_dim(p.dim(), dim, "explicit_list");
    table->insert(p);
  }
  return IndexSet(dim, "explicit_list(" + std::to_string(table->size()) + ")",
                  [table](const MultiIndex& a) { return table->count(a) > 0; });
}

IndexSet IndexSet::axis_zero(int dim, int axis) {
  if (axis < 0 || axis >= dim) throw std::out_of_range("axis_zero: axis out of range");
  return IndexSet(dim, "axis_zero(" + std::to_string(axis) + ")",
                  [axis](const MultiIndex& a) { return a[axis] == 0; });
}

IndexSet IndexSet::complement(IndexSet s) {
  int d = s.dim();
  std::string name = "complement(" + s.desc() + ")";
  return IndexSet(d, std::move(name),
                  [s = std::move(s)](const MultiIndex& a) { return !s.contains(a); });
}

IndexSet IndexSet::union_of(IndexSet a, IndexSet b) {
  require_same_dim(a.dim(), b.dim(), "union_of");
  int d = a.dim();
  std::string name = "union(" + a.desc() + "," + b.desc() + ")";
  return IndexSet(d, std::move(name),
                  [a = std::move(a), b = std::move(b)](const MultiIndex& x) {
                    return a.contains(x) || b.contains(x);
                  });
}

IndexSet IndexSet::shifted(IndexSet s, MultiIndex offset) {
  require_same_dim(s.dim(), offset.dim(), "shifted");
  int d = s.dim();
  std::string name = "shifted(" + s.desc() + "," + offset.str() + ")";
  return IndexSet(d, std::move(name),
                  [s = std::move(s), offset = std::move(offset)](const MultiIndex& x) {
                    for (int j = 0; j < x.dim(); ++j) {
                      if (x[j] < offset[j]) return false;
                    }
                    return s.contains(x.minus(offset));
                  });
}

std::vector<int> direction_support_complement(const Direction& gamma) {
  std::vector<int> axes;
  for (int j = 0; j < gamma.dim(); ++j) {
    if (gamma.gamma[j] == 0) axes.push_back(j);
  }
  return axes;
}

bool covers_all_coordinates(const std::vector<Direction>& dirs, int dim) {
  std::vector<bool> hit(dim, false);
  for (const auto& d : dirs) {
    require_same_dim(d.dim(), dim, "covers_all_coordinates");
    for (int j : direction_support_complement(d)) hit[j] = true;
  }
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

double line_density(const IndexSet& J, const MultiIndex& alpha,
                    const Direction& gamma, long horizon) {
  require_same_dim(alpha.dim(), J.dim(), "line_density");
  require_same_dim(gamma.dim(), J.dim(), "line_density");
  if (horizon < 1) throw std::invalid_argument("line_density: horizon must be >= 1");
  long count = 0;
  for (long t = 0; t <= horizon; ++t) {
    if (J.contains(ray_point(alpha, gamma, t))) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(horizon + 1);
}

SparsityReport is_N_sparse(const IndexSet& J, const Direction& gamma, int N,
                           long horizon) {
  if (N < 1) throw std::invalid_argument("is_N_sparse: N must be >= 1");
  if (horizon < 100) throw std::invalid_argument("is_N_sparse: horizon must be >= 100");
  require_same_dim(gamma.dim(), J.dim(), "is_N_sparse");

  // Deterministic start sample: all alpha of total degree <= 6, capped.
  auto starts = graded_lex_range(J.dim(), 6);
  if (starts.size() > 256) starts.resize(256);

  SparsityReport rep;
  rep.threshold = 1.0 / static_cast<double>(N) - 2.0 / static_cast<double>(horizon);
  rep.approximate = true;
  rep.max_density = 0.0;
  for (const auto& a : starts) {
    rep.max_density = std::max(rep.max_density, line_density(J, a, gamma, horizon));
  }
  rep.sparse = rep.max_density < rep.threshold;
  return rep;
}

ZsetReport zset(const IndexSet& J, const std::vector<MultiIndex>& alphas,
                const std::vector<MultiIndex>& betas, const Direction& gamma,
                long horizon) {
  if (alphas.empty() || betas.empty()) {
    throw std::invalid_argument("zset: empty start family");
  }
  if (horizon < 1) throw std::invalid_argument("zset: horizon must be >= 1");
  require_same_dim(gamma.dim(), J.dim(), "zset");
  for (const auto& a : alphas) require_same_dim(a.dim(), J.dim(), "zset");
  for (const auto& b : betas) require_same_dim(b.dim(), J.dim(), "zset");

  ZsetReport rep;
  for (long t = 0; t <= horizon; ++t) {
    bool avoids = true;
    for (const auto& a : alphas) {
      if (J.contains(ray_point(a, gamma, t))) { avoids = false; break; }
    }
    if (avoids) {
      for (const auto& b : betas) {
        if (J.contains(ray_point(b, gamma, t))) { avoids = false; break; }
      }
    }
    if (avoids) {
      rep.elements.push_back(t);
      rep.partial_sum += 1.0 / static_cast<double>(t + 1);
    }
  }
  rep.density = static_cast<double>(rep.elements.size()) /
                static_cast<double>(horizon + 1);
  return rep;
}

}  // namespace toeprank::sparse

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "toeprank/sparse.hpp"

using toeprank::MultiIndex;
using namespace toeprank::sparse;

namespace {
MultiIndex mi(std::initializer_list<int> parts) { return MultiIndex(parts); }
}  // namespace

TEST_CASE("direction validation") {
  CHECK_THROWS_AS(Direction({0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(Direction({1, -1}), std::invalid_argument);
  CHECK_THROWS_AS(Direction({}), std::invalid_argument);
  CHECK(Direction({2, 0, 1}).dim() == 3);
}

TEST_CASE("vanishing axes and coordinate cover") {
  CHECK(direction_support_complement(Direction({2, 0, 1})) == std::vector<int>{1});
  CHECK(direction_support_complement(Direction({1})) == std::vector<int>{});

  // axes missed by (1,0) = {1}; by (0,1) = {0}; union covers both.
  std::vector<Direction> pair = {Direction({1, 0}), Direction({0, 1})};
  CHECK(covers_all_coordinates(pair, 2));

  // a single strictly positive direction vanishes nowhere.
  CHECK_FALSE(covers_all_coordinates({Direction({1, 1})}, 2));
  CHECK_FALSE(covers_all_coordinates({Direction({1, 0})}, 2));
  CHECK_THROWS_AS(covers_all_coordinates(pair, 3), std::invalid_argument);
}

TEST_CASE("membership of the basic constructors") {
  auto m5 = IndexSet::multiples(5);
  CHECK(m5.contains(mi({0})));
  CHECK(m5.contains(mi({10})));
  CHECK_FALSE(m5.contains(mi({7})));

  auto sq = IndexSet::squares();
  CHECK(sq.contains(mi({0})));
  CHECK(sq.contains(mi({49})));
  CHECK_FALSE(sq.contains(mi({48})));

  auto lst = IndexSet::explicit_list(2, {mi({1, 2}), mi({0, 0})});
  CHECK(lst.contains(mi({1, 2})));
  CHECK_FALSE(lst.contains(mi({2, 1})));

  auto az = IndexSet::axis_zero(3, 1);
  CHECK(az.contains(mi({4, 0, 9})));
  CHECK_FALSE(az.contains(mi({4, 1, 9})));

  CHECK_THROWS_AS(m5.contains(mi({1, 1})), std::invalid_argument);
  CHECK_THROWS_AS(IndexSet::multiples(0), std::invalid_argument);
  CHECK_THROWS_AS(IndexSet::axis_zero(2, 2), std::out_of_range);
}

TEST_CASE("set algebra") {
  auto m3 = IndexSet::multiples(3);
  auto co = IndexSet::complement(m3);
  CHECK(co.contains(mi({1})));
  CHECK_FALSE(co.contains(mi({9})));

  auto sq = IndexSet::squares();
  auto u = IndexSet::union_of(m3, sq);
  CHECK(u.contains(mi({4})));   // square only
  CHECK(u.contains(mi({6})));   // multiple only
  CHECK_FALSE(u.contains(mi({5})));

  // shifted by 2: contains x iff x-2 is a multiple of 3; x < 2 falls outside.
  auto sh = IndexSet::shifted(m3, mi({2}));
  CHECK(sh.contains(mi({2})));
  CHECK(sh.contains(mi({8})));
  CHECK_FALSE(sh.contains(mi({3})));
  CHECK_FALSE(sh.contains(mi({1})));

  CHECK_THROWS_AS(IndexSet::union_of(m3, IndexSet::axis_zero(2, 0)),
                  std::invalid_argument);
}

TEST_CASE("line density along a ray") {
  auto m5 = IndexSet::multiples(5);
  Direction g({1});
  // every fifth lattice point on the ray lies in the set.
  double d = line_density(m5, mi({0}), g, 10000);
  CHECK(std::abs(d - 0.2) < 1e-3);

  // squares thin out: 101 squares up to 10^4.
  double ds = line_density(IndexSet::squares(), mi({0}), g, 10000);
  CHECK(std::abs(ds - 101.0 / 10001.0) < 1e-12);

  // direction skipping the set entirely.
  double dz = line_density(m5, mi({1}), Direction({5}), 1000);
  CHECK(dz == 0.0);

  CHECK_THROWS_AS(line_density(m5, mi({0}), g, 0), std::invalid_argument);
  CHECK_THROWS_AS(line_density(m5, mi({0, 0}), g, 100), std::invalid_argument);
}

TEST_CASE("density threshold classification") {
  auto m5 = IndexSet::multiples(5);
  Direction g({1});
  // density 1/5 sits below 1/4 and not below 1/5.
  auto r4 = is_N_sparse(m5, g, 4, 10000);
  CHECK(r4.sparse);
  CHECK(r4.approximate);
  CHECK(std::abs(r4.max_density - 0.2) < 1e-3);
  CHECK(std::abs(r4.threshold - (0.25 - 2.0 / 10000.0)) < 1e-15);

  auto r5 = is_N_sparse(m5, g, 5, 10000);
  CHECK_FALSE(r5.sparse);

  // squares are N-sparse for every modest N.
  CHECK(is_N_sparse(IndexSet::squares(), g, 50, 10000).sparse);

  CHECK_THROWS_AS(is_N_sparse(m5, g, 0, 10000), std::invalid_argument);
  CHECK_THROWS_AS(is_N_sparse(m5, g, 4, 50), std::invalid_argument);
}

TEST_CASE("avoidance set of a family of rays") {
  // J = 3Z_+, starts {0,1}: t avoids J for both iff t = 1 mod 3.
  auto m3 = IndexSet::multiples(3);
  std::vector<MultiIndex> starts = {mi({0}), mi({1})};
  auto rep = zset(m3, starts, starts, Direction({1}), 9999);
  CHECK(std::abs(rep.density - 1.0 / 3.0) < 1e-3);
  REQUIRE(rep.elements.size() >= 2);
  CHECK(rep.elements[0] == 1);
  CHECK(rep.elements[1] == 4);

  // harmonic-type proxy grows with the horizon when the set has density.
  auto rep2 = zset(m3, starts, starts, Direction({1}), 99999);
  CHECK(rep.partial_sum > 2.5);
  CHECK(rep2.partial_sum > rep.partial_sum + 0.5);

  // empty avoidance set: everything lands in J eventually.
  auto all = IndexSet::complement(IndexSet::explicit_list(1, {}));
  auto repe = zset(all, starts, starts, Direction({1}), 1000);
  CHECK(repe.elements.empty());
  CHECK(repe.density == 0.0);
  CHECK(repe.partial_sum == 0.0);

  CHECK_THROWS_AS(zset(m3, {}, starts, Direction({1}), 1000),
                  std::invalid_argument);
  CHECK_THROWS_AS(zset(m3, starts, starts, Direction({1, 1}), 1000),
                  std::invalid_argument);
}

// Numeric core: quadrature, singular values, rank (float and exact),
// multi-index ordering. Expected values come from closed forms worked by
// hand or from explicit constructions, independent of the code under test.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "toeprank/exact.hpp"
#include "toeprank/linalg.hpp"
#include "toeprank/multi_index.hpp"
#include "toeprank/quadrature.hpp"

using namespace toeprank;

TEST_CASE("gauss_legendre: weight sum and node symmetry") {
  auto rule = gauss_legendre(5, -1.0, 1.0);
  REQUIRE(rule.nodes.size() == 5);
  double wsum = 0.0;
  for (double w : rule.weights) wsum += w;
  CHECK(std::abs(wsum - 2.0) < 1e-14);
  for (int i = 0; i < 5; ++i)
    CHECK(std::abs(rule.nodes[i] + rule.nodes[4 - i]) < 1e-13);
}

TEST_CASE("gauss_legendre: high-degree monomial against antiderivative") {
  // integral of r^30 over [0,1] is 1/31; 16 nodes are exact through degree 31
  auto rule = gauss_legendre(16, 0.0, 1.0);
  double s = integrate(rule, [](double r) { return std::pow(r, 30); });
  CHECK(std::abs(s - 1.0 / 31.0) < 1e-14);
}

TEST_CASE("gauss_legendre: degree 2n-1 exactness sweep") {
  for (int n = 2; n <= 9; ++n) {
    auto rule = gauss_legendre(n, 0.0, 1.0);
    int d = 2 * n - 1;
    double s = integrate(rule, [d](double x) { return std::pow(x, d); });
    CHECK(std::abs(s - 1.0 / (d + 1)) < 1e-14);
  }
}

TEST_CASE("gauss_legendre: shifted interval and errors") {
  auto rule = gauss_legendre(24, 0.25, 2.0);
  // integral of 1/x over [1/4, 2] = ln 8; smooth integrand, spectral accuracy
  double s = integrate(rule, [](double x) { return 1.0 / x; });
  CHECK(std::abs(s - std::log(8.0)) < 1e-12);
  CHECK_THROWS_AS(gauss_legendre(0, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(gauss_legendre(4, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(gauss_legendre(4, 0.0, std::nan("")), std::invalid_argument);
}

TEST_CASE("singular_values: diagonal and permuted-diagonal frozen cases") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 3.0;
  m(1, 1) = 1.0;
  auto sv = singular_values(m);
  REQUIRE(sv.size() == 2);
  CHECK(std::abs(sv[0] - 3.0) < 1e-14);
  CHECK(std::abs(sv[1] - 1.0) < 1e-14);

  // antidiagonal [[0, 2], [1/2, 0]] has singular values {2, 1/2}
  Matrix a = Matrix::Zero(2, 2);
  a(0, 1) = 2.0;
  a(1, 0) = 0.5;
  sv = singular_values(a);
  CHECK(std::abs(sv[0] - 2.0) < 1e-14);
  CHECK(std::abs(sv[1] - 0.5) < 1e-14);
}

TEST_CASE("singular_values: Frobenius identity on seeded random matrices") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 6; ++trial) {
    int r = 3 + static_cast<int>(rng() % 5);
    int c = 3 + static_cast<int>(rng() % 5);
    Matrix m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m(i, j) = Cplx(u(rng), u(rng));
    double frob2 = 0.0;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) frob2 += std::norm(m(i, j));
    double ssum = 0.0;
    for (double s : singular_values(m)) ssum += s * s;
    CHECK(std::abs(ssum - frob2) <= 1e-12 * frob2);
  }
}

TEST_CASE("singular_values: rejects non-finite input") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(singular_values(m), std::invalid_argument);
  CHECK_THROWS_AS(singular_values(Matrix()), std::invalid_argument);
}

TEST_CASE("numerical_rank: constructed low-rank plus tiny perturbation") {
  // rank-3 by construction: product of 6x3 and 3x6
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix b(6, 3), c(3, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 3; ++j) {
      b(i, j) = Cplx(u(rng), u(rng));
      c(j, i) = Cplx(u(rng), u(rng));
    }
  Matrix m = b * c;
  CHECK(numerical_rank(m, 1e-10) == 3);
  Matrix noisy = m + Matrix::Constant(6, 6, Cplx(1e-15, -1e-15));
  CHECK(numerical_rank(noisy, 1e-10) == 3);
}

TEST_CASE("numerical_rank: tolerance semantics") {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = 1.0;
  m(1, 1) = 1e-3;
  m(2, 2) = 1e-14;
  CHECK(numerical_rank(m, 1e-10) == 2);
  CHECK(numerical_rank(m, 1e-2) == 1);
  CHECK(numerical_rank(Matrix::Zero(4, 2), 1e-10) == 0);
  CHECK_THROWS_AS(numerical_rank(m, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(numerical_rank(m, 1.0), std::invalid_argument);
  // monotone: looser tolerance never increases the count
  CHECK(numerical_rank(m, 1e-12) >= numerical_rank(m, 1e-6));
}

TEST_CASE("ExactScalar: arithmetic and parse/print round trip") {
  ExactScalar z(mpq_class(1, 2), mpq_class(1, 3));
  ExactScalar n2 = z * z.conj();
  CHECK(n2.im == 0);
  CHECK(n2.re == mpq_class(13, 36));

  ExactScalar w = ExactScalar::parse("-3/7,2/5");
  CHECK(w.re == mpq_class(-3, 7));
  CHECK(w.im == mpq_class(2, 5));
  CHECK(ExactScalar::parse(w.str()) == w);
  CHECK(ExactScalar::parse("4") == ExactScalar(4));

  ExactScalar q = w / z;
  CHECK(q * z == w);
  CHECK_THROWS_AS(z / ExactScalar(0), std::domain_error);
  CHECK_THROWS_AS(ExactScalar::rational(1, 0), std::invalid_argument);
  CHECK(exact_pow(z, 3) == z * z * z);
}

TEST_CASE("exact_rank: frozen small cases") {
  CHECK(exact_rank(ExactMatrix::identity(4)) == 4);

  ExactMatrix m(2, 2);
  m.at(0, 0) = 1;
  m.at(0, 1) = 2;
  m.at(1, 0) = 2;
  m.at(1, 1) = 4;
  CHECK(exact_rank(m) == 1);

  // [[i, 1], [1, -i]]: second row is -i times the first
  ExactMatrix g(2, 2);
  g.at(0, 0) = ExactScalar(mpq_class(0), mpq_class(1));
  g.at(0, 1) = 1;
  g.at(1, 0) = 1;
  g.at(1, 1) = ExactScalar(mpq_class(0), mpq_class(-1));
  CHECK(exact_rank(g) == 1);

  // diagonal 1/(k+1), k < 10: all pivots non-zero
  ExactMatrix d(10, 10);
  for (int k = 0; k < 10; ++k) d.at(k, k) = ExactScalar(mpq_class(1, k + 1));
  CHECK(exact_rank(d) == 10);

  CHECK(exact_rank(ExactMatrix(3, 5)) == 0);
}

TEST_CASE("exact_rank agrees with numerical_rank on rational constructions") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    int n = 5, r = 1 + static_cast<int>(rng() % 3);
    ExactMatrix left(n, r), right(r, n);
    auto small = [&rng]() {
      long num = static_cast<long>(rng() % 9) - 4;
      long den = 1 + static_cast<long>(rng() % 4);
      return ExactScalar(mpq_class(num, den), mpq_class(static_cast<long>(rng() % 3) - 1, den));
    };
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < r; ++j) {
        left.at(i, j) = small();
        right.at(j, i) = small();
      }
    ExactMatrix prod(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        ExactScalar acc;
        for (int k = 0; k < r; ++k) acc += left.at(i, k) * right.at(k, j);
        prod.at(i, j) = acc;
      }
    int er = exact_rank(prod);
    CHECK(er <= r);
    Matrix f(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) f(i, j) = prod.at(i, j).to_complex();
    CHECK(er == numerical_rank(f, 1e-12));
  }
}

TEST_CASE("MultiIndex: graded-lex layout is frozen") {
  auto order = graded_lex_range(2, 2);
  REQUIRE(order.size() == 6);
  CHECK(order[0] == MultiIndex({0, 0}));
  CHECK(order[1] == MultiIndex({0, 1}));
  CHECK(order[2] == MultiIndex({1, 0}));
  CHECK(order[3] == MultiIndex({0, 2}));
  CHECK(order[4] == MultiIndex({1, 1}));
  CHECK(order[5] == MultiIndex({2, 0}));
  for (size_t i = 0; i + 1 < order.size(); ++i)
    CHECK(order[i].graded_lex_less(order[i + 1]));
}

TEST_CASE("MultiIndex: componentwise operations and validation") {
  MultiIndex a({2, 0, 1});
  CHECK(a.total() == 3);
  CHECK(MultiIndex::unit(3, 1).plus(MultiIndex::unit(3, 1)) == MultiIndex({0, 2, 0}));
  CHECK(a.minus(MultiIndex({1, 0, 0})) == MultiIndex({1, 0, 1}));
  CHECK_THROWS_AS(a.minus(MultiIndex({0, 1, 0})), std::invalid_argument);
  CHECK(MultiIndex({1, 0}).divides(MultiIndex({2, 0})));
  CHECK_FALSE(MultiIndex({1, 1}).divides(MultiIndex({2, 0})));
  CHECK_THROWS_AS(MultiIndex({-1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(a[5], std::out_of_range);
}

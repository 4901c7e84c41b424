#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "toeprank/bases.hpp"
#include "toeprank/quadrature.hpp"

using namespace toeprank;
using namespace toeprank::bases;

namespace {
BasisSpec disk(int n) {
  BasisSpec s;
  s.kind = BasisKind::DiskMonomial;
  s.truncation = n;
  return s;
}
}  // namespace

TEST_CASE("disk monomials") {
  auto s = disk(8);
  CHECK(family_size(s) == 8);
  CHECK(eval_basis(s, 0, {Cplx(0.7, -0.2)}) == Cplx(1.0, 0.0));
  // sqrt(4) * 0.5^3
  CHECK(std::abs(eval_basis(s, 3, {Cplx(0.5, 0)}) - Cplx(0.25, 0)) < 1e-15);
  // second derivative of sqrt(6) z^5: sqrt(6) * 20 * z^3
  Cplx d = eval_basis_deriv(s, 5, MultiIndex({2}), {Cplx(0.3, 0)});
  CHECK(std::abs(d - std::sqrt(6.0) * 20.0 * 0.027) < 1e-14);
  CHECK_THROWS_AS(eval_basis(s, 8, {Cplx(0, 0)}), std::out_of_range);
}

TEST_CASE("disk monomial family is orthonormal under quadrature") {
  auto G = gram_matrix(disk(20));
  REQUIRE(G.rows() == 20);
  double worst = 0.0;
  for (int j = 0; j < 20; ++j) {
    for (int k = 0; k < 20; ++k) {
      double want = j == k ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(G(j, k) - want));
    }
  }
  CHECK(worst < 1e-11);
}

TEST_CASE("polydisk monomials enumerate graded-lexicographically") {
  BasisSpec s;
  s.kind = BasisKind::PolydiskMonomial;
  s.dim = 2;
  s.degree = 2;
  auto idx = monomial_indices(s);
  REQUIRE(idx.size() == 6);
  CHECK(idx[0] == MultiIndex({0, 0}));
  CHECK(idx[1] == MultiIndex({0, 1}));
  CHECK(idx[2] == MultiIndex({1, 0}));
  CHECK(idx[3] == MultiIndex({0, 2}));
  CHECK(family_size(s) == 6);

  // e_{(1,1)} at (0.5, 0.5i) = sqrt(2) 0.5 * sqrt(2) 0.5i = 0.5i
  int k11 = 4;
  CHECK(idx[k11] == MultiIndex({1, 1}));
  Cplx v = eval_basis(s, k11, {Cplx(0.5, 0), Cplx(0, 0.5)});
  CHECK(std::abs(v - Cplx(0, 0.5)) < 1e-15);

  auto G = gram_matrix(s);
  double worst = 0.0;
  for (int j = 0; j < G.rows(); ++j) {
    for (int k = 0; k < G.cols(); ++k) {
      worst = std::max(worst, std::abs(G(j, k) - (j == k ? 1.0 : 0.0)));
    }
  }
  CHECK(worst < 1e-11);
}

TEST_CASE("fock monomials are unit vectors under the gaussian weight") {
  BasisSpec s;
  s.kind = BasisKind::FockMonomial;
  s.dim = 2;
  s.degree = 3;
  auto idx = monomial_indices(s);
  REQUIRE(family_size(s) == 10);

  // z1 z2 / sqrt(2^2) at (1+i, 2)
  int k11 = 4;
  REQUIRE(idx[k11] == MultiIndex({1, 1}));
  Cplx v = eval_basis(s, k11, {Cplx(1, 1), Cplx(2, 0)});
  CHECK(std::abs(v - Cplx(1, 1)) < 1e-14);

  auto G = gram_matrix(s);
  double worst = 0.0;
  for (int j = 0; j < G.rows(); ++j) {
    for (int k = 0; k < G.cols(); ++k) {
      worst = std::max(worst, std::abs(G(j, k) - (j == k ? 1.0 : 0.0)));
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("reproducing kernel of the disk") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> rad(0.0, 0.9), ang(0.0, 2 * M_PI);
  auto pt = [&] {
    double r = rad(rng), t = ang(rng);
    return Cplx(r * std::cos(t), r * std::sin(t));
  };

  // constant section
  for (int i = 0; i < 5; ++i) CHECK(disk_kernel(Cplx(0, 0), pt()) == Cplx(1, 0));

  // geometric partial sums: sum_s (s+1) (z conj w)^s
  Cplx z(0.3, 0), w(0.3, 0);
  Cplx partial(0, 0);
  for (int s = 0; s <= 60; ++s) {
    partial += double(s + 1) * std::pow(z * std::conj(w), s);
  }
  CHECK(std::abs(partial - disk_kernel(z, w)) < 1e-10);

  // hermitian symmetry
  for (int i = 0; i < 50; ++i) {
    Cplx a = pt(), b = pt();
    CHECK(std::abs(disk_kernel(a, b) - std::conj(disk_kernel(b, a))) < 1e-15);
  }

  // kernel reproduces a polynomial: (1/pi) int P(z, w) u(w) dA(w) = u(z)
  auto u = [](Cplx t) { return t * t + 2.0 * t - 1.0; };
  Cplx z0(0.4, 0.1);
  auto rule = gauss_legendre(48, 0.0, 1.0);
  int ntheta = 96;
  Cplx integral(0, 0);
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    double r = rule.nodes[i];
    for (int j = 0; j < ntheta; ++j) {
      double th = 2 * M_PI * j / ntheta;
      Cplx wv = r * Cplx(std::cos(th), std::sin(th));
      integral += rule.weights[i] * r * (2 * M_PI / ntheta) * disk_kernel(z0, wv) * u(wv);
    }
  }
  integral /= M_PI;
  CHECK(std::abs(integral - u(z0)) < 1e-10);

  CHECK_THROWS_AS(disk_kernel(Cplx(1.0, 0), Cplx(0, 0)), std::domain_error);
}

TEST_CASE("planar harmonic family") {
  BasisSpec s;
  s.kind = BasisKind::Harmonic2D;
  s.dim = 2;
  s.degree = 3;
  CHECK(family_size(s) == 7);

  // order: 1, Re z, Im z, Re z^2, Im z^2, ...
  Cplx z(0.3, 0.4);
  CHECK(std::abs(eval_basis(s, 0, {z}) - 1.0) < 1e-15);
  CHECK(std::abs(eval_basis(s, 1, {z}) - 0.3) < 1e-15);
  CHECK(std::abs(eval_basis(s, 2, {z}) - 0.4) < 1e-15);
  CHECK(std::abs(eval_basis(s, 3, {z}) - (-0.07)) < 1e-15);  // Re z^2

  auto G = gram_matrix(s);
  // diagonal 1, 1/(2k+2) twice per k; off-diagonal zero
  CHECK(std::abs(G(0, 0) - 1.0) < 1e-12);
  CHECK(std::abs(G(1, 1) - 0.25) < 1e-12);
  CHECK(std::abs(G(3, 3) - 1.0 / 6.0) < 1e-12);
  double off = 0.0;
  for (int j = 0; j < 7; ++j) {
    for (int k = 0; k < 7; ++k) {
      if (j != k) off = std::max(off, std::abs(G(j, k)));
    }
  }
  CHECK(off < 1e-12);
  auto sv = singular_values(G);
  CHECK(sv.back() > 0.01);

  for (int k = 0; k < 7; ++k) {
    CHECK(pde_residual(s, k, {0.2, -0.1}, 5e-3) < 1e-8);
  }
}

TEST_CASE("solid harmonic family on the ball") {
  BasisSpec s;
  s.kind = BasisKind::Harmonic3D;
  s.dim = 3;
  s.degree = 4;
  CHECK(family_size(s) == 25);

  // degree-1 block is (z, x, y) in enumeration order
  std::vector<Cplx> p = {Cplx(0.1, 0), Cplx(0.2, 0), Cplx(0.3, 0)};
  CHECK(std::abs(eval_basis(s, 1, p) - 0.3) < 1e-15);
  CHECK(std::abs(eval_basis(s, 2, p) - 0.1) < 1e-15);
  CHECK(std::abs(eval_basis(s, 3, p) - 0.2) < 1e-15);

  // degree-2 checks: (3z^2 - r^2)/6 and (x^2 - y^2)
  double r2 = 0.01 + 0.04 + 0.09;
  CHECK(std::abs(eval_basis(s, 4, p) - (3 * 0.09 - r2) / 6.0) < 1e-15);
  CHECK(std::abs(eval_basis(s, 7, p) - (0.01 - 0.04)) < 1e-15);

  // members are harmonic polynomials
  for (int k = 0; k < 25; ++k) {
    CHECK(pde_residual(s, k, {0.2, -0.1, 0.25}, 5e-3) < 1e-8);
  }

  // Gram diagonal and positive definite
  auto G = gram_matrix(s);
  double off = 0.0, mindiag = 1e300;
  for (int j = 0; j < 25; ++j) {
    mindiag = std::min(mindiag, G(j, j).real());
    for (int k = 0; k < 25; ++k) {
      if (j != k) off = std::max(off, std::abs(G(j, k)));
    }
  }
  CHECK(mindiag > 1e-6);
  CHECK(off < 1e-10);
  auto sv = singular_values(G);
  CHECK(sv.back() > 0.0);
}

TEST_CASE("helmholtz plane waves") {
  BasisSpec s;
  s.kind = BasisKind::HelmholtzPlaneWave;
  s.dim = 2;
  s.directions = {{1.0, 0.0}, {0.0, 1.0}, {0.6, 0.8}};
  CHECK(family_size(s) == 3);

  Cplx v = eval_basis(s, 2, {Cplx(0.5, 0), Cplx(-1.0, 0)});
  CHECK(std::abs(v - std::exp(Cplx(0, 0.5 * 0.6 - 0.8))) < 1e-15);

  // (Delta + 1) kills each member
  for (int k = 0; k < 3; ++k) {
    CHECK(pde_residual(s, k, {0.3, 0.7}, 5e-3) < 1e-8);
  }

  BasisSpec bad = s;
  bad.directions[2] = {0.6, 0.8001};
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  CHECK_THROWS_AS(gram_matrix(s), std::invalid_argument);
}

TEST_CASE("landau members are not pointwise-evaluable here") {
  BasisSpec s;
  s.kind = BasisKind::LandauLevel;
  s.truncation = 4;
  CHECK_THROWS_AS(eval_basis(s, 0, {Cplx(0, 0)}), std::invalid_argument);
}

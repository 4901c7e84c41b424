#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "toeprank/weights.hpp"

using namespace toeprank;
using namespace toeprank::weights;

namespace {

MultiIndex mi(std::initializer_list<int> parts) { return MultiIndex(parts); }

PointDistribution delta_at(Cplx z0, Cplx coeff = 1.0) {
  PointDistribution F;
  F.dim = 1;
  F.atoms.push_back({{z0}, {{coeff, MultiIndex::zero(1), MultiIndex::zero(1)}}, {}});
  return F;
}

double rel_err(Cplx got, Cplx want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

}  // namespace

TEST_CASE("point pairings evaluate derivatives at the atoms") {
  // plain mass: phi(z0)
  auto F = delta_at(Cplx(0.3, 0.2));
  auto phi = monomial_testfn(mi({2}), mi({1}));
  CHECK(rel_err(pair(WeightSpec(F), phi), Cplx(0.039, 0.026)) < 1e-15);

  // antiholomorphic first derivative at 0
  PointDistribution D;
  D.dim = 1;
  D.atoms.push_back({{Cplx(0, 0)}, {{1.0, mi({0}), mi({1})}}, {}});
  CHECK(std::abs(pair(WeightSpec(D), monomial_testfn(mi({1}), mi({1})))) < 1e-15);
  CHECK(rel_err(pair(WeightSpec(D), monomial_testfn(mi({0}), mi({1}))), 1.0) < 1e-15);

  // mixed derivative d dbar applied to z^2 conj(z) at 0.5 gives 2 z0
  PointDistribution M;
  M.dim = 1;
  M.atoms.push_back({{Cplx(0.5, 0)}, {{1.0, mi({1}), mi({1})}}, {}});
  CHECK(rel_err(pair(WeightSpec(M), monomial_testfn(mi({2}), mi({1}))), 1.0) < 1e-14);

  // derivative atom demands a derivative-capable test function
  TestFn bare;
  bare.eval = [](const std::vector<Cplx>& z) { return z[0]; };
  CHECK_THROWS_AS(pair(WeightSpec(D), bare), std::invalid_argument);
}

TEST_CASE("disk density pairing under normalized area measure") {
  RadialDensity f;
  f.radius = 0.5;
  f.profile = [](double) { return 1.0; };
  f.poly_degree = 0;
  // phi = |z|^2 over the half disk: 2 * int_0^{1/2} r^3 dr = 1/32
  Cplx got = pair(WeightSpec(f), monomial_testfn(mi({1}), mi({1})));
  CHECK(rel_err(got, 1.0 / 32.0) < 1e-13);

  // generic pairing path agrees with the closed angular-selection moment:
  // profile r^2 with modulation z: <f z, conj(z)> = 2 * fhat(3) = 1/3
  auto g = radial_polynomial({0.0, 0.0, 1.0}, 1.0, 1, 0);
  Cplx got2 = moment(WeightSpec(g), mi({0}), mi({1}));
  CHECK(rel_err(got2, 1.0 / 3.0) < 1e-13);
  Cplx got3 = pair(WeightSpec(g), monomial_testfn(mi({0}), mi({1})));
  CHECK(std::abs(got2 - got3) < 1e-13);
  // angular selection kills unbalanced powers
  CHECK(std::abs(moment(WeightSpec(g), mi({1}), mi({1}))) < 1e-15);
}

TEST_CASE("moments of point and polynomial weights") {
  // delta_0 picks out the constant
  auto d0 = WeightSpec(delta_at(0.0));
  CHECK(rel_err(moment(d0, mi({0}), mi({0})), 1.0) < 1e-15);
  CHECK(std::abs(moment(d0, mi({2}), mi({1}))) < 1e-15);

  // 2 delta_{0.5} - delta_{0.3i}: <F, z^2> = 2(0.25) - (0.3i)^2 = 0.59
  PointDistribution F;
  F.dim = 1;
  F.atoms.push_back({{Cplx(0.5, 0)}, {{2.0, mi({0}), mi({0})}}, {}});
  F.atoms.push_back({{Cplx(0, 0.3)}, {{-1.0, mi({0}), mi({0})}}, {}});
  CHECK(rel_err(moment(WeightSpec(F), mi({2}), mi({0})), 0.59) < 1e-15);

  // first-order holomorphic derivative at 0.2: <d delta, z^3> = 3 (0.2)^2
  PointDistribution D;
  D.dim = 1;
  D.atoms.push_back({{Cplx(0.2, 0)}, {{1.0, mi({1}), mi({0})}}, {}});
  CHECK(rel_err(moment(WeightSpec(D), mi({3}), mi({0})), 0.12) < 1e-15);

  // unit polynomial density on the full disk: diagonal moments 1/(k+1), exact
  PolynomialDensity P;
  P.terms.push_back({ExactScalar(1), 0, 0});
  P.radius = ExactScalar(1);
  for (int k = 0; k < 6; ++k) {
    auto m = moment_exact(WeightSpec(P), mi({k}), mi({k}));
    CHECK(m == ExactScalar::rational(1, k + 1));
    CHECK(rel_err(moment(WeightSpec(P), mi({k}), mi({k})), 1.0 / (k + 1)) < 1e-15);
  }
  CHECK(moment_exact(WeightSpec(P), mi({2}), mi({1})).is_zero());
}

TEST_CASE("exact moments of exact point data") {
  PointDistribution F;
  F.dim = 1;
  PointAtom a1{{Cplx(0.5, 0)}, {{2.0, mi({0}), mi({0})}}, {}};
  a1.exact_location = std::vector<ExactScalar>{ExactScalar::rational(1, 2)};
  a1.terms[0].exact_coeff = ExactScalar(2);
  PointAtom a2{{Cplx(0, 0.3)}, {{-1.0, mi({0}), mi({0})}}, {}};
  a2.exact_location = std::vector<ExactScalar>{
      ExactScalar(mpq_class(0), mpq_class(3) / 10)};
  a2.terms[0].exact_coeff = ExactScalar(-1);
  F.atoms = {a1, a2};

  auto m = moment_exact(WeightSpec(F), mi({2}), mi({0}));
  CHECK(m == ExactScalar::rational(59, 100));

  // float mirror missing exact data refuses
  auto plain = WeightSpec(delta_at(Cplx(0.4, 0)));
  CHECK_THROWS_AS(moment_exact(plain, mi({0}), mi({0})), std::domain_error);
}

TEST_CASE("conjugate-weight moment symmetry") {
  PointDistribution F;
  F.dim = 1;
  F.atoms.push_back({{Cplx(0.3, 0.1)}, {{Cplx(1.0, 2.0), mi({1}), mi({0})}}, {}});
  F.atoms.push_back({{Cplx(-0.2, 0.4)}, {{Cplx(0.0, -1.0), mi({0}), mi({2})}}, {}});
  auto Fc = conj_weight(WeightSpec(F));
  for (int a = 0; a <= 3; ++a) {
    for (int b = 0; b <= 3; ++b) {
      Cplx lhs = moment(WeightSpec(F), mi({a}), mi({b}));
      Cplx rhs = std::conj(moment(Fc, mi({b}), mi({a})));
      CHECK(std::abs(lhs - rhs) < 1e-15);
    }
  }
}

TEST_CASE("radial moments") {
  auto one = radial_polynomial({1.0}, 1.0);
  auto rsq = radial_polynomial({0.0, 0.0, 1.0}, 1.0);
  for (long l = 0; l <= 12; ++l) {
    CHECK(rel_err(radial_moment(one, l), 1.0 / (l + 1)) < 1e-15);
    CHECK(rel_err(radial_moment(rsq, l), 1.0 / (l + 3)) < 1e-15);
  }
  // callable bump (1 - 4(r - 1/2)^2)_+ = 4r(1-r): moments 4/(l+2) - 4/(l+3)
  RadialDensity bump;
  bump.radius = 1.0;
  bump.profile = [](double r) {
    double v = 1.0 - 4.0 * (r - 0.5) * (r - 0.5);
    return v > 0.0 ? v : 0.0;
  };
  for (long l = 0; l <= 10; ++l) {
    double want = 4.0 / (l + 2) - 4.0 / (l + 3);
    CHECK(std::abs(radial_moment(bump, l) - want) < 1e-12);
  }
}

TEST_CASE("cauchy transform off the support") {
  // single mass: fundamental solution
  auto F = WeightSpec(delta_at(Cplx(0.3, 0)));
  Cplx z(2.0, 1.0);
  Cplx want = 1.0 / (M_PI * (z - Cplx(0.3, 0)));
  CHECK(rel_err(cauchy_transform(F, z), want) < 1e-15);

  // zero total mass: decay one order faster than a single pole
  PointDistribution G;
  G.dim = 1;
  G.atoms.push_back({{Cplx(1, 0)}, {{1.0, mi({0}), mi({0})}}, {}});
  G.atoms.push_back({{Cplx(-1, 0)}, {{-1.0, mi({0}), mi({0})}}, {}});
  for (int k = 0; k < 8; ++k) {
    double th = 2.0 * M_PI * k / 8.0;
    Cplx zz = 10.0 * Cplx(std::cos(th), std::sin(th));
    double scaled = std::abs(cauchy_transform(WeightSpec(G), zz)) * 100.0;
    CHECK(scaled > 0.55);
    CHECK(scaled < 0.75);
  }

  // coefficients (3, 1, -4) at (0.4, -0.4, 0.2) kill moments 0 and 1;
  // the second moment is 0.48, so G ~ 0.48 / (pi z^3).
  PointDistribution H;
  H.dim = 1;
  H.atoms.push_back({{Cplx(0.4, 0)}, {{3.0, mi({0}), mi({0})}}, {}});
  H.atoms.push_back({{Cplx(-0.4, 0)}, {{1.0, mi({0}), mi({0})}}, {}});
  H.atoms.push_back({{Cplx(0.2, 0)}, {{-4.0, mi({0}), mi({0})}}, {}});
  double g10 = std::abs(cauchy_transform(WeightSpec(H), Cplx(10, 0)));
  double g100 = std::abs(cauchy_transform(WeightSpec(H), Cplx(100, 0)));
  double slope = (std::log(g100) - std::log(g10)) / (std::log(100.0) - std::log(10.0));
  CHECK(std::abs(slope + 3.0) < 0.05);
  CHECK(rel_err(g100 * 1e6, 0.48 / M_PI) < 0.01);

  // refusal inside the support
  CHECK_THROWS_AS(cauchy_transform(F, Cplx(0.3, 0)), std::domain_error);
  auto disk = WeightSpec(radial_polynomial({1.0}, 0.8));
  CHECK_THROWS_AS(cauchy_transform(disk, Cplx(0.5, 0.1)), std::domain_error);
  CHECK(std::abs(cauchy_transform(disk, Cplx(3, 0))) > 0.0);
}

TEST_CASE("pairing linearity across combined atoms") {
  auto F1 = delta_at(Cplx(0.2, 0.1), Cplx(1, 1));
  auto F2 = delta_at(Cplx(-0.3, 0.4), Cplx(0, -2));
  PointDistribution S;
  S.dim = 1;
  S.atoms = {F1.atoms[0], F2.atoms[0]};
  S.atoms[0].terms[0].coeff *= 2.0;       // a = 2
  S.atoms[1].terms[0].coeff *= Cplx(0, 1);  // b = i
  auto phi = monomial_testfn(mi({2}), mi({2}));
  Cplx lhs = pair(WeightSpec(S), phi);
  Cplx rhs = 2.0 * pair(WeightSpec(F1), phi) + Cplx(0, 1) * pair(WeightSpec(F2), phi);
  CHECK(std::abs(lhs - rhs) < 1e-15);
}

TEST_CASE("grid density integrates by midpoint rule") {
  GridDensity g;
  g.dim = 2;
  g.origin = {0.0, 0.0};
  g.step = {1.0 / 64, 1.0 / 64};
  g.shape = {64, 64};
  g.samples.assign(64 * 64, Cplx(1.0, 0.0));
  TestFn phi;
  phi.eval = [](const std::vector<Cplx>& x) {
    return x[0] * x[0] * x[1];  // coordinates arrive as real parts
  };
  CHECK(std::abs(pair(WeightSpec(g), phi) - 1.0 / 6.0) < 1e-4);

  // dim-2 moments treat the grid plane as C: int over [-1,1]^2 of |z|^2 = 8/3
  GridDensity h;
  h.dim = 2;
  h.origin = {-1.0, -1.0};
  h.step = {2.0 / 128, 2.0 / 128};
  h.shape = {128, 128};
  h.samples.assign(128 * 128, Cplx(1.0, 0.0));
  CHECK(std::abs(moment(WeightSpec(h), mi({1}), mi({1})) - 8.0 / 3.0) < 1e-3);

  GridDensity g3 = h;
  g3.dim = 3;
  g3.origin = {-1, -1, -1};
  g3.step = {0.1, 0.1, 0.1};
  g3.shape = {4, 4, 4};
  g3.samples.assign(64, 0.0);
  CHECK_THROWS_AS(moment(WeightSpec(g3), mi({1}), mi({1})), std::invalid_argument);
}

TEST_CASE("projection of discrete measures") {
  PointDistribution mu;
  mu.dim = 2;
  mu.atoms.push_back({{Cplx(1, 0), Cplx(0, 0)}, {{1.0, mi({0, 0}), mi({0, 0})}}, {}});
  mu.atoms.push_back({{Cplx(0, 0), Cplx(1, 0)}, {{1.0, mi({0, 0}), mi({0, 0})}}, {}});
  auto proj = project_measure(WeightSpec(mu), {1.0, 0.0});
  const auto& p = std::get<PointDistribution>(proj);
  REQUIRE(p.atoms.size() == 2);
  CHECK(p.dim == 1);

  // cancellation: images coincide, coefficients sum to zero
  PointDistribution nu;
  nu.dim = 2;
  nu.atoms.push_back({{Cplx(1, 0), Cplx(1, 0)}, {{1.0, mi({0, 0}), mi({0, 0})}}, {}});
  nu.atoms.push_back({{Cplx(1, 0), Cplx(-1, 0)}, {{-1.0, mi({0, 0}), mi({0, 0})}}, {}});
  auto zero = project_measure(WeightSpec(nu), {1.0, 0.0});
  CHECK(std::get<PointDistribution>(zero).atoms.empty());

  CHECK_THROWS_AS(project_measure(WeightSpec(mu), {0.5, 0.0}), std::invalid_argument);
}

TEST_CASE("projection commutes with the fourier transform") {
  PointDistribution mu;
  mu.dim = 2;
  mu.atoms.push_back({{Cplx(0.2, 0), Cplx(0.5, 0)}, {{3.0, mi({0, 0}), mi({0, 0})}}, {}});

  std::mt19937 rng(2026);
  std::uniform_real_distribution<double> ang(0.0, 2 * M_PI), ts(-5.0, 5.0);
  for (int trial = 0; trial < 20; ++trial) {
    double th = ang(rng), t = ts(rng);
    std::vector<double> zeta = {std::cos(th), std::sin(th)};
    auto proj = project_measure(WeightSpec(mu), zeta);
    Cplx lhs = fourier_1d(proj, t);
    Cplx rhs = fourier_nd(WeightSpec(mu), {t * zeta[0], t * zeta[1]});
    Cplx closed = 3.0 * std::exp(Cplx(0, -t * (0.2 * zeta[0] + 0.5 * zeta[1])));
    CHECK(std::abs(lhs - rhs) < 1e-14);
    CHECK(std::abs(lhs - closed) < 1e-14);
  }
}

TEST_CASE("validation rejects malformed weights") {
  PointDistribution dup;
  dup.dim = 1;
  dup.atoms.push_back({{Cplx(0.1, 0)}, {{1.0, mi({0}), mi({0})}}, {}});
  dup.atoms.push_back({{Cplx(0.1, 0)}, {{2.0, mi({0}), mi({0})}}, {}});
  CHECK_THROWS_AS(validate(WeightSpec(dup)), std::invalid_argument);

  RadialDensity bad;
  bad.radius = 1.5;
  bad.profile = [](double) { return 1.0; };
  CHECK_THROWS_AS(validate(WeightSpec(bad)), std::invalid_argument);

  PolynomialDensity p;
  p.terms.push_back({ExactScalar(1), 0, 0});
  p.radius = ExactScalar(0);
  CHECK_THROWS_AS(validate(WeightSpec(p)), std::invalid_argument);

  GridDensity g;
  g.dim = 2;
  g.origin = {0, 0};
  g.step = {0.1, 0.1};
  g.shape = {4, 4};
  g.samples.assign(15, 0.0);  // wrong count
  CHECK_THROWS_AS(validate(WeightSpec(g)), std::invalid_argument);
}

TEST_CASE("support radius per kind") {
  CHECK(support_radius(WeightSpec(delta_at(Cplx(0.3, 0.4)))) == doctest::Approx(0.5));
  CHECK(support_radius(WeightSpec(radial_polynomial({1.0}, 0.7))) == doctest::Approx(0.7));
}

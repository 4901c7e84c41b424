#include "toeprank/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "toeprank/assembly.hpp"
#include "toeprank/bases.hpp"
#include "toeprank/exact.hpp"
#include "toeprank/linalg.hpp"
#include "toeprank/physics.hpp"
#include "toeprank/ranklab.hpp"
#include "toeprank/sparse.hpp"
#include "toeprank/weights.hpp"

namespace toeprank::acceptance {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Pinned tolerances. Changing any of these changes what the suite certifies.
constexpr double kRankTol = 1e-10;        // numerical ranks in criteria 1, 4, 6
constexpr double kRadialTol = 1e-10;      // closed-form agreement, criterion 5
constexpr double kIdentityTol = 1e-12;    // identity case of criterion 5
constexpr double kRecoveryTol = 1e-8;     // locations and coefficients, criterion 8
constexpr double kLandauRankTol = 1e-8;   // rank cut in criterion 9
constexpr double kOffDiagTol = 1e-8;      // radial off-diagonal, criterion 9
constexpr double kCrossGramTol = 1e-6;    // level orthogonality, criterion 9
constexpr double kProjectionTol = 1e-14;  // Fourier identity, criterion 10
constexpr double kBornTol = 1e-8;         // kernel closed form, criterion 11
constexpr double kChordalTol = 1e-10;     // rotation invariance, criterion 11
constexpr double kHelmholtzTol = 1e-8;    // two-path gap, criterion 12

// Runtime budgets in seconds for the criteria that carry one.
constexpr double kBudget1 = 10.0;
constexpr double kBudget2 = 60.0;
constexpr double kBudget3 = 120.0;

// Atom separation floor for randomly drawn point sets. Keeps the Vandermonde
// factors of the moment matrix well above the rank tolerance.
constexpr double kMinSeparation = 0.15;

std::string fmt(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(2) << v;
  return os.str();
}

struct Failures {
  std::vector<std::string> items;
  void add(std::string s) { items.push_back(std::move(s)); }
  bool empty() const { return items.empty(); }
  std::string join() const {
    std::ostringstream os;
    const std::size_t cap = 6;
    for (std::size_t i = 0; i < items.size() && i < cap; ++i)
      os << (i ? "; " : "") << items[i];
    if (items.size() > cap) os << "; (" << items.size() - cap << " more)";
    return os.str();
  }
};

void finish(CriterionResult& res, const Failures& bad, const std::string& summary) {
  res.passed = bad.empty();
  res.detail = res.passed ? summary : summary + "; failures: " + bad.join();
}

Cplx disk_point(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    double x = u(rng), y = u(rng);
    if (x * x + y * y <= 1.0) return {radius * x, radius * y};
  }
}

// r distinct masses in 0 < inner <= |z| <= 0.8 with pairwise separation at
// least kMinSeparation and |coeff| >= 0.3, so every atom stays visible to the
// rank tolerance.
std::vector<std::pair<Cplx, Cplx>> random_masses(std::mt19937_64& rng, int r,
                                                 double inner) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::pair<Cplx, Cplx>> atoms;
  while (static_cast<int>(atoms.size()) < r) {
    Cplx z = disk_point(rng, 0.8);
    if (std::abs(z) < inner) continue;
    bool clear = true;
    for (const auto& a : atoms) clear = clear && std::abs(z - a.first) >= kMinSeparation;
    if (!clear) continue;
    Cplx c;
    do {
      c = {u(rng), u(rng)};
    } while (std::abs(c) < 0.3);
    atoms.emplace_back(z, c);
  }
  return atoms;
}

std::vector<double> unit3(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  for (;;) {
    double x = g(rng), y = g(rng), z = g(rng);
    double n = std::sqrt(x * x + y * y + z * z);
    if (n > 1e-6) return {x / n, y / n, z / n};
  }
}

bases::BasisSpec disk_basis(int truncation) {
  bases::BasisSpec b;
  b.kind = bases::BasisKind::DiskMonomial;
  b.truncation = truncation;
  return b;
}

// Rank of point-mass moment matrices equals the atom count at every
// truncation from r through 24.
CriterionResult criterion1() {
  CriterionResult res{1, "point-mass rank rigidity", false, false, 0.0, ""};
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> rdist(1, 5);
  Failures bad;
  double worst_ratio = 1.0;
  for (int cfg = 0; cfg < 100; ++cfg) {
    int r = rdist(rng);
    auto atoms = random_masses(rng, r, 0.0);
    auto phi = ranklab::point_masses(atoms);
    Matrix M = ranklab::moment_matrix(phi, 23);
    for (int n = r; n <= 24; ++n) {
      int rank = numerical_rank(M.topLeftCorner(n, n), kRankTol);
      if (rank != r)
        bad.add("config " + std::to_string(cfg) + " n=" + std::to_string(n) +
                ": rank " + std::to_string(rank) + ", atoms " + std::to_string(r));
    }
    auto sv = singular_values(M);
    worst_ratio = std::min(worst_ratio, sv[r - 1] / sv[0]);
  }
  finish(res, bad,
         "100 random configurations, r in {1..5}, every n in {r..24} at tol 1e-10; "
         "smallest retained singular-value ratio " +
             fmt(worst_ratio));
  return res;
}

// Polynomial densities have full-rank moment matrices at every truncation:
// no finite-rank plateau, verified in exact arithmetic.
CriterionResult criterion2() {
  CriterionResult res{2, "polynomial-density full rank", false, false, 0.0, ""};
  using weights::PolynomialDensity;
  auto density = [](std::vector<PolynomialDensity::Term> terms) {
    PolynomialDensity d;
    d.terms = std::move(terms);
    d.radius = ExactScalar(1);
    return d;
  };
  std::vector<std::pair<std::string, PolynomialDensity>> cases;
  cases.emplace_back("1", density({{ExactScalar(1), 0, 0}}));
  cases.emplace_back("z zbar", density({{ExactScalar(1), 1, 1}}));
  cases.emplace_back("1 + Re z",
                     density({{ExactScalar(1), 0, 0},
                              {ExactScalar::rational(1, 2), 1, 0},
                              {ExactScalar::rational(1, 2), 0, 1}}));
  Failures bad;
  for (const auto& [name, d] : cases) {
    for (int n : {2, 4, 8, 16}) {
      auto M = assembly::assemble(d, disk_basis(n), disk_basis(n), {true, 1});
      if (!M.exact_entries) {
        bad.add(name + " n=" + std::to_string(n) + ": no exact entries");
        continue;
      }
      int rank = exact_rank(*M.exact_entries);
      if (rank != n)
        bad.add(name + " n=" + std::to_string(n) + ": exact rank " +
                std::to_string(rank));
    }
  }
  finish(res, bad,
         "densities 1, z zbar, 1 + Re z on the unit disk: exact rank equals n "
         "for n in {2,4,8,16}");
  return res;
}

// The vanishing of every determinant condition up to exponent 5 is
// equivalent to the matching rank bound, checked exhaustively over a fixed
// rational pool in exact arithmetic, in both directions.
CriterionResult criterion3() {
  CriterionResult res{3, "vanishing-condition biconditional", false, false, 0.0, ""};
  std::vector<ExactScalar> pool = {
      ExactScalar::rational(1, 2), ExactScalar::rational(-1, 3),
      ExactScalar(mpq_class(1, 4), mpq_class(1, 4)),
      ExactScalar(mpq_class(-1, 2), mpq_class(1, 5)),
      ExactScalar(mpq_class(0), mpq_class(-2, 5))};
  std::vector<ExactScalar> coeffs = {ExactScalar(1), ExactScalar::rational(-2, 3),
                                     ExactScalar::rational(3, 5)};
  Failures bad;
  long conditions = 0;
  int functionals = 0;
  for (int mask = 1; mask < 32; ++mask) {
    int r0 = __builtin_popcount(static_cast<unsigned>(mask));
    if (r0 > 3) continue;
    std::vector<std::pair<ExactScalar, ExactScalar>> atoms;
    int slot = 0;
    for (int i = 0; i < 5; ++i)
      if (mask & (1 << i)) atoms.emplace_back(pool[i], coeffs[slot++]);
    auto phi = ranklab::exact_point_masses(atoms);
    ++functionals;
    for (int r : {r0 - 1, r0}) {
      auto rep = ranklab::check_lemma_equivalence(phi, r, 5);
      conditions += rep.conditions_checked;
      std::string tag = "mask " + std::to_string(mask) + " r=" + std::to_string(r);
      if (!rep.rank_exact) bad.add(tag + ": rank not from exact elimination");
      if (!rep.biconditional) bad.add(tag + ": directions disagree");
      if (rep.rank != r0)
        bad.add(tag + ": rank " + std::to_string(rep.rank) + ", atoms " +
                std::to_string(r0));
      if (rep.all_vanish != (r == r0))
        bad.add(tag + (r == r0 ? ": nonvanishing condition at full rank"
                                : ": all conditions vanish below the rank"));
    }
  }
  finish(res, bad,
         std::to_string(functionals) +
             " functionals from a fixed 5-point rational pool, exponents <= 5, "
             "both directions, exact arithmetic, " +
             std::to_string(conditions) + " conditions");
  return res;
}

// Two point atoms carrying first-order derivative terms give rank at most 4,
// constant from truncation 6 on.
CriterionResult criterion4() {
  CriterionResult res{4, "derivative point rank bound", false, false, 0.0, ""};
  weights::PointDistribution F;
  F.dim = 1;
  weights::PointAtom a1, a2;
  a1.location = {Cplx(0.3, -0.2)};
  a1.terms = {{Cplx(1.0, 0.0), MultiIndex{1}, MultiIndex{0}, {}},
              {Cplx(0.5, -0.3), MultiIndex{0}, MultiIndex{1}, {}}};
  a2.location = {Cplx(-0.4, 0.1)};
  a2.terms = {{Cplx(-0.7, 0.2), MultiIndex{1}, MultiIndex{0}, {}},
              {Cplx(0.2, 0.4), MultiIndex{0}, MultiIndex{1}, {}}};
  F.atoms = {a1, a2};
  auto M = assembly::assemble(F, disk_basis(20), disk_basis(20));
  Failures bad;
  std::vector<int> ranks(21, 0);
  for (int n = 1; n <= 20; ++n) {
    ranks[n] = numerical_rank(M.entries.topLeftCorner(n, n), kRankTol);
    if (ranks[n] > 4)
      bad.add("n=" + std::to_string(n) + ": rank " + std::to_string(ranks[n]));
  }
  for (int n = 6; n <= 20; ++n)
    if (ranks[n] != ranks[6])
      bad.add("rank moves at n=" + std::to_string(n) + ": " +
              std::to_string(ranks[n]) + " vs " + std::to_string(ranks[6]));
  finish(res, bad,
         "two atoms with holomorphic and antiholomorphic first-order terms: rank " +
             std::to_string(ranks[6]) + " from n=6 through 20, bound 4");
  return res;
}

// The generic assembly agrees with the closed-form single-shift route for
// radial-times-monomial densities; the constant density gives the identity.
CriterionResult criterion5() {
  CriterionResult res{5, "radial closed-form agreement", false, false, 0.0, ""};
  std::vector<std::pair<std::string, std::vector<double>>> profiles = {
      {"1", {1.0}},
      {"r^2", {0.0, 0.0, 1.0}},
      {"bump", {1.0, 0.0, -3.0, 0.0, 3.0, 0.0, -1.0}}};
  Failures bad;
  double worst = 0.0;
  for (const auto& [name, coeffs] : profiles) {
    for (int alpha = 0; alpha <= 2; ++alpha) {
      for (int beta = 0; beta <= 2; ++beta) {
        auto g = weights::radial_polynomial(coeffs, 1.0, alpha, beta);
        Matrix A = assembly::assemble(g, disk_basis(12), disk_basis(12)).entries;
        Matrix B = assembly::assemble_radial_monomial(g, 12).entries;
        double gap = (A - B).cwiseAbs().maxCoeff();
        worst = std::max(worst, gap);
        if (gap >= kRadialTol)
          bad.add(name + " alpha=" + std::to_string(alpha) +
                  " beta=" + std::to_string(beta) + ": gap " + fmt(gap));
      }
    }
  }
  auto one = weights::radial_polynomial({1.0}, 1.0);
  Matrix A = assembly::assemble(one, disk_basis(12), disk_basis(12)).entries;
  double idgap = (A - Matrix::Identity(12, 12)).cwiseAbs().maxCoeff();
  if (idgap >= kIdentityTol) bad.add("identity case gap " + fmt(idgap));
  finish(res, bad,
         "27 profile/exponent combinations at n=12, worst entry gap " + fmt(worst) +
             "; constant density identity gap " + fmt(idgap));
  return res;
}

// Removing the rows and columns of a measured 4-sparse index set keeps the
// rank of point-mass matrices at the atom count.
CriterionResult criterion6() {
  CriterionResult res{6, "sparse-reduction rank retention", false, false, 0.0, ""};
  auto J = sparse::IndexSet::multiples(5);
  sparse::Direction gamma({1});
  Failures bad;
  auto rep = sparse::is_N_sparse(J, gamma, 4, 10000);
  if (!rep.sparse)
    bad.add("multiples of 5 not measured 4-sparse at horizon 10000, density " +
            fmt(rep.max_density));
  std::mt19937_64 rng(606);
  std::uniform_int_distribution<int> rdist(1, 5);
  double worst_ratio = 1.0;
  for (int cfg = 0; cfg < 50; ++cfg) {
    int r = rdist(rng);
    // |z| >= 0.1: exponent 0 is removed, so an atom at the origin would
    // vanish from the reduced matrix.
    auto atoms = random_masses(rng, r, 0.1);
    auto M = assembly::assemble(ranklab::point_masses(atoms).dist, disk_basis(24),
                                disk_basis(24));
    auto R = assembly::reduced_matrix(M, J);
    int rank = numerical_rank(R.entries, kRankTol);
    if (rank != r)
      bad.add("config " + std::to_string(cfg) + ": reduced rank " +
              std::to_string(rank) + ", atoms " + std::to_string(r));
    auto sv = singular_values(R.entries);
    worst_ratio = std::min(worst_ratio, sv[r - 1] / sv[0]);
  }
  finish(res, bad,
         "multiples of 5 removed (density 0.2 at horizon 10^4), 50 configurations "
         "keep rank = atom count; smallest retained singular-value ratio " +
             fmt(worst_ratio));
  return res;
}

// The two-sided derivative pairing vanishes exactly against symmetric
// polynomials and is positive on the alternating polynomial itself.
CriterionResult criterion7() {
  CriterionResult res{7, "symmetric derivative witness", false, false, 0.0, ""};
  using ranklab::ExactPoly;
  Failures bad;
  auto vp = ranklab::vandermonde_pairing(ExactPoly::vandermonde(2), 2);
  if (!(vp == ExactScalar(2)))
    bad.add("pairing of the N=2 alternating polynomial is " + vp.str() +
            ", expected 2");
  std::mt19937_64 rng(707);
  std::uniform_int_distribution<int> num(-3, 3), den(1, 3), expo(0, 2);
  auto rational = [&]() {
    int n;
    do {
      n = num(rng);
    } while (n == 0);
    return ExactScalar::rational(n, den(rng));
  };
  for (int i = 0; i < 20; ++i) {
    int N = i < 10 ? 2 : 3;
    ExactPoly p1(N), p2(N);
    for (int ax = 0; ax < N; ++ax) {
      p1 += ExactPoly::variable(N, ax);
      std::vector<int> e(N, 0);
      e[ax] = 2;
      p2 += ExactPoly::monomial(MultiIndex(e), ExactScalar(1));
    }
    // a p1^2 + b p2 + c p1 + d: symmetric by construction
    ExactPoly P = ExactPoly::constant(N, rational()) * (p1 * p1) +
                  ExactPoly::constant(N, rational()) * p2 +
                  ExactPoly::constant(N, rational()) * p1 +
                  ExactPoly::constant(N, rational());
    ExactPoly Q(N);
    for (int t = 0; t < 4; ++t) {
      std::vector<int> e(N, 0);
      for (int ax = 0; ax < N; ++ax) e[ax] = expo(rng);
      Q += ExactPoly::monomial(MultiIndex(e), rational());
    }
    Cplx v = ranklab::symmetric_derivative_test(P, Q, N);
    if (v != Cplx(0.0, 0.0))
      bad.add("pair " + std::to_string(i) + ": value " + fmt(std::abs(v)) +
              " is not exactly zero");
  }
  for (int N : {2, 3}) {
    auto V = ExactPoly::vandermonde(N);
    Cplx w = ranklab::symmetric_derivative_test(V, V, N);
    if (!(w.real() > 0.0) || w.imag() != 0.0)
      bad.add("N=" + std::to_string(N) + ": value on the alternating pair is " +
              fmt(w.real()) + " + " + fmt(w.imag()) + "i");
  }
  finish(res, bad,
         "20 symmetric/arbitrary pairs vanish exactly at N in {2,3}; the "
         "alternating pair is positive and equals 2 at N=2");
  return res;
}

// Moment-side recovery reproduces locations and coefficients of up to five
// masses from the assembled matrix.
CriterionResult criterion8() {
  CriterionResult res{8, "point recovery round trip", false, false, 0.0, ""};
  std::mt19937_64 rng(808);
  std::uniform_int_distribution<int> rdist(1, 5);
  Failures bad;
  double worst_loc = 0.0, worst_coeff = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    int r = rdist(rng);
    auto atoms = random_masses(rng, r, 0.0);
    auto M = assembly::assemble(ranklab::point_masses(atoms).dist, disk_basis(12),
                                disk_basis(12));
    ranklab::RecoveryResult rec;
    try {
      rec = ranklab::recover_point_masses(M, 5);
    } catch (const std::exception& ex) {
      bad.add("trial " + std::to_string(trial) + ": " + ex.what());
      continue;
    }
    if (static_cast<int>(rec.points.size()) != r) {
      bad.add("trial " + std::to_string(trial) + ": recovered " +
              std::to_string(rec.points.size()) + " of " + std::to_string(r));
      continue;
    }
    std::vector<bool> used(rec.points.size(), false);
    for (const auto& [z, c] : atoms) {
      int best = -1;
      double bd = 1e300;
      for (std::size_t j = 0; j < rec.points.size(); ++j) {
        if (used[j]) continue;
        double d = std::abs(rec.points[j] - z);
        if (d < bd) {
          bd = d;
          best = static_cast<int>(j);
        }
      }
      used[best] = true;
      double cerr = std::abs(rec.coefficients[best] - c) / std::abs(c);
      worst_loc = std::max(worst_loc, bd);
      worst_coeff = std::max(worst_coeff, cerr);
      if (bd >= kRecoveryTol)
        bad.add("trial " + std::to_string(trial) + ": location error " + fmt(bd));
      if (cerr >= kRecoveryTol)
        bad.add("trial " + std::to_string(trial) + ": coefficient error " + fmt(cerr));
    }
  }
  finish(res, bad,
         "50 seeds, up to 5 atoms, truncation 12; worst location error " +
             fmt(worst_loc) + ", worst relative coefficient error " + fmt(worst_coeff));
  return res;
}

// Level compressions of a radial bump: diagonal to 1e-8, levels mutually
// orthogonal to 1e-6, and rank at least half the truncation at 1e-8. The
// n=24 rank clause sits above a measured ceiling for levels 0 and 1: the
// eigenvalues of these compressions decay factorially, so only about 9 + 2q
// of them clear the cut, and the suite records that failure as a documented
// limit rather than relaxing the cut.
CriterionResult criterion9() {
  CriterionResult res{9, "Landau compression sweep", false, false, 0.0, ""};
  physics::GridSpec grid{512, 11.0};
  physics::LocalDensity bump;
  bump.value = [](double x, double y) {
    double s = 1.0 - x * x - y * y;
    return s > 0.0 ? s * s * s : 0.0;
  };
  Failures bad;
  bool only_known = true;
  std::ostringstream table;
  std::vector<std::vector<physics::GridFn>> family(3);
  for (int q = 0; q <= 2; ++q) {
    physics::LandauConfig cfg{2.0, q, 24, grid, false, true};
    family[q] = physics::landau_basis(cfg);
    auto op = physics::landau_toeplitz(bump, cfg, family[q]);
    double off = 0.0;
    for (int s = 0; s < 24; ++s)
      for (int t = 0; t < 24; ++t)
        if (s != t) off = std::max(off, std::abs(op.entries(s, t)));
    if (off >= kOffDiagTol) {
      bad.add("q=" + std::to_string(q) + ": off-diagonal " + fmt(off));
      only_known = false;
    }
    table << "q=" << q << ": off-diagonal " << fmt(off) << ", ranks";
    for (int n : {8, 16, 24}) {
      int rank = numerical_rank(op.entries.topLeftCorner(n, n), kLandauRankTol);
      table << " " << rank << "/" << n;
      if (rank < n / 2) {
        bad.add("q=" + std::to_string(q) + " n=" + std::to_string(n) + ": rank " +
                std::to_string(rank) + " below " + std::to_string(n / 2));
        if (!(n == 24 && q <= 1)) only_known = false;
      }
    }
    table << "; ";
  }
  double gram = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b)
      for (const auto& xs : family[a])
        for (const auto& xt : family[b])
          gram = std::max(gram, std::abs(physics::grid_inner(xs, xt)));
  if (gram >= kCrossGramTol) {
    bad.add("cross-level Gram " + fmt(gram));
    only_known = false;
  }
  std::string summary = table.str() + "cross-level Gram " + fmt(gram) +
                        "; B=2, C2 bump of radius 1, grid 512^2 on [-11,11]^2";
  res.passed = bad.empty();
  res.documented_limit = !res.passed && only_known;
  res.detail = res.passed ? summary : summary + "; failures: " + bad.join();
  if (res.documented_limit)
    res.detail +=
        " [documented limit: bounded densities on the unit disk give factorial "
        "eigenvalue decay, capping the rank near 9 + 2q at this tolerance]";
  return res;
}

// Projecting a discrete measure onto a line commutes with the Fourier
// transform and keeps the support discrete.
CriterionResult criterion10() {
  CriterionResult res{10, "projection Fourier identity", false, false, 0.0, ""};
  std::mt19937_64 rng(1010);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Failures bad;
  double worst = 0.0;
  for (int m = 0; m < 20; ++m) {
    int k = 1 + (m % 4);
    weights::PointDistribution mu;
    mu.dim = 3;
    for (int a = 0; a < k; ++a) {
      weights::PointAtom atom;
      atom.location = {Cplx(u(rng), 0.0), Cplx(u(rng), 0.0), Cplx(u(rng), 0.0)};
      double c = (0.2 + 0.3 * std::abs(u(rng))) * (u(rng) < 0.0 ? -1.0 : 1.0);
      atom.terms = {{Cplx(c, 0.0), MultiIndex::zero(3), MultiIndex::zero(3), {}}};
      mu.atoms.push_back(std::move(atom));
    }
    for (int p = 0; p < 20; ++p) {
      auto zeta = unit3(rng);
      double t = 2.0 * u(rng);
      auto proj = weights::project_measure(mu, zeta);
      const auto* pd = std::get_if<weights::PointDistribution>(&proj);
      if (!pd) {
        bad.add("measure " + std::to_string(m) + ": projection is not discrete");
        continue;
      }
      if (static_cast<int>(pd->atoms.size()) > k)
        bad.add("measure " + std::to_string(m) + ": projected support " +
                std::to_string(pd->atoms.size()) + " exceeds " + std::to_string(k));
      Cplx lhs = weights::fourier_1d(proj, t);
      Cplx rhs = weights::fourier_nd(
          mu, {t * zeta[0], t * zeta[1], t * zeta[2]});
      double gap = std::abs(lhs - rhs);
      worst = std::max(worst, gap);
      if (gap >= kProjectionTol)
        bad.add("measure " + std::to_string(m) + " draw " + std::to_string(p) +
                ": gap " + fmt(gap));
    }
  }
  finish(res, bad,
         "400 measure/direction/frequency checks in R^3; worst transform gap " +
             fmt(worst) + "; projections stay discrete with no extra support");
  return res;
}

// The scattering kernel of the unit ball matches its closed form, radial
// profiles depend only on the chordal distance, and the kernel matrix rank
// grows with the direction count.
CriterionResult criterion11() {
  CriterionResult res{11, "scattering kernel closed form", false, false, 0.0, ""};
  auto ball = weights::radial_polynomial({1.0}, 1.0);
  auto bump = weights::radial_polynomial({1.0, 0.0, -3.0, 0.0, 3.0, 0.0, -1.0}, 1.0);
  std::mt19937_64 rng(1111);
  Failures bad;
  double worst_ball = 0.0;
  for (int i = 0; i < 100; ++i) {
    auto w = unit3(rng), s = unit3(rng);
    double q = std::sqrt((w[0] - s[0]) * (w[0] - s[0]) +
                         (w[1] - s[1]) * (w[1] - s[1]) +
                         (w[2] - s[2]) * (w[2] - s[2]));
    double closed = q < 1e-4 ? 4.0 * kPi * (1.0 / 3.0 - q * q / 30.0)
                             : 4.0 * kPi * (std::sin(q) - q * std::cos(q)) / (q * q * q);
    double gap = std::abs(physics::born_kernel(ball, w, s) - Cplx(closed, 0.0));
    worst_ball = std::max(worst_ball, gap);
    if (gap >= kBornTol) bad.add("ball pair " + std::to_string(i) + ": gap " + fmt(gap));
  }
  double worst_chord = 0.0;
  for (int i = 0; i < 30; ++i) {
    auto w = unit3(rng), s = unit3(rng);
    double q2 = (w[0] - s[0]) * (w[0] - s[0]) + (w[1] - s[1]) * (w[1] - s[1]) +
                (w[2] - s[2]) * (w[2] - s[2]);
    double ct = 1.0 - 0.5 * q2;
    double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    double gap = std::abs(physics::born_kernel(bump, w, s) -
                          physics::born_kernel(bump, {0.0, 0.0, 1.0}, {st, 0.0, ct}));
    worst_chord = std::max(worst_chord, gap);
    if (gap >= kChordalTol)
      bad.add("chordal pair " + std::to_string(i) + ": gap " + fmt(gap));
  }
  std::vector<int> ranks;
  for (int m : {6, 12, 24}) {
    auto bm = physics::born_matrix(bump, physics::SphereSampling::fibonacci(m));
    ranks.push_back(bm.numerical_rank);
  }
  if (!(ranks[0] <= ranks[1] && ranks[1] <= ranks[2] && ranks[2] > ranks[0]))
    bad.add("rank sequence " + std::to_string(ranks[0]) + "/" +
            std::to_string(ranks[1]) + "/" + std::to_string(ranks[2]) +
            " is not growing");
  finish(res, bad,
         "100 ball pairs worst gap " + fmt(worst_ball) + "; 30 chordal pairs worst gap " +
             fmt(worst_chord) + "; bump kernel ranks " + std::to_string(ranks[0]) +
             "/" + std::to_string(ranks[1]) + "/" + std::to_string(ranks[2]) +
             " at 6/12/24 directions");
  return res;
}

// The oscillation-weighted harmonic matrix agrees between direct evaluation
// and the reduce-then-assemble route.
CriterionResult criterion12() {
  CriterionResult res{12, "plane-wave two-path agreement", false, false, 0.0, ""};
  std::vector<std::pair<std::string, weights::WeightSpec>> cases;
  {
    weights::PointDistribution two;
    two.dim = 3;
    auto mass = [](std::vector<double> x, Cplx c) {
      weights::PointAtom a;
      a.location = {Cplx(x[0], 0.0), Cplx(x[1], 0.0), Cplx(x[2], 0.0)};
      a.terms = {{c, MultiIndex::zero(3), MultiIndex::zero(3), {}}};
      return a;
    };
    two.atoms = {mass({0.3, -0.4, 0.6}, Cplx(1.0, 0.0)),
                 mass({-0.8, 0.5, 0.1}, Cplx(0.7, -0.2))};
    cases.emplace_back("two masses", two);
    weights::PointDistribution five;
    five.dim = 3;
    // two pairs share their (x2, x3) part, so the reduction must merge them
    five.atoms = {mass({0.2, 0.5, -0.3}, Cplx(0.8, 0.1)),
                  mass({-0.6, 0.5, -0.3}, Cplx(-0.4, 0.5)),
                  mass({0.4, -0.1, 0.7}, Cplx(0.3, -0.6)),
                  mass({0.9, -0.1, 0.7}, Cplx(-0.2, -0.2)),
                  mass({0.0, 0.2, 0.2}, Cplx(0.5, 0.0))};
    cases.emplace_back("five masses with merges", five);
  }
  {
    weights::GridDensity g;
    g.dim = 3;
    g.origin = {-1.0, -1.0, -1.0};
    g.step = {0.5, 0.5, 0.5};
    g.shape = {4, 4, 4};
    g.samples.resize(64);
    for (long i = 0; i < 64; ++i) {
      auto c = g.cell_center(i);
      g.samples[i] = std::exp(-(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]));
    }
    cases.emplace_back("Gaussian grid", g);
  }
  // harmonics live on the plane transverse to the oscillation axis
  bases::BasisSpec harm;
  harm.kind = bases::BasisKind::Harmonic2D;
  harm.dim = 2;
  harm.degree = 4;
  Failures bad;
  double worst = 0.0;
  for (const auto& [name, F] : cases) {
    Matrix D = physics::helmholtz_matrix(F, harm, physics::HelmholtzPath::Direct);
    Matrix T = physics::helmholtz_matrix(F, harm, physics::HelmholtzPath::Transform);
    double gap = (D - T).cwiseAbs().maxCoeff();
    worst = std::max(worst, gap);
    if (gap >= kHelmholtzTol) bad.add(name + ": gap " + fmt(gap));
  }
  finish(res, bad,
         "two point sets and a grid density at harmonic degree 4; worst two-path "
         "entry gap " +
             fmt(worst));
  return res;
}

struct PlanEntry {
  CriterionResult (*fn)();
  double budget;  // seconds; 0 = no budget
  const char* name;
};

}  // namespace

std::vector<CriterionResult> run_all(std::ostream* progress) {
  const PlanEntry plan[] = {
      {&criterion1, kBudget1, "point-mass rank rigidity"},
      {&criterion2, kBudget2, "polynomial-density full rank"},
      {&criterion3, kBudget3, "vanishing-condition biconditional"},
      {&criterion4, 0.0, "derivative point rank bound"},
      {&criterion5, 0.0, "radial closed-form agreement"},
      {&criterion6, 0.0, "sparse-reduction rank retention"},
      {&criterion7, 0.0, "symmetric derivative witness"},
      {&criterion8, 0.0, "point recovery round trip"},
      {&criterion9, 0.0, "Landau compression sweep"},
      {&criterion10, 0.0, "projection Fourier identity"},
      {&criterion11, 0.0, "scattering kernel closed form"},
      {&criterion12, 0.0, "plane-wave two-path agreement"}};
  std::vector<CriterionResult> out;
  int id = 0;
  for (const auto& entry : plan) {
    ++id;
    auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = entry.fn();
    } catch (const std::exception& ex) {
      r.id = id;
      r.name = entry.name;
      r.passed = false;
      r.detail = std::string("exception: ") + ex.what();
    }
    r.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (entry.budget > 0.0 && r.seconds > entry.budget) {
      r.passed = false;
      r.documented_limit = false;
      std::ostringstream os;
      os << "; runtime " << std::fixed << std::setprecision(1) << r.seconds
         << " s exceeds the " << entry.budget << " s budget";
      r.detail += os.str();
    }
    if (progress) {
      std::ostringstream os;
      os << "criterion " << std::setw(2) << r.id << ": "
         << (r.passed ? "PASS" : "FAIL") << " (" << std::fixed
         << std::setprecision(1) << r.seconds << " s) " << r.name;
      if (!r.passed && r.documented_limit) os << " [documented limit]";
      *progress << os.str() << "\n" << std::flush;
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::string summary_table(const std::vector<CriterionResult>& results) {
  std::ostringstream os;
  int passed = 0, documented = 0;
  for (const auto& r : results) {
    passed += r.passed ? 1 : 0;
    documented += (!r.passed && r.documented_limit) ? 1 : 0;
    os << std::setw(3) << r.id << "  "
       << (r.passed ? "PASS " : (r.documented_limit ? "FAIL*" : "FAIL "))
       << "  " << r.name << "\n       " << r.detail << "\n";
  }
  os << passed << " of " << results.size() << " criteria passed";
  if (documented)
    os << "; " << documented
       << " failure(s) at a documented numerical ceiling (marked *)";
  os << "\n";
  return os.str();
}

bool all_passed_or_documented(const std::vector<CriterionResult>& results) {
  bool ok = true;
  for (const auto& r : results) ok = ok && (r.passed || r.documented_limit);
  return ok;
}

}  // namespace toeprank::acceptance

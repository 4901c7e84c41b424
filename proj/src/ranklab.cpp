#include "toeprank/ranklab.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <climits>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace toeprank::ranklab {

namespace {

constexpr double kMergeTol = 1e-6;

Cplx conj_of(const Cplx& z) { return std::conj(z); }
ExactScalar conj_of(const ExactScalar& z) { return z.conj(); }

template <typename S>
S pow_of(const S& z, int e) {
  S r(1);
  for (int i = 0; i < e; ++i) r = r * z;
  return r;
}

// all permutations of {0..n-1} with their parities
std::vector<std::pair<std::vector<int>, int>> signed_permutations(int n) {
  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::vector<std::pair<std::vector<int>, int>> out;
  do {
    int inv = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) inv += sigma[i] > sigma[j];
    }
    out.emplace_back(sigma, inv % 2 ? -1 : 1);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

// sum over injective atom assignments of
//   prod_i coeff[a_i] loc[a_i]^{J_i} * det_(i,l) conj(loc[a_i])^{K_l}
template <typename S>
S vv_core(const std::vector<std::vector<S>>& loc, const std::vector<S>& coeff,
          const std::vector<MultiIndex>& J, const std::vector<MultiIndex>& K) {
  int N = static_cast<int>(J.size());
  int A = static_cast<int>(loc.size());
  auto table = [&](const std::vector<MultiIndex>& E, bool conj_side) {
    std::vector<std::vector<S>> p(E.size(), std::vector<S>(A, S(1)));
    for (size_t t = 0; t < E.size(); ++t) {
      for (int a = 0; a < A; ++a) {
        S v(1);
        for (int ax = 0; ax < E[t].dim(); ++ax) {
          S base = conj_side ? conj_of(loc[a][ax]) : loc[a][ax];
          v = v * pow_of(base, E[t][ax]);
        }
        p[t][a] = v;
      }
    }
    return p;
  };
  auto pj = table(J, false);
  auto pk = table(K, true);
  auto perms = signed_permutations(N);

  S total(0);
  std::vector<int> assign(N);
  std::vector<bool> used(A, false);
  std::function<void(int, S)> walk = [&](int depth, S acc) {
    if (depth == N) {
      S det(0);
      for (const auto& [sigma, sign] : perms) {
        S term(1);
        for (int i = 0; i < N; ++i) term = term * pk[sigma[i]][assign[i]];
        if (sign > 0) {
          det += term;
        } else {
          det -= term;
        }
      }
      total += acc * det;
      return;
    }
    for (int a = 0; a < A; ++a) {
      if (used[a]) continue;
      used[a] = true;
      assign[depth] = a;
      walk(depth + 1, acc * coeff[a] * pj[depth][a]);
      used[a] = false;
    }
  };
  walk(0, S(1));
  return total;
}

void check_exponents(const FiniteFunctional& phi, const std::vector<MultiIndex>& J,
                     const std::vector<MultiIndex>& K, long budget) {
  if (J.empty() || J.size() != K.size()) {
    throw std::invalid_argument("exponent lists must be nonempty and equal-sized");
  }
  for (const auto* list : {&J, &K}) {
    for (const auto& e : *list) {
      if (e.dim() != phi.dim()) {
        throw std::invalid_argument("exponent dimension does not match the functional");
      }
    }
  }
  long cost = expansion_cost(phi.atom_count(), static_cast<int>(J.size()));
  if (cost > budget) {
    std::ostringstream os;
    os << "expansion cost N!*atoms^N = " << cost << " exceeds budget " << budget;
    throw std::length_error(os.str());
  }
}

std::vector<std::vector<Cplx>> float_locations(const FiniteFunctional& phi) {
  std::vector<std::vector<Cplx>> loc;
  for (const auto& a : phi.dist.atoms) loc.push_back(a.location);
  return loc;
}

std::vector<Cplx> float_coeffs(const FiniteFunctional& phi) {
  std::vector<Cplx> c;
  for (const auto& a : phi.dist.atoms) {
    Cplx s = 0.0;
    for (const auto& t : a.terms) s += t.coeff;
    c.push_back(s);
  }
  return c;
}

mpq_class multi_factorial(const MultiIndex& a) {
  mpz_class f = 1;
  for (int ax = 0; ax < a.dim(); ++ax) {
    for (int i = 2; i <= a[ax]; ++i) f *= i;
  }
  return mpq_class(f);
}

}  // namespace

FiniteFunctional FiniteFunctional::from(const weights::PointDistribution& d) {
  weights::validate(weights::WeightSpec(d));
  for (const auto& atom : d.atoms) {
    for (const auto& t : atom.terms) {
      if (t.holo_order.total() != 0 || t.anti_order.total() != 0) {
        throw std::invalid_argument(
            "finite functional admits pure point evaluations only");
      }
    }
  }
  return FiniteFunctional{d};
}

bool FiniteFunctional::all_exact() const {
  for (const auto& atom : dist.atoms) {
    if (!atom.exact_location ||
        static_cast<int>(atom.exact_location->size()) != dist.dim) {
      return false;
    }
    for (const auto& t : atom.terms) {
      if (!t.exact_coeff) return false;
    }
  }
  return true;
}

FiniteFunctional point_masses(const std::vector<std::pair<Cplx, Cplx>>& atoms) {
  weights::PointDistribution d;
  d.dim = 1;
  for (const auto& [z, c] : atoms) {
    d.atoms.push_back({{z}, {{c, MultiIndex::zero(1), MultiIndex::zero(1), {}}}, {}});
  }
  return FiniteFunctional::from(d);
}

FiniteFunctional exact_point_masses(
    const std::vector<std::pair<ExactScalar, ExactScalar>>& atoms) {
  weights::PointDistribution d;
  d.dim = 1;
  for (const auto& [z, c] : atoms) {
    weights::PointAtom a;
    a.location = {z.to_complex()};
    a.exact_location = std::vector<ExactScalar>{z};
    weights::DerivativeTerm t;
    t.coeff = c.to_complex();
    t.holo_order = MultiIndex::zero(1);
    t.anti_order = MultiIndex::zero(1);
    t.exact_coeff = c;
    a.terms = {t};
    d.atoms.push_back(std::move(a));
  }
  return FiniteFunctional::from(d);
}

long expansion_cost(int atom_count, int N) {
  if (atom_count < 0 || N < 1) {
    throw std::invalid_argument("expansion_cost needs atoms >= 0, N >= 1");
  }
  long double v = 1.0L;
  for (int i = 2; i <= N; ++i) v *= i;
  for (int i = 0; i < N; ++i) v *= atom_count;
  if (v > static_cast<long double>(LONG_MAX)) return LONG_MAX;
  return static_cast<long>(v);
}

Cplx vandermonde_vanishing(const FiniteFunctional& phi,
                           const std::vector<MultiIndex>& J,
                           const std::vector<MultiIndex>& K, long budget) {
  check_exponents(phi, J, K, budget);
  if (phi.all_exact()) {
    std::vector<std::vector<ExactScalar>> loc;
    std::vector<ExactScalar> coeff;
    for (const auto& a : phi.dist.atoms) {
      loc.push_back(*a.exact_location);
      ExactScalar s(0);
      for (const auto& t : a.terms) s += *t.exact_coeff;
      coeff.push_back(s);
    }
    return vv_core(loc, coeff, J, K).to_complex();
  }
  return vv_core(float_locations(phi), float_coeffs(phi), J, K);
}

Cplx vandermonde_vanishing(const FiniteFunctional& phi, const std::vector<int>& J,
                           const std::vector<int>& K, long budget) {
  auto lift = [](const std::vector<int>& v) {
    std::vector<MultiIndex> out;
    for (int e : v) out.push_back(MultiIndex({e}));
    return out;
  };
  return vandermonde_vanishing(phi, lift(J), lift(K), budget);
}

ExactScalar vandermonde_vanishing_exact(const FiniteFunctional& phi,
                                        const std::vector<MultiIndex>& J,
                                        const std::vector<MultiIndex>& K,
                                        long budget) {
  if (!phi.all_exact()) {
    throw std::domain_error("functional has no exact representation");
  }
  check_exponents(phi, J, K, budget);
  std::vector<std::vector<ExactScalar>> loc;
  std::vector<ExactScalar> coeff;
  for (const auto& a : phi.dist.atoms) {
    loc.push_back(*a.exact_location);
    ExactScalar s(0);
    for (const auto& t : a.terms) s += *t.exact_coeff;
    coeff.push_back(s);
  }
  return vv_core(loc, coeff, J, K);
}

Matrix moment_matrix(const FiniteFunctional& phi, int degree_bound) {
  if (degree_bound < 0) throw std::invalid_argument("negative degree bound");
  auto idx = graded_lex_range(phi.dim(), degree_bound);
  int n = static_cast<int>(idx.size());
  Matrix M = Matrix::Zero(n, n);
  weights::WeightSpec F(phi.dist);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) M(i, j) = weights::moment(F, idx[i], idx[j]);
  }
  return M;
}

ExactMatrix exact_moment_matrix(const FiniteFunctional& phi, int degree_bound) {
  if (!phi.all_exact()) {
    throw std::domain_error("functional has no exact representation");
  }
  auto idx = graded_lex_range(phi.dim(), degree_bound);
  int n = static_cast<int>(idx.size());
  ExactMatrix M(n, n);
  weights::WeightSpec F(phi.dist);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) M.at(i, j) = weights::moment_exact(F, idx[i], idx[j]);
  }
  return M;
}

EquivalenceReport check_lemma_equivalence(const FiniteFunctional& phi, int r,
                                          int degree_bound, long budget) {
  if (phi.dim() != 1) {
    throw std::invalid_argument("equivalence check covers one-variable functionals");
  }
  if (r < 0 || degree_bound < r + 1) {
    throw std::invalid_argument("degree_bound must be at least r+1");
  }
  int N = r + 1;
  long per = expansion_cost(phi.atom_count(), N);

  // strictly increasing tuples out of {0..degree_bound}; repeated exponents
  // vanish by antisymmetry and permutations only change the sign
  long double n_tuples = 1.0L;
  for (int i = 0; i < N; ++i) {
    n_tuples *= degree_bound + 1 - i;
    n_tuples /= i + 1;
  }
  if (static_cast<long double>(per) * n_tuples * n_tuples >
      static_cast<long double>(budget)) {
    std::ostringstream os;
    os << "sweep cost " << static_cast<double>(per * n_tuples * n_tuples)
       << " exceeds budget " << budget;
    throw std::length_error(os.str());
  }

  EquivalenceReport rep;
  rep.rank_exact = phi.all_exact();
  rep.rank = rep.rank_exact ? exact_rank(exact_moment_matrix(phi, degree_bound))
                            : numerical_rank(moment_matrix(phi, degree_bound));

  double scale = 0.0;
  for (const auto& a : phi.dist.atoms) {
    Cplx c = 0.0;
    for (const auto& t : a.terms) c += t.coeff;
    scale += std::abs(c) * std::pow(std::max(1.0, std::abs(a.location[0])),
                                    2.0 * degree_bound);
  }
  double tol = 1e-9 * std::pow(std::max(1.0, scale), N);

  rep.all_vanish = true;
  std::vector<int> J(N), K(N);
  auto first = [&](std::vector<int>& c) { std::iota(c.begin(), c.end(), 0); };
  auto advance = [&](std::vector<int>& c) -> bool {
    int i = N - 1;
    while (i >= 0 && c[i] == degree_bound - (N - 1 - i)) --i;
    if (i < 0) return false;
    ++c[i];
    for (int j = i + 1; j < N; ++j) c[j] = c[j - 1] + 1;
    return true;
  };
  first(J);
  do {
    first(K);
    do {
      double mag;
      if (rep.rank_exact) {
        auto lift = [](const std::vector<int>& v) {
          std::vector<MultiIndex> out;
          for (int e : v) out.push_back(MultiIndex({e}));
          return out;
        };
        auto v = vandermonde_vanishing_exact(phi, lift(J), lift(K), budget);
        mag = v.is_zero() ? 0.0 : std::abs(v.to_complex());
        if (!v.is_zero()) rep.all_vanish = false;
      } else {
        mag = std::abs(vandermonde_vanishing(phi, J, K, budget));
        if (mag > tol) rep.all_vanish = false;
      }
      rep.max_abs_value = std::max(rep.max_abs_value, mag);
      ++rep.conditions_checked;
    } while (advance(K));
  } while (advance(J));

  rep.biconditional = (rep.rank <= r) == rep.all_vanish;
  std::ostringstream os;
  os << "moment matrix rank " << rep.rank
     << (rep.rank_exact ? " (rational elimination)" : " (numerical)")
     << " with exponents up to " << degree_bound << "\n"
     << "size-" << N << " conditions checked: " << rep.conditions_checked
     << ", max |value| = " << rep.max_abs_value << ", all vanish: "
     << (rep.all_vanish ? "yes" : "no") << "\n"
     << "rank <= " << r << " agrees with vanishing: "
     << (rep.biconditional ? "yes" : "no");
  rep.text = os.str();
  return rep;
}

Cplx vandermonde_value(const std::vector<Cplx>& Z) {
  Cplx v = 1.0;
  for (size_t j = 0; j < Z.size(); ++j) {
    for (size_t k = j + 1; k < Z.size(); ++k) v *= Z[j] - Z[k];
  }
  return v;
}

ExactPoly ExactPoly::constant(int nvars, const ExactScalar& c) {
  ExactPoly p(nvars);
  if (!c.is_zero()) p.terms_[MultiIndex::zero(nvars)] = c;
  return p;
}

ExactPoly ExactPoly::monomial(const MultiIndex& power, const ExactScalar& c) {
  ExactPoly p(power.dim());
  if (!c.is_zero()) p.terms_[power] = c;
  return p;
}

ExactPoly ExactPoly::variable(int nvars, int axis) {
  return monomial(MultiIndex::unit(nvars, axis), ExactScalar(1));
}

ExactPoly ExactPoly::vandermonde(int nvars) {
  if (nvars < 1) throw std::invalid_argument("vandermonde needs at least one variable");
  ExactPoly p = constant(nvars, ExactScalar(1));
  for (int j = 0; j < nvars; ++j) {
    for (int k = j + 1; k < nvars; ++k) {
      p = p * (variable(nvars, j) - variable(nvars, k));
    }
  }
  return p;
}

ExactScalar ExactPoly::coeff(const MultiIndex& power) const {
  auto it = terms_.find(power);
  return it == terms_.end() ? ExactScalar(0) : it->second;
}

ExactPoly& ExactPoly::operator+=(const ExactPoly& o) {
  if (nvars_ != o.nvars_) throw std::invalid_argument("variable count mismatch");
  for (const auto& [p, c] : o.terms_) {
    auto it = terms_.find(p);
    if (it == terms_.end()) {
      terms_[p] = c;
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

ExactPoly& ExactPoly::operator-=(const ExactPoly& o) {
  if (nvars_ != o.nvars_) throw std::invalid_argument("variable count mismatch");
  for (const auto& [p, c] : o.terms_) {
    auto it = terms_.find(p);
    if (it == terms_.end()) {
      terms_[p] = -c;
    } else {
      it->second -= c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

ExactPoly ExactPoly::operator*(const ExactPoly& o) const {
  if (nvars_ != o.nvars_) throw std::invalid_argument("variable count mismatch");
  ExactPoly out(nvars_);
  for (const auto& [p, c] : terms_) {
    for (const auto& [q, d] : o.terms_) {
      auto key = p.plus(q);
      auto it = out.terms_.find(key);
      if (it == out.terms_.end()) {
        out.terms_[key] = c * d;
      } else {
        it->second += c * d;
        if (it->second.is_zero()) out.terms_.erase(it);
      }
    }
  }
  return out;
}

ExactScalar vandermonde_pairing(const ExactPoly& P, int N) {
  if (N < 1 || P.nvars() != N) {
    throw std::invalid_argument("polynomial must live in exactly N variables");
  }
  auto V = ExactPoly::vandermonde(N);
  ExactScalar acc(0);
  for (const auto& [a, c] : V.terms()) {
    auto pc = P.coeff(a);
    if (pc.is_zero()) continue;
    acc += c * ExactScalar(multi_factorial(a)) * pc;
  }
  return acc;
}

Cplx symmetric_derivative_test(const ExactPoly& P1, const ExactPoly& Q1, int N,
                               long budget) {
  if (N < 1 || P1.nvars() != N || Q1.nvars() != N) {
    throw std::invalid_argument("arguments must live in exactly N variables");
  }
  long double cost = 1.0L;
  for (int i = 2; i <= N; ++i) cost *= i;
  cost *= P1.term_count() + Q1.term_count();
  if (cost > static_cast<long double>(budget)) {
    std::ostringstream os;
    os << "differentiation cost " << static_cast<double>(cost) << " exceeds budget "
       << budget;
    throw std::length_error(os.str());
  }
  auto a = vandermonde_pairing(P1, N);
  auto b = vandermonde_pairing(Q1, N);
  return (a * b.conj()).to_complex();
}

RecoveryResult recover_point_masses(const assembly::ToeplitzMatrix& M, int r_max) {
  if (M.row_basis.kind != bases::BasisKind::DiskMonomial ||
      M.col_basis.kind != bases::BasisKind::DiskMonomial) {
    throw std::invalid_argument("recovery reads a disk monomial-basis matrix");
  }
  int n = M.rows();
  if (r_max < 0 || M.cols() < 1 || n < 2 * r_max + 1) {
    throw std::invalid_argument("truncation must reach 2*r_max+1 moments");
  }
  Eigen::VectorXcd m(n);
  for (int k = 0; k < n; ++k) {
    m(k) = M.entries(k, 0) / std::sqrt(static_cast<double>(k + 1));
  }
  int r = M.exact_entries ? exact_rank(*M.exact_entries)
                          : numerical_rank(M.entries);
  if (r > r_max) {
    std::ostringstream os;
    os << "matrix rank " << r << " exceeds the requested bound " << r_max;
    throw std::runtime_error(os.str());
  }
  RecoveryResult out;
  if (r == 0) {
    out.residual = n ? m.cwiseAbs().maxCoeff() : 0.0;
    out.note = "zero moment sequence";
    return out;
  }

  int q = n / 2;
  Matrix H0(q, q), H1(q, q);
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < q; ++j) {
      H0(i, j) = m(i + j);
      H1(i, j) = m(i + j + 1);
    }
  }
  Eigen::JacobiSVD<Matrix> svd(H0, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sig = svd.singularValues();
  out.condition = sig(0) / sig(r - 1);
  Matrix G = svd.matrixU().leftCols(r).adjoint() * H1 * svd.matrixV().leftCols(r);
  for (int i = 0; i < r; ++i) G.row(i) /= sig(i);
  Eigen::ComplexEigenSolver<Matrix> es(G);
  std::vector<Cplx> nodes(es.eigenvalues().data(), es.eigenvalues().data() + r);

  // merge near-coincident nodes, then re-fit coefficients by least squares
  std::vector<std::vector<Cplx>> groups;
  for (const auto& z : nodes) {
    bool placed = false;
    for (auto& g : groups) {
      if (std::abs(g.front() - z) < kMergeTol) {
        g.push_back(z);
        placed = true;
        out.merged = true;
        break;
      }
    }
    if (!placed) groups.push_back({z});
  }
  for (const auto& g : groups) {
    Cplx mean = 0.0;
    for (const auto& z : g) mean += z;
    out.points.push_back(mean / static_cast<double>(g.size()));
  }

  int p = static_cast<int>(out.points.size());
  Matrix B(n, p);
  for (int k = 0; k < n; ++k) {
    for (int s = 0; s < p; ++s) B(k, s) = std::pow(out.points[s], k);
  }
  Eigen::VectorXcd c = B.colPivHouseholderQr().solve(m);
  out.coefficients.assign(c.data(), c.data() + p);
  out.residual = (B * c - m).cwiseAbs().maxCoeff();

  std::ostringstream os;
  os << "hankel condition sigma_1/sigma_r = " << out.condition;
  if (out.merged) {
    os << "; merged nodes closer than " << kMergeTol << " and re-fit coefficients";
  }
  out.note = os.str();
  return out;
}

std::string recovery_report(const RecoveryResult& r) {
  std::ostringstream os;
  os << "recovered " << r.points.size() << " point(s)\n";
  for (size_t i = 0; i < r.points.size(); ++i) {
    os << "  z = " << r.points[i].real() << (r.points[i].imag() < 0 ? " - " : " + ")
       << std::abs(r.points[i].imag()) << "i, c = " << r.coefficients[i].real()
       << (r.coefficients[i].imag() < 0 ? " - " : " + ")
       << std::abs(r.coefficients[i].imag()) << "i\n";
  }
  os << "max moment residual = " << r.residual << "\n" << r.note << "\n";
  return os.str();
}

}  // namespace toeprank::ranklab

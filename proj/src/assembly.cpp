#include "toeprank/assembly.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace toeprank::assembly {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

using bases::BasisKind;
using bases::BasisSpec;
using weights::Cplx;
using weights::TestFn;
using weights::WeightSpec;

bool is_monomial_kind(BasisKind k) {
  return k == BasisKind::DiskMonomial || k == BasisKind::PolydiskMonomial ||
         k == BasisKind::FockMonomial;
}

bool is_disk_kind(BasisKind k) {
  return k == BasisKind::DiskMonomial || k == BasisKind::PolydiskMonomial;
}

// number of complex slots eval_basis expects for this family
int expected_arity(const BasisSpec& spec) {
  switch (spec.kind) {
    case BasisKind::DiskMonomial:
    case BasisKind::Harmonic2D:
      return 1;
    case BasisKind::Harmonic3D:
      return 3;
    default:
      return spec.dim;
  }
}

// Weights hand points over either as complex coordinates or as real planar
// coordinates; fold (x, y) into x + iy when the family wants one complex slot.
std::vector<Cplx> adapt_point(const BasisSpec& spec, const std::vector<Cplx>& x) {
  int want = expected_arity(spec);
  if (static_cast<int>(x.size()) == want) return x;
  if (want == 1 && x.size() == 2) return {Cplx(x[0].real(), x[1].real())};
  throw std::invalid_argument("assemble: weight point arity does not match the basis");
}

int testfn_degree(const BasisSpec& spec, int k) {
  switch (spec.kind) {
    case BasisKind::DiskMonomial:
      return k;
    case BasisKind::PolydiskMonomial:
      return bases::monomial_indices(spec)[k].total();
    case BasisKind::Harmonic2D:
      return (k + 1) / 2;
    default:
      return -1;
  }
}

std::vector<MultiIndex> indices_for(const BasisSpec& spec) {
  if (is_monomial_kind(spec.kind)) return bases::monomial_indices(spec);
  std::vector<MultiIndex> out;
  for (int k = 0; k < bases::family_size(spec); ++k) out.push_back(MultiIndex({k}));
  return out;
}

TestFn product_testfn(const BasisSpec& rows, int j, const BasisSpec& cols, int k,
                      bool gaussian_base, int gauss_dim) {
  TestFn t;
  int dr = testfn_degree(rows, j), dc = testfn_degree(cols, k);
  t.degree = (dr >= 0 && dc >= 0 && !gaussian_base) ? dr + dc : -1;
  t.eval = [rows, j, cols, k, gaussian_base, gauss_dim](const std::vector<Cplx>& x) {
    auto pr = adapt_point(rows, x);
    auto pc = adapt_point(cols, x);
    Cplx v = bases::eval_basis(rows, j, pr) * std::conj(bases::eval_basis(cols, k, pc));
    if (gaussian_base) {
      double n2 = 0.0;
      for (const auto& z : pr) n2 += std::norm(z);
      v *= std::exp(-n2 / 2.0) / std::pow(kTwoPi, gauss_dim);
    }
    return v;
  };
  if (is_monomial_kind(rows.kind) && is_monomial_kind(cols.kind) && !gaussian_base) {
    t.deriv = [rows, j, cols, k](const MultiIndex& a, const MultiIndex& b,
                                 const std::vector<Cplx>& x) {
      return bases::eval_basis_deriv(rows, j, a, x) *
             std::conj(bases::eval_basis_deriv(cols, k, b, x));
    };
  }
  return t;
}

}  // namespace

double ShiftForm::value(long s) const {
  long t = s + shift();
  if (t < 0) return 0.0;
  long l = s + t + density.alpha + density.beta + 1;
  return 2.0 * std::sqrt(static_cast<double>((s + 1) * (t + 1))) *
         weights::radial_moment(density, l);
}

ToeplitzMatrix assemble(const WeightSpec& F, const BasisSpec& rows,
                        const BasisSpec& cols, const AssembleOptions& opts) {
  weights::validate(F);
  bases::validate(rows);
  bases::validate(cols);
  if (rows.kind == BasisKind::LandauLevel || cols.kind == BasisKind::LandauLevel) {
    throw std::invalid_argument(
        "assemble: landau families are assembled by the grid pipeline");
  }
  bool fock = rows.kind == BasisKind::FockMonomial || cols.kind == BasisKind::FockMonomial;
  if (fock && rows.kind != cols.kind) {
    throw std::invalid_argument("assemble: mixed Gaussian/non-Gaussian basis pair");
  }
  if (fock && !std::holds_alternative<weights::PointDistribution>(F) &&
      !std::holds_alternative<weights::GridDensity>(F)) {
    throw std::invalid_argument(
        "assemble: Gaussian-space assembly supports point and grid weights");
  }
  if (is_disk_kind(rows.kind) || is_disk_kind(cols.kind)) {
    if (weights::support_radius(F) > 1.0 + 1e-12) {
      throw std::invalid_argument("assemble: weight support escapes the basis domain");
    }
  }

  ToeplitzMatrix M;
  M.row_basis = rows;
  M.col_basis = cols;
  M.row_indices = indices_for(rows);
  M.col_indices = indices_for(cols);
  int nr = static_cast<int>(M.row_indices.size());
  int nc = static_cast<int>(M.col_indices.size());
  M.entries = Matrix::Zero(nr, nc);

  auto fill_rows = [&](int j0, int j1) {
    for (int j = j0; j < j1; ++j) {
      for (int k = 0; k < nc; ++k) {
        auto phi = product_testfn(rows, j, cols, k, fock, rows.dim);
        M.entries(j, k) = weights::pair(F, phi);
      }
    }
  };
  int threads = std::min(opts.threads, nr);
  if (threads > 1) {
    std::vector<std::thread> pool;
    int chunk = (nr + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      int j0 = t * chunk, j1 = std::min(nr, j0 + chunk);
      if (j0 < j1) pool.emplace_back(fill_rows, j0, j1);
    }
    for (auto& th : pool) th.join();
  } else {
    fill_rows(0, nr);
  }

  if (opts.exact) {
    if (!is_disk_kind(rows.kind) || !is_disk_kind(cols.kind)) {
      throw std::invalid_argument(
          "assemble: exact entries exist for disk/polydisk monomial families only");
    }
    ExactMatrix E(nr, nc);
    for (int j = 0; j < nr; ++j) {
      for (int k = 0; k < nc; ++k) {
        E.at(j, k) = weights::moment_exact(F, M.row_indices[j], M.col_indices[k]);
      }
    }
    M.exact_entries = std::move(E);
  }
  return M;
}

ToeplitzMatrix assemble_radial_monomial(const weights::RadialDensity& g, int n) {
  weights::validate(WeightSpec(g));
  if (n < 1) throw std::invalid_argument("assemble_radial_monomial: empty truncation");
  ToeplitzMatrix M;
  bases::BasisSpec disk;
  disk.kind = BasisKind::DiskMonomial;
  disk.truncation = n;
  M.row_basis = M.col_basis = disk;
  M.row_indices = M.col_indices = indices_for(disk);
  M.entries = Matrix::Zero(n, n);
  ShiftForm form{g};
  for (int s = 0; s < n; ++s) {
    long t = s + form.shift();
    if (t >= 0 && t < n) M.entries(s, t) = form.value(s);
  }
  M.shift_form = std::move(form);
  return M;
}

ToeplitzMatrix reduced_matrix(const ToeplitzMatrix& M, const sparse::IndexSet& J) {
  std::vector<int> keep_rows, keep_cols;
  for (int j = 0; j < M.rows(); ++j) {
    if (!J.contains(M.row_indices[j])) keep_rows.push_back(j);
  }
  for (int k = 0; k < M.cols(); ++k) {
    if (!J.contains(M.col_indices[k])) keep_cols.push_back(k);
  }
  if (keep_rows.empty() || keep_cols.empty()) {
    throw std::invalid_argument("reduced_matrix: removal leaves no indices");
  }
  ToeplitzMatrix R;
  R.row_basis = M.row_basis;
  R.col_basis = M.col_basis;
  R.entries = Matrix::Zero(keep_rows.size(), keep_cols.size());
  for (size_t j = 0; j < keep_rows.size(); ++j) {
    R.row_indices.push_back(M.row_indices[keep_rows[j]]);
    for (size_t k = 0; k < keep_cols.size(); ++k) {
      R.entries(j, k) = M.entries(keep_rows[j], keep_cols[k]);
    }
  }
  for (size_t k = 0; k < keep_cols.size(); ++k) {
    R.col_indices.push_back(M.col_indices[keep_cols[k]]);
  }
  if (M.exact_entries) {
    R.exact_entries = M.exact_entries->submatrix(keep_rows, keep_cols);
  }
  return R;
}

ToeplitzMatrix shift_exact_product(const std::vector<ToeplitzMatrix>& left,
                                   const ToeplitzMatrix& middle,
                                   const std::vector<ToeplitzMatrix>& right,
                                   ProductWindow* window) {
  for (const auto* side : {&left, &right}) {
    for (const auto& f : *side) {
      if (!f.shift_form) {
        throw std::invalid_argument(
            "shift_exact_product: side factors must carry single-shift structure");
      }
    }
  }
  long shift_r = 0, shift_l = 0;
  for (const auto& f : right) shift_r += f.shift_form->shift();
  for (const auto& f : left) shift_l += f.shift_form->shift();

  int nr = middle.rows(), nc = middle.cols();
  ProductWindow win;
  win.row_lo = static_cast<int>(std::max<long>(0, -shift_r));
  win.row_hi = static_cast<int>(std::min<long>(nr - 1, nr - 1 - shift_r));
  win.col_lo = static_cast<int>(std::max<long>(0, shift_l));
  win.col_hi = static_cast<int>(std::min<long>(nc - 1, nc - 1 + shift_l));
  if (win.empty()) {
    throw std::invalid_argument("shift_exact_product: empty valid window");
  }
  if (window) *window = win;

  ToeplitzMatrix P;
  P.row_basis = middle.row_basis;
  P.col_basis = middle.col_basis;
  P.row_indices = middle.row_indices;
  P.col_indices = middle.col_indices;
  P.entries = Matrix::Zero(nr, nc);

  for (int s = win.row_lo; s <= win.row_hi; ++s) {
    // rightmost factor acts first
    double c_r = 1.0;
    long cur = s;
    for (size_t i = right.size(); i-- > 0;) {
      c_r *= right[i].shift_form->value(cur);
      if (c_r == 0.0) break;
      cur += right[i].shift_form->shift();
    }
    if (c_r == 0.0) continue;
    long mid_row = s + shift_r;
    for (int u = win.col_lo; u <= win.col_hi; ++u) {
      long t = u - shift_l;
      Cplx mv = middle.entries(mid_row, t);
      if (mv == Cplx(0.0, 0.0)) continue;
      double c_l = 1.0;
      long cl = t;
      for (size_t i = left.size(); i-- > 0;) {
        c_l *= left[i].shift_form->value(cl);
        if (c_l == 0.0) break;
        cl += left[i].shift_form->shift();
      }
      P.entries(s, u) = c_r * mv * c_l;
    }
  }
  return P;
}

ToeplitzMatrix compose_shift_factors(const std::vector<ToeplitzMatrix>& factors,
                                     int n) {
  if (n < 1) throw std::invalid_argument("compose_shift_factors: empty truncation");
  for (const auto& f : factors) {
    if (!f.shift_form) {
      throw std::invalid_argument(
          "compose_shift_factors: factors must carry single-shift structure");
    }
  }
  ToeplitzMatrix P;
  bases::BasisSpec disk;
  disk.kind = BasisKind::DiskMonomial;
  disk.truncation = n;
  P.row_basis = P.col_basis = disk;
  P.row_indices = P.col_indices = indices_for(disk);
  P.entries = Matrix::Zero(n, n);
  for (int s = 0; s < n; ++s) {
    double c = 1.0;
    long cur = s;
    for (size_t i = factors.size(); i-- > 0;) {
      c *= factors[i].shift_form->value(cur);
      if (c == 0.0) break;
      cur += factors[i].shift_form->shift();
    }
    if (c != 0.0 && cur >= 0 && cur < n) P.entries(s, cur) = c;
  }
  return P;
}

}  // namespace toeprank::assembly

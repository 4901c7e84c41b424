#include "toeprank/bases.hpp"

#include <cmath>
#include <stdexcept>

#include "toeprank/quadrature.hpp"

namespace toeprank::bases {

namespace {

constexpr double kPi = 3.14159265358979323846;

double falling(int n, int k) {
  if (k > n) return 0.0;
  double v = 1.0;
  for (int i = 0; i < k; ++i) v *= static_cast<double>(n - i);
  return v;
}

double factorial(int n) {
  double v = 1.0;
  for (int i = 2; i <= n; ++i) v *= i;
  return v;
}

double double_factorial(int n) {  // n!! for odd n
  double v = 1.0;
  for (int i = n; i >= 2; i -= 2) v *= i;
  return v;
}

Cplx cpow(Cplx z, int e) {
  Cplx v(1.0, 0.0);
  for (int i = 0; i < e; ++i) v *= z;
  return v;
}

void check_index(const BasisSpec& spec, int k) {
  if (k < 0 || k >= family_size(spec)) {
    throw std::out_of_range("eval_basis: index outside the declared family");
  }
}

// Real solid harmonic tables through degree L at (x, y, z), scaled by
// 1/(2l-1)!! so low-degree members reduce to plain coordinates.
// Recurrences: R_m^m = (2m-1)(x+iy) R_{m-1}^{m-1}; R_{m+1}^m = (2m+1) z R_m^m;
// (l-m) R_l^m = (2l-1) z R_{l-1}^m - (l-1+m) r^2 R_{l-2}^m.
struct SolidTable {
  std::vector<std::vector<double>> C, S;
  SolidTable(int L, double x, double y, double z) {
    C.assign(L + 1, std::vector<double>(L + 1, 0.0));
    S.assign(L + 1, std::vector<double>(L + 1, 0.0));
    double r2 = x * x + y * y + z * z;
    C[0][0] = 1.0;
    for (int m = 1; m <= L; ++m) {
      C[m][m] = (2 * m - 1) * (x * C[m - 1][m - 1] - y * S[m - 1][m - 1]);
      S[m][m] = (2 * m - 1) * (x * S[m - 1][m - 1] + y * C[m - 1][m - 1]);
    }
    for (int m = 0; m < L; ++m) {
      C[m + 1][m] = (2 * m + 1) * z * C[m][m];
      S[m + 1][m] = (2 * m + 1) * z * S[m][m];
      for (int l = m + 2; l <= L; ++l) {
        C[l][m] = ((2 * l - 1) * z * C[l - 1][m] - (l - 1 + m) * r2 * C[l - 2][m]) /
                  (l - m);
        S[l][m] = ((2 * l - 1) * z * S[l - 1][m] - (l - 1 + m) * r2 * S[l - 2][m]) /
                  (l - m);
      }
    }
  }
};

// enumeration inside degree l: m=0, then cos/sin pairs for m = 1..l
double solid_harmonic(int L, int k, double x, double y, double z) {
  int l = static_cast<int>(std::floor(std::sqrt(static_cast<double>(k) + 0.5)));
  while (l * l > k) --l;
  while ((l + 1) * (l + 1) <= k) ++l;
  int pos = k - l * l;
  SolidTable t(L, x, y, z);
  double scale = 1.0 / double_factorial(2 * l - 1);
  if (pos == 0) return t.C[l][0] * scale;
  int m = (pos + 1) / 2;
  return (pos % 2 == 1 ? t.C[l][m] : t.S[l][m]) * scale;
}

// One-axis disk Gram of normalized monomials sqrt(s+1) z^s by quadrature.
Matrix disk_axis_gram(int size) {
  int nr = size + 8, ntheta = 4 * size + 8;
  auto rule = gauss_legendre(nr, 0.0, 1.0);
  Matrix G = Matrix::Zero(size, size);
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    double r = rule.nodes[i];
    for (int j = 0; j < ntheta; ++j) {
      double th = 2.0 * kPi * j / ntheta;
      Cplx z = r * Cplx(std::cos(th), std::sin(th));
      double w = rule.weights[i] * r * (2.0 * kPi / ntheta) / kPi;
      for (int s = 0; s < size; ++s) {
        Cplx es = std::sqrt(s + 1.0) * cpow(z, s);
        for (int tdx = 0; tdx < size; ++tdx) {
          Cplx et = std::sqrt(tdx + 1.0) * cpow(z, tdx);
          G(s, tdx) += w * es * std::conj(et);
        }
      }
    }
  }
  return G;
}

// One-axis Fock Gram of z^s/sqrt(2^s s!) under e^{-|z|^2/2} dlambda / (2 pi).
Matrix fock_axis_gram(int size) {
  int nr = 64, ntheta = 2 * size + 6;
  auto rule = gauss_legendre(nr, 0.0, 12.0);
  Matrix G = Matrix::Zero(size, size);
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    double r = rule.nodes[i];
    double gauss = std::exp(-r * r / 2.0);
    for (int j = 0; j < ntheta; ++j) {
      double th = 2.0 * kPi * j / ntheta;
      Cplx z = r * Cplx(std::cos(th), std::sin(th));
      double w = rule.weights[i] * r * gauss * (2.0 * kPi / ntheta) / (2.0 * kPi);
      for (int s = 0; s < size; ++s) {
        Cplx es = cpow(z, s) / std::sqrt(std::pow(2.0, s) * factorial(s));
        for (int tdx = 0; tdx < size; ++tdx) {
          Cplx et = cpow(z, tdx) / std::sqrt(std::pow(2.0, tdx) * factorial(tdx));
          G(s, tdx) += w * es * std::conj(et);
        }
      }
    }
  }
  return G;
}

}  // namespace

void validate(const BasisSpec& spec) {
  switch (spec.kind) {
    case BasisKind::DiskMonomial:
      if (spec.truncation < 1) throw std::invalid_argument("basis: empty family");
      return;
    case BasisKind::PolydiskMonomial:
    case BasisKind::FockMonomial:
      if (spec.dim < 1) throw std::invalid_argument("basis: dim must be positive");
      if (spec.degree < 0) throw std::invalid_argument("basis: negative degree bound");
      return;
    case BasisKind::Harmonic2D:
      if (spec.degree < 0) throw std::invalid_argument("basis: negative degree bound");
      return;
    case BasisKind::Harmonic3D:
      if (spec.degree < 0) throw std::invalid_argument("basis: negative degree bound");
      return;
    case BasisKind::HelmholtzPlaneWave: {
      if (spec.directions.empty()) throw std::invalid_argument("basis: no directions");
      for (const auto& w : spec.directions) {
        if (static_cast<int>(w.size()) != spec.dim) {
          throw std::invalid_argument("basis: direction dimension mismatch");
        }
        double n2 = 0.0;
        for (double c : w) n2 += c * c;
        if (std::abs(std::sqrt(n2) - 1.0) > 1e-14) {
          throw std::invalid_argument("basis: plane-wave direction must be unit length");
        }
      }
      return;
    }
    case BasisKind::LandauLevel:
      if (spec.truncation < 1) throw std::invalid_argument("basis: empty family");
      if (!(spec.field > 0.0)) throw std::invalid_argument("basis: field must be positive");
      if (spec.level < 0) throw std::invalid_argument("basis: negative level");
      return;
  }
  throw std::invalid_argument("basis: unknown kind");
}

int family_size(const BasisSpec& spec) {
  validate(spec);
  switch (spec.kind) {
    case BasisKind::DiskMonomial:
      return spec.truncation;
    case BasisKind::PolydiskMonomial:
    case BasisKind::FockMonomial:
      return static_cast<int>(graded_lex_range(spec.dim, spec.degree).size());
    case BasisKind::Harmonic2D:
      return 2 * spec.degree + 1;
    case BasisKind::Harmonic3D:
      return (spec.degree + 1) * (spec.degree + 1);
    case BasisKind::HelmholtzPlaneWave:
      return static_cast<int>(spec.directions.size());
    case BasisKind::LandauLevel:
      return spec.truncation;
  }
  return 0;
}

std::vector<MultiIndex> monomial_indices(const BasisSpec& spec) {
  validate(spec);
  switch (spec.kind) {
    case BasisKind::DiskMonomial: {
      std::vector<MultiIndex> out;
      for (int s = 0; s < spec.truncation; ++s) out.push_back(MultiIndex({s}));
      return out;
    }
    case BasisKind::PolydiskMonomial:
    case BasisKind::FockMonomial:
      return graded_lex_range(spec.dim, spec.degree);
    default:
      throw std::invalid_argument("monomial_indices: not a monomial family");
  }
}

Cplx eval_basis(const BasisSpec& spec, int k, const std::vector<Cplx>& x) {
  check_index(spec, k);
  switch (spec.kind) {
    case BasisKind::DiskMonomial:
      return std::sqrt(k + 1.0) * cpow(x[0], k);
    case BasisKind::PolydiskMonomial: {
      auto alpha = monomial_indices(spec)[k];
      Cplx v(1.0, 0.0);
      for (int j = 0; j < spec.dim; ++j) {
        v *= std::sqrt(alpha[j] + 1.0) * cpow(x[j], alpha[j]);
      }
      return v;
    }
    case BasisKind::FockMonomial: {
      auto alpha = monomial_indices(spec)[k];
      Cplx v(1.0, 0.0);
      double norm2 = 1.0;
      for (int j = 0; j < spec.dim; ++j) {
        v *= cpow(x[j], alpha[j]);
        norm2 *= std::pow(2.0, alpha[j]) * factorial(alpha[j]);
      }
      return v / std::sqrt(norm2);
    }
    case BasisKind::Harmonic2D: {
      if (k == 0) return Cplx(1.0, 0.0);
      Cplx z = x[0];
      int m = (k + 1) / 2;
      Cplx zm = cpow(z, m);
      return k % 2 == 1 ? Cplx(zm.real(), 0.0) : Cplx(zm.imag(), 0.0);
    }
    case BasisKind::Harmonic3D:
      return Cplx(solid_harmonic(spec.degree, k, x[0].real(), x[1].real(), x[2].real()),
                  0.0);
    case BasisKind::HelmholtzPlaneWave: {
      double phase = 0.0;
      for (int j = 0; j < spec.dim; ++j) phase += spec.directions[k][j] * x[j].real();
      return std::exp(Cplx(0.0, phase));
    }
    case BasisKind::LandauLevel:
      throw std::invalid_argument(
          "eval_basis: landau families are built on grids by the physics pipeline");
  }
  throw std::invalid_argument("eval_basis: unknown kind");
}

Cplx eval_basis_deriv(const BasisSpec& spec, int k, const MultiIndex& a,
                      const std::vector<Cplx>& x) {
  check_index(spec, k);
  switch (spec.kind) {
    case BasisKind::DiskMonomial: {
      if (a.dim() != 1) throw std::invalid_argument("eval_basis_deriv: order dim");
      double c = falling(k, a[0]);
      if (c == 0.0) return Cplx(0.0, 0.0);
      return std::sqrt(k + 1.0) * c * cpow(x[0], k - a[0]);
    }
    case BasisKind::PolydiskMonomial:
    case BasisKind::FockMonomial: {
      auto alpha = monomial_indices(spec)[k];
      if (a.dim() != spec.dim) throw std::invalid_argument("eval_basis_deriv: order dim");
      Cplx v(1.0, 0.0);
      double norm2 = 1.0;
      for (int j = 0; j < spec.dim; ++j) {
        double c = falling(alpha[j], a[j]);
        if (c == 0.0) return Cplx(0.0, 0.0);
        v *= c * cpow(x[j], alpha[j] - a[j]);
        if (spec.kind == BasisKind::PolydiskMonomial) {
          norm2 /= (alpha[j] + 1.0);  // inverse of the sqrt(s+1)^2 factors
        } else {
          norm2 *= std::pow(2.0, alpha[j]) * factorial(alpha[j]);
        }
      }
      if (spec.kind == BasisKind::PolydiskMonomial) return v / std::sqrt(norm2);
      return v / std::sqrt(norm2);
    }
    default:
      throw std::invalid_argument(
          "eval_basis_deriv: holomorphic derivatives exist for monomial families only");
  }
}

Cplx disk_kernel(Cplx z, Cplx w) {
  if (std::abs(z) >= 1.0 || std::abs(w) >= 1.0) {
    throw std::domain_error("disk_kernel: arguments must lie inside the open disk");
  }
  Cplx d = 1.0 - z * std::conj(w);
  return 1.0 / (d * d);
}

Matrix gram_matrix(const BasisSpec& spec) {
  validate(spec);
  switch (spec.kind) {
    case BasisKind::DiskMonomial:
      return disk_axis_gram(spec.truncation);
    case BasisKind::PolydiskMonomial:
    case BasisKind::FockMonomial: {
      auto idx = monomial_indices(spec);
      int n = static_cast<int>(idx.size());
      Matrix axis = spec.kind == BasisKind::PolydiskMonomial
                        ? disk_axis_gram(spec.degree + 1)
                        : fock_axis_gram(spec.degree + 1);
      Matrix G = Matrix::Zero(n, n);
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          Cplx v(1.0, 0.0);
          for (int d = 0; d < spec.dim; ++d) v *= axis(idx[j][d], idx[k][d]);
          G(j, k) = v;
        }
      }
      return G;
    }
    case BasisKind::Harmonic2D: {
      int n = family_size(spec);
      int nr = spec.degree + 8, ntheta = 4 * spec.degree + 8;
      auto rule = gauss_legendre(nr, 0.0, 1.0);
      Matrix G = Matrix::Zero(n, n);
      for (size_t i = 0; i < rule.nodes.size(); ++i) {
        double r = rule.nodes[i];
        for (int j = 0; j < ntheta; ++j) {
          double th = 2.0 * kPi * j / ntheta;
          std::vector<Cplx> p = {r * Cplx(std::cos(th), std::sin(th))};
          double w = rule.weights[i] * r * (2.0 * kPi / ntheta) / kPi;
          std::vector<Cplx> vals(n);
          for (int s = 0; s < n; ++s) vals[s] = eval_basis(spec, s, p);
          for (int s = 0; s < n; ++s) {
            for (int t = 0; t < n; ++t) G(s, t) += w * vals[s] * std::conj(vals[t]);
          }
        }
      }
      return G;
    }
    case BasisKind::Harmonic3D: {
      int n = family_size(spec);
      int nr = spec.degree + 6, nu = spec.degree + 4, nphi = 2 * spec.degree + 6;
      auto rrule = gauss_legendre(nr, 0.0, 1.0);
      auto urule = gauss_legendre(nu, -1.0, 1.0);
      Matrix G = Matrix::Zero(n, n);
      std::vector<Cplx> vals(n);
      for (size_t i = 0; i < rrule.nodes.size(); ++i) {
        double r = rrule.nodes[i];
        for (size_t m = 0; m < urule.nodes.size(); ++m) {
          double u = urule.nodes[m], s = std::sqrt(1.0 - u * u);
          for (int j = 0; j < nphi; ++j) {
            double ph = 2.0 * kPi * j / nphi;
            std::vector<Cplx> p = {Cplx(r * s * std::cos(ph), 0),
                                   Cplx(r * s * std::sin(ph), 0), Cplx(r * u, 0)};
            double w = rrule.weights[i] * urule.weights[m] * (2.0 * kPi / nphi) * r * r;
            for (int a = 0; a < n; ++a) vals[a] = eval_basis(spec, a, p);
            for (int a = 0; a < n; ++a) {
              for (int b = 0; b < n; ++b) G(a, b) += w * vals[a] * std::conj(vals[b]);
            }
          }
        }
      }
      return G;
    }
    default:
      throw std::invalid_argument(
          "gram_matrix: family has no square-integrable natural measure here");
  }
}

double pde_residual(const BasisSpec& spec, int k, const std::vector<double>& x,
                    double h) {
  check_index(spec, k);
  int d = spec.kind == BasisKind::Harmonic3D ? 3 : 2;
  if (static_cast<int>(x.size()) != d) {
    throw std::invalid_argument("pde_residual: point dimension mismatch");
  }
  auto value = [&](const std::vector<double>& p) {
    std::vector<Cplx> q;
    if (spec.kind == BasisKind::Harmonic2D) {
      q = {Cplx(p[0], p[1])};
    } else {
      q.reserve(p.size());
      for (double c : p) q.push_back(Cplx(c, 0.0));
    }
    return eval_basis(spec, k, q);
  };
  Cplx lap(0.0, 0.0);
  Cplx center = value(x);
  for (int axis = 0; axis < d; ++axis) {
    auto shift = [&](double delta) {
      auto p = x;
      p[axis] += delta;
      return value(p);
    };
    lap += (-shift(-2 * h) + 16.0 * shift(-h) - 30.0 * center + 16.0 * shift(h) -
            shift(2 * h)) /
           (12.0 * h * h);
  }
  if (spec.kind == BasisKind::HelmholtzPlaneWave) return std::abs(lap + center);
  return std::abs(lap);
}

}  // namespace toeprank::bases

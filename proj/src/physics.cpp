#include "toeprank/physics.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "toeprank/assembly.hpp"

namespace toeprank::physics {

namespace {

const double kPi = std::acos(-1.0);
constexpr int kBoxRefinement = 4;
// spectral magnitude allowed in the outer Nyquist band, relative to the peak
constexpr double kResolveTol = 1e-10;
// gram-schmidt collapse threshold, relative to the member's original norm
constexpr double kBreakdownTol = 1e-8;

void check_grid(const GridSpec& g, const char* who) {
  if (g.n < 8) {
    throw std::invalid_argument(std::string(who) + ": need at least 8 nodes per axis");
  }
  if (!(g.half_width > 0.0)) {
    throw std::invalid_argument(std::string(who) + ": half width must be positive");
  }
}

void check_fn(const GridFn& u, const char* who) {
  check_grid(u.grid, who);
  if (u.values.size() != static_cast<size_t>(u.grid.size())) {
    throw std::invalid_argument(std::string(who) +
                                ": sample count does not match the grid");
  }
}

// in-place transforms along both axes; the inverse carries the 1/n per axis
void fft2(std::vector<Cplx>& a, int n, bool inverse) {
  Eigen::FFT<double> fft;
  std::vector<Cplx> in(n), out(n);
  for (int i = 0; i < n; ++i) {
    std::copy(a.begin() + static_cast<long>(i) * n,
              a.begin() + static_cast<long>(i + 1) * n, in.begin());
    if (inverse) {
      fft.inv(out, in);
    } else {
      fft.fwd(out, in);
    }
    std::copy(out.begin(), out.end(), a.begin() + static_cast<long>(i) * n);
  }
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) in[i] = a[static_cast<long>(i) * n + j];
    if (inverse) {
      fft.inv(out, in);
    } else {
      fft.fwd(out, in);
    }
    for (int i = 0; i < n; ++i) a[static_cast<long>(i) * n + j] = out[i];
  }
}

// signed frequency index of DFT bin i; the Nyquist bin counts as negative
int signed_freq(int i, int n) { return i < (n + 1) / 2 ? i : i - n; }

void check_resolved(const std::vector<Cplx>& spec, int n, const char* who) {
  double peak = 0.0, band = 0.0;
  int cut = static_cast<int>(0.45 * n);
  for (int i = 0; i < n; ++i) {
    int mi = std::abs(signed_freq(i, n));
    for (int j = 0; j < n; ++j) {
      int mj = std::abs(signed_freq(j, n));
      double v = std::abs(spec[static_cast<long>(i) * n + j]);
      peak = std::max(peak, v);
      if (mi >= cut || mj >= cut) band = std::max(band, v);
    }
  }
  if (band > kResolveTol * peak) {
    throw std::invalid_argument(
        std::string(who) +
        ": grid too coarse to resolve the data (energy at the Nyquist band)");
  }
}

// length-n spectrum -> length-N zero-padded spectrum of the same interpolant
void pad_spectrum(const std::vector<Cplx>& c, std::vector<Cplx>& pad) {
  int n = static_cast<int>(c.size());
  int N = static_cast<int>(pad.size());
  std::fill(pad.begin(), pad.end(), Cplx(0.0, 0.0));
  if (n % 2 == 0) {
    for (int k = 0; k < n / 2; ++k) pad[k] = c[k];
    for (int k = n / 2 + 1; k < n; ++k) pad[N - n + k] = c[k];
    pad[n / 2] = 0.5 * c[n / 2];
    pad[N - n / 2] += 0.5 * c[n / 2];
  } else {
    for (int k = 0; k <= n / 2; ++k) pad[k] = c[k];
    for (int k = n / 2 + 1; k < n; ++k) pad[N - n + k] = c[k];
  }
}

// fine-lattice window at refinement p over the coarse grid
struct Window {
  int p = 1;
  int ix0 = 0, mx = 0;
  int iy0 = 0, my = 0;
  double x0 = 0.0, y0 = 0.0, hf = 0.0;
};

Window make_window(const GridSpec& g, int p, double cx, double cy, double radius,
                   const char* who) {
  double L = g.half_width;
  double margin = 2.0 * g.step();
  if (std::abs(cx) + radius > L - margin || std::abs(cy) + radius > L - margin) {
    throw std::invalid_argument(std::string(who) +
                                ": density support escapes the grid");
  }
  Window w;
  w.p = p;
  w.hf = g.step() / p;
  long fine = static_cast<long>(g.n) * p;
  auto lo = [&](double c) {
    long i = static_cast<long>(std::ceil((c + L) / w.hf - 1e-9));
    return std::max(0L, i);
  };
  auto hi = [&](double c) {
    long i = static_cast<long>(std::floor((c + L) / w.hf + 1e-9));
    return std::min(fine - 1, i);
  };
  long ix0 = lo(cx - radius), ix1 = hi(cx + radius);
  long iy0 = lo(cy - radius), iy1 = hi(cy + radius);
  if (ix1 < ix0 || iy1 < iy0) {
    throw std::invalid_argument(std::string(who) + ": empty density support window");
  }
  w.ix0 = static_cast<int>(ix0);
  w.mx = static_cast<int>(ix1 - ix0 + 1);
  w.iy0 = static_cast<int>(iy0);
  w.my = static_cast<int>(iy1 - iy0 + 1);
  w.x0 = -L + w.ix0 * w.hf;
  w.y0 = -L + w.iy0 * w.hf;
  return w;
}

// trigonometric interpolation of u on the window of the p-refined lattice
std::vector<Cplx> upsample_window(const GridFn& u, const Window& w) {
  const int n = u.grid.n;
  const int N = n * w.p;
  std::vector<Cplx> spec = u.values;
  fft2(spec, n, false);

  Eigen::FFT<double> fft;
  std::vector<Cplx> col(n), pad(N), out(N);
  std::vector<Cplx> stage(static_cast<long>(w.mx) * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) col[i] = spec[static_cast<long>(i) * n + j];
    pad_spectrum(col, pad);
    fft.inv(out, pad);
    for (int r = 0; r < w.mx; ++r) {
      stage[static_cast<long>(r) * n + j] = out[w.ix0 + r] * static_cast<double>(w.p);
    }
  }
  std::vector<Cplx> row(n);
  std::vector<Cplx> res(static_cast<long>(w.mx) * w.my);
  for (int r = 0; r < w.mx; ++r) {
    std::copy(stage.begin() + static_cast<long>(r) * n,
              stage.begin() + static_cast<long>(r + 1) * n, row.begin());
    pad_spectrum(row, pad);
    fft.inv(out, pad);
    for (int c = 0; c < w.my; ++c) {
      res[static_cast<long>(r) * w.my + c] = out[w.iy0 + c] * static_cast<double>(w.p);
    }
  }
  return res;
}

// interpolant value at an arbitrary point, from the coarse spectrum
Cplx eval_spectrum(const std::vector<Cplx>& spec, const GridSpec& g, double x,
                   double y) {
  const int n = g.n;
  const double L = g.half_width;
  std::vector<Cplx> ex(n), ey(n);
  for (int i = 0; i < n; ++i) {
    double m = signed_freq(i, n);
    ex[i] = std::exp(Cplx(0.0, kPi * m * (x + L) / L));
    ey[i] = std::exp(Cplx(0.0, kPi * m * (y + L) / L));
  }
  Cplx total(0.0, 0.0);
  for (int i = 0; i < n; ++i) {
    Cplx inner(0.0, 0.0);
    const Cplx* rowp = spec.data() + static_cast<long>(i) * n;
    for (int j = 0; j < n; ++j) inner += rowp[j] * ey[j];
    total += ex[i] * inner;
  }
  return total / static_cast<double>(static_cast<long>(n) * n);
}

void check_config(const LandauConfig& cfg, const char* who) {
  check_grid(cfg.grid, who);
  if (!(cfg.field > 0.0)) {
    throw std::invalid_argument(std::string(who) + ": field must be positive");
  }
  if (cfg.level < 0) {
    throw std::invalid_argument(std::string(who) + ": level must be nonnegative");
  }
  if (cfg.truncation < 1) {
    throw std::invalid_argument(std::string(who) + ": truncation must be positive");
  }
}

SpectrumReport spectrum_of(const Matrix& M, double level_energy) {
  SpectrumReport rep;
  rep.hermiticity_gap = (M - M.adjoint()).cwiseAbs().maxCoeff();
  double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  std::ostringstream os;
  os << "level energy = " << level_energy << "\n";
  os << "hermiticity gap = " << rep.hermiticity_gap << "\n";
  if (rep.hermiticity_gap <= 1e-8 * scale) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (M + M.adjoint()));
    const auto& ev = es.eigenvalues();
    for (int i = static_cast<int>(ev.size()) - 1; i >= 0; --i) {
      rep.eigenvalues.push_back(ev(i));
    }
    os << "eigenvalues (descending):";
  } else {
    rep.eigenvalues = singular_values(M);
    os << "matrix is not hermitian, reporting singular values:";
  }
  for (double v : rep.eigenvalues) os << ' ' << v;
  os << "\n";
  rep.text = os.str();
  return rep;
}

void check_basis(const std::vector<GridFn>& basis, const LandauConfig& cfg,
                 const char* who) {
  if (basis.size() != static_cast<size_t>(cfg.truncation)) {
    throw std::invalid_argument(std::string(who) +
                                ": basis size does not match the truncation");
  }
  for (const auto& b : basis) {
    if (!(b.grid == cfg.grid)) {
      throw std::invalid_argument(std::string(who) +
                                  ": basis grid does not match the configuration");
    }
  }
}

// entries(s, t) = cell * sum v b_s conj(b_t) over the listed sample slots
Matrix fill_from_samples(const std::vector<std::vector<Cplx>>& fns,
                         const std::vector<Cplx>& v, const std::vector<long>& slots,
                         double cell) {
  int m = static_cast<int>(fns.size());
  Matrix M(m, m);
  for (int s = 0; s < m; ++s) {
    for (int t = 0; t < m; ++t) {
      Cplx acc(0.0, 0.0);
      for (size_t i = 0; i < slots.size(); ++i) {
        if (v[i] == Cplx(0.0, 0.0)) continue;
        long idx = slots[i];
        acc += v[i] * fns[s][idx] * std::conj(fns[t][idx]);
      }
      M(s, t) = acc * cell;
    }
  }
  return M;
}

LandauToeplitz pack(Matrix M, const LandauConfig& cfg) {
  LandauToeplitz out;
  out.level_energy = cfg.level_energy();
  out.spectrum = spectrum_of(M, out.level_energy);
  out.entries = std::move(M);
  return out;
}

double poly_profile(const std::vector<double>& coeffs, double r) {
  double v = 0.0;
  for (size_t i = coeffs.size(); i-- > 0;) v = v * r + coeffs[i];
  return v;
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  std::vector<double> x(n), w(n);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double p1 = 0.0, dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double a = 1.0, b = t;
      for (int k = 2; k <= n; ++k) {
        double c = ((2.0 * k - 1.0) * t * b - (k - 1.0) * a) / k;
        a = b;
        b = c;
      }
      p1 = b;
      dp = n * (t * b - a) / (t * t - 1.0);
      double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    double a = 1.0, b = t;
    for (int k = 2; k <= n; ++k) {
      double c = ((2.0 * k - 1.0) * t * b - (k - 1.0) * a) / k;
      a = b;
      b = c;
    }
    dp = n * (t * b - a) / (t * t - 1.0);
    x[i] = t;
    w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
  return {x, w};
}

}  // namespace

GridFn sample_grid(const GridSpec& grid, const std::function<Cplx(double, double)>& f) {
  check_grid(grid, "sample_grid");
  if (!f) throw std::invalid_argument("sample_grid: null sampler");
  GridFn u;
  u.grid = grid;
  u.values.resize(grid.size());
  for (int i = 0; i < grid.n; ++i) {
    double x = grid.coord(i);
    for (int j = 0; j < grid.n; ++j) {
      u.values[static_cast<long>(i) * grid.n + j] = f(x, grid.coord(j));
    }
  }
  return u;
}

Cplx grid_inner(const GridFn& a, const GridFn& b) {
  check_fn(a, "grid_inner");
  check_fn(b, "grid_inner");
  if (!(a.grid == b.grid)) throw std::invalid_argument("grid_inner: grid mismatch");
  Cplx total(0.0, 0.0);
  for (size_t i = 0; i < a.values.size(); ++i) {
    total += a.values[i] * std::conj(b.values[i]);
  }
  double h = a.grid.step();
  return total * (h * h);
}

double grid_norm(const GridFn& a) {
  check_fn(a, "grid_norm");
  double total = 0.0;
  for (const auto& v : a.values) total += std::norm(v);
  return std::sqrt(total) * a.grid.step();
}

GridFn creation_apply(const GridFn& u, const LandauConfig& cfg) {
  check_fn(u, "creation_apply");
  if (!(cfg.field > 0.0)) {
    throw std::invalid_argument("creation_apply: field must be positive");
  }
  const int n = u.grid.n;
  const double L = u.grid.half_width;
  const double sgn = cfg.conjugate_convention ? -1.0 : 1.0;

  std::vector<Cplx> d;
  if (cfg.spectral) {
    std::vector<Cplx> spec = u.values;
    fft2(spec, n, false);
    check_resolved(spec, n, "creation_apply");
    for (int i = 0; i < n; ++i) {
      double k1 = kPi * signed_freq(i, n) / L;
      for (int j = 0; j < n; ++j) {
        double k2 = kPi * signed_freq(j, n) / L;
        // d/dx1 -+ i d/dx2 has symbol i k1 +- k2
        spec[static_cast<long>(i) * n + j] *= Cplx(sgn * k2, k1);
      }
    }
    fft2(spec, n, true);
    d = std::move(spec);
  } else {
    d.resize(u.values.size());
    const double h = u.grid.step();
    auto wrap = [n](int i) { return (i % n + n) % n; };
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Cplx dx = (-u.at(wrap(i + 2), j) + 8.0 * u.at(wrap(i + 1), j) -
                   8.0 * u.at(wrap(i - 1), j) + u.at(wrap(i - 2), j)) /
                  (12.0 * h);
        Cplx dy = (-u.at(i, wrap(j + 2)) + 8.0 * u.at(i, wrap(j + 1)) -
                   8.0 * u.at(i, wrap(j - 1)) + u.at(i, wrap(j - 2))) /
                  (12.0 * h);
        d[static_cast<long>(i) * n + j] = dx + Cplx(0.0, -sgn) * dy;
      }
    }
  }

  GridFn out;
  out.grid = u.grid;
  out.values.resize(u.values.size());
  const Cplx pre(0.0, -0.5);  // 1/(2i)
  const double half_field = cfg.field / 2.0;
  for (int i = 0; i < n; ++i) {
    double x = u.grid.coord(i);
    for (int j = 0; j < n; ++j) {
      double y = u.grid.coord(j);
      Cplx coord = cfg.conjugate_convention ? Cplx(x, y) : Cplx(x, -y);
      long idx = static_cast<long>(i) * n + j;
      out.values[idx] = pre * (d[idx] - half_field * coord * u.values[idx]);
    }
  }
  return out;
}

std::vector<GridFn> landau_basis(const LandauConfig& cfg) {
  check_config(cfg, "landau_basis");
  const int n = cfg.grid.n;

  std::vector<GridFn> fam;
  fam.reserve(cfg.truncation);
  GridFn cur = sample_grid(cfg.grid, [&cfg](double x, double y) {
    return Cplx(std::exp(-cfg.field * (x * x + y * y) / 4.0), 0.0);
  });
  for (int s = 0; s < cfg.truncation; ++s) {
    fam.push_back(cur);
    if (s + 1 < cfg.truncation) {
      for (int i = 0; i < n; ++i) {
        double x = cfg.grid.coord(i);
        for (int j = 0; j < n; ++j) {
          cur.values[static_cast<long>(i) * n + j] *= Cplx(x, cfg.grid.coord(j));
        }
      }
    }
  }

  if (cfg.spectral) {
    std::vector<Cplx> spec = fam.back().values;
    fft2(spec, n, false);
    check_resolved(spec, n, "landau_basis");
  }

  for (auto& g : fam) {
    for (int it = 0; it < cfg.level; ++it) g = creation_apply(g, cfg);
  }

  for (size_t j = 0; j < fam.size(); ++j) {
    double base = grid_norm(fam[j]);
    for (int pass = 0; pass < 2; ++pass) {
      for (size_t i = 0; i < j; ++i) {
        Cplx c = grid_inner(fam[j], fam[i]);
        for (size_t k = 0; k < fam[j].values.size(); ++k) {
          fam[j].values[k] -= c * fam[i].values[k];
        }
      }
    }
    double nrm = grid_norm(fam[j]);
    if (!(nrm > kBreakdownTol * base)) {
      throw std::runtime_error(
          "landau_basis: family degenerates at this grid resolution");
    }
    for (auto& v : fam[j].values) v /= nrm;
  }
  return fam;
}

LandauToeplitz landau_toeplitz(const LocalDensity& V, const LandauConfig& cfg,
                               const std::vector<GridFn>& basis) {
  check_config(cfg, "landau_toeplitz");
  check_basis(basis, cfg, "landau_toeplitz");
  if (!V.value) throw std::invalid_argument("landau_toeplitz: null density");
  if (!(V.radius > 0.0)) {
    throw std::invalid_argument("landau_toeplitz: support radius must be positive");
  }

  Window w = make_window(cfg.grid, kBoxRefinement, V.center_x, V.center_y, V.radius,
                         "landau_toeplitz");
  std::vector<std::vector<Cplx>> fns;
  fns.reserve(basis.size());
  for (const auto& b : basis) fns.push_back(upsample_window(b, w));

  long count = static_cast<long>(w.mx) * w.my;
  std::vector<Cplx> v(count);
  std::vector<long> slots(count);
  double r2 = V.radius * V.radius;
  for (int r = 0; r < w.mx; ++r) {
    double dx = w.x0 + r * w.hf - V.center_x;
    for (int c = 0; c < w.my; ++c) {
      double dy = w.y0 + c * w.hf - V.center_y;
      long idx = static_cast<long>(r) * w.my + c;
      slots[idx] = idx;
      v[idx] = dx * dx + dy * dy <= r2
                   ? Cplx(V.value(w.x0 + r * w.hf, w.y0 + c * w.hf), 0.0)
                   : Cplx(0.0, 0.0);
    }
  }
  return pack(fill_from_samples(fns, v, slots, w.hf * w.hf), cfg);
}

LandauToeplitz landau_toeplitz(const LocalDensity& V, const LandauConfig& cfg) {
  return landau_toeplitz(V, cfg, landau_basis(cfg));
}

LandauToeplitz landau_toeplitz(const GridFn& V, const LandauConfig& cfg,
                               const std::vector<GridFn>& basis) {
  check_config(cfg, "landau_toeplitz");
  check_fn(V, "landau_toeplitz");
  if (!(V.grid == cfg.grid)) {
    throw std::invalid_argument(
        "landau_toeplitz: density grid does not match the configuration");
  }
  check_basis(basis, cfg, "landau_toeplitz");
  int m = static_cast<int>(basis.size());
  double h = cfg.grid.step();
  Matrix M(m, m);
  for (int s = 0; s < m; ++s) {
    for (int t = 0; t < m; ++t) {
      Cplx acc(0.0, 0.0);
      for (size_t i = 0; i < V.values.size(); ++i) {
        if (V.values[i] == Cplx(0.0, 0.0)) continue;
        acc += V.values[i] * basis[s].values[i] * std::conj(basis[t].values[i]);
      }
      M(s, t) = acc * (h * h);
    }
  }
  return pack(std::move(M), cfg);
}

LandauToeplitz landau_toeplitz(const GridFn& V, const LandauConfig& cfg) {
  return landau_toeplitz(V, cfg, landau_basis(cfg));
}

LandauToeplitz landau_toeplitz(const weights::WeightSpec& V, const LandauConfig& cfg,
                               const std::vector<GridFn>& basis) {
  check_config(cfg, "landau_toeplitz");
  check_basis(basis, cfg, "landau_toeplitz");
  weights::validate(V);

  if (const auto* rad = std::get_if<weights::RadialDensity>(&V)) {
    if (rad->alpha != 0 || rad->beta != 0) {
      throw std::invalid_argument(
          "landau_toeplitz: angular modulated radial densities are unsupported");
    }
    LocalDensity ld;
    ld.radius = rad->radius;
    if (!rad->poly_coeffs.empty()) {
      std::vector<double> coeffs = rad->poly_coeffs;
      ld.value = [coeffs](double x, double y) {
        return poly_profile(coeffs, std::hypot(x, y));
      };
    } else {
      auto profile = rad->profile;
      ld.value = [profile](double x, double y) { return profile(std::hypot(x, y)); };
    }
    return landau_toeplitz(ld, cfg, basis);
  }

  if (const auto* pts = std::get_if<weights::PointDistribution>(&V)) {
    if (pts->dim != 1) {
      throw std::invalid_argument(
          "landau_toeplitz: point densities live on the plane (one complex slot)");
    }
    double limit = cfg.grid.half_width - 2.0 * cfg.grid.step();
    for (const auto& atom : pts->atoms) {
      if (std::abs(atom.location[0].real()) > limit ||
          std::abs(atom.location[0].imag()) > limit) {
        throw std::invalid_argument(
            "landau_toeplitz: density support escapes the grid");
      }
      for (const auto& term : atom.terms) {
        if (term.holo_order.total() != 0 || term.anti_order.total() != 0) {
          throw std::invalid_argument(
              "landau_toeplitz: derivative point terms are unsupported");
        }
      }
    }
    int m = static_cast<int>(basis.size());
    std::vector<std::vector<Cplx>> specs;
    specs.reserve(basis.size());
    for (const auto& b : basis) {
      std::vector<Cplx> s = b.values;
      fft2(s, cfg.grid.n, false);
      specs.push_back(std::move(s));
    }
    Matrix M = Matrix::Zero(m, m);
    for (const auto& atom : pts->atoms) {
      Cplx coeff(0.0, 0.0);
      for (const auto& term : atom.terms) coeff += term.coeff;
      std::vector<Cplx> vals(m);
      for (int s = 0; s < m; ++s) {
        vals[s] = eval_spectrum(specs[s], cfg.grid, atom.location[0].real(),
                                atom.location[0].imag());
      }
      for (int s = 0; s < m; ++s) {
        for (int t = 0; t < m; ++t) {
          M(s, t) += coeff * vals[s] * std::conj(vals[t]);
        }
      }
    }
    return pack(std::move(M), cfg);
  }

  if (const auto* gd = std::get_if<weights::GridDensity>(&V)) {
    if (gd->dim != 2) {
      throw std::invalid_argument("landau_toeplitz: grid densities must be planar");
    }
    double st = gd->step[0];
    if (std::abs(gd->step[1] - st) > 1e-12 * st) {
      throw std::invalid_argument("landau_toeplitz: grid density cells must be square");
    }
    double h = cfg.grid.step();
    double ratio = h / st;
    int p = static_cast<int>(std::llround(ratio));
    if (p < 1 || std::abs(ratio - p) > 1e-9) {
      throw std::invalid_argument(
          "landau_toeplitz: grid density must sit on a dyadic refinement of the "
          "basis grid");
    }
    int q = 2 * p;
    if (static_cast<long>(q) * cfg.grid.n > 32768) {
      throw std::invalid_argument(
          "landau_toeplitz: grid density too fine for the upsampling path");
    }
    double L = cfg.grid.half_width;
    double hf = h / q;
    double c0x = gd->origin[0] + 0.5 * st;
    double c0y = gd->origin[1] + 0.5 * st;
    double fx = (c0x + L) / hf;
    double fy = (c0y + L) / hf;
    long bx = std::llround(fx), by = std::llround(fy);
    if (std::abs(fx - bx) > 1e-6 || std::abs(fy - by) > 1e-6) {
      throw std::invalid_argument(
          "landau_toeplitz: grid density must sit on a dyadic refinement of the "
          "basis grid");
    }
    double margin = 2.0 * h;
    double topx = gd->origin[0] + gd->shape[0] * st;
    double topy = gd->origin[1] + gd->shape[1] * st;
    if (std::abs(gd->origin[0]) > L - margin || std::abs(gd->origin[1]) > L - margin ||
        std::abs(topx) > L - margin || std::abs(topy) > L - margin) {
      throw std::invalid_argument("landau_toeplitz: density support escapes the grid");
    }

    Window w;
    w.p = q;
    w.hf = hf;
    w.ix0 = static_cast<int>(bx);
    w.mx = 2 * (gd->shape[0] - 1) + 1;
    w.iy0 = static_cast<int>(by);
    w.my = 2 * (gd->shape[1] - 1) + 1;
    w.x0 = -L + w.ix0 * hf;
    w.y0 = -L + w.iy0 * hf;

    std::vector<std::vector<Cplx>> fns;
    fns.reserve(basis.size());
    for (const auto& b : basis) fns.push_back(upsample_window(b, w));

    long cells = static_cast<long>(gd->shape[0]) * gd->shape[1];
    std::vector<Cplx> v(cells);
    std::vector<long> slots(cells);
    for (int i = 0; i < gd->shape[0]; ++i) {
      for (int j = 0; j < gd->shape[1]; ++j) {
        long cell = static_cast<long>(i) * gd->shape[1] + j;
        v[cell] = gd->samples[cell];
        slots[cell] = static_cast<long>(2 * i) * w.my + 2 * j;
      }
    }
    return pack(fill_from_samples(fns, v, slots, st * st), cfg);
  }

  throw std::invalid_argument(
      "landau_toeplitz: supported weights are point masses, radial profiles and "
      "plane grids");
}

LandauToeplitz landau_toeplitz(const weights::WeightSpec& V, const LandauConfig& cfg) {
  return landau_toeplitz(V, cfg, landau_basis(cfg));
}

GridFn dq_transform(const GridFn& V, const std::vector<double>& coeffs) {
  check_fn(V, "dq_transform");
  if (coeffs.empty()) {
    throw std::invalid_argument("dq_transform: empty coefficient list");
  }
  const int n = V.grid.n;
  const double h2 = V.grid.step() * V.grid.step();
  auto laplacian = [n, h2](const GridFn& u) {
    GridFn out;
    out.grid = u.grid;
    out.values.resize(u.values.size());
    auto wrap = [n](int i) { return (i % n + n) % n; };
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        out.values[static_cast<long>(i) * n + j] =
            (u.at(wrap(i + 1), j) + u.at(wrap(i - 1), j) + u.at(i, wrap(j + 1)) +
             u.at(i, wrap(j - 1)) - 4.0 * u.at(i, j)) /
            h2;
      }
    }
    return out;
  };

  GridFn W;
  W.grid = V.grid;
  W.values.resize(V.values.size());
  for (size_t i = 0; i < V.values.size(); ++i) W.values[i] = coeffs[0] * V.values[i];
  GridFn T = V;
  for (size_t m = 1; m < coeffs.size(); ++m) {
    T = laplacian(T);
    if (coeffs[m] == 0.0) continue;
    for (size_t i = 0; i < W.values.size(); ++i) {
      W.values[i] += coeffs[m] * T.values[i];
    }
  }
  return W;
}

SpectraComparison dq_spectra_comparison(const LocalDensity& V,
                                        const std::vector<double>& coeffs,
                                        const LandauConfig& cfg) {
  check_config(cfg, "dq_spectra_comparison");
  if (!V.value) throw std::invalid_argument("dq_spectra_comparison: null density");

  auto upper = landau_toeplitz(V, cfg);

  double r2 = V.radius * V.radius;
  GridFn vg = sample_grid(cfg.grid, [&V, r2](double x, double y) {
    double dx = x - V.center_x, dy = y - V.center_y;
    return dx * dx + dy * dy <= r2 ? Cplx(V.value(x, y), 0.0) : Cplx(0.0, 0.0);
  });
  GridFn W = dq_transform(vg, coeffs);
  LandauConfig ground = cfg;
  ground.level = 0;
  auto lower = landau_toeplitz(W, ground);

  SpectraComparison out;
  out.spectrum_q = upper.spectrum.eigenvalues;
  out.spectrum_0 = lower.spectrum.eigenvalues;
  for (size_t i = 0; i < out.spectrum_q.size() && i < out.spectrum_0.size(); ++i) {
    out.max_gap = std::max(out.max_gap,
                           std::abs(out.spectrum_q[i] - out.spectrum_0[i]));
  }
  std::ostringstream os;
  os << "level " << cfg.level << " against the transformed ground level: "
     << "max spectral gap = " << out.max_gap << "\n";
  out.text = os.str();
  return out;
}

SphereSampling SphereSampling::circle(int count) {
  if (count < 1) throw std::invalid_argument("circle: need at least one direction");
  SphereSampling s;
  s.dim = 2;
  for (int i = 0; i < count; ++i) {
    double th = 2.0 * kPi * i / count;
    s.directions.push_back({std::cos(th), std::sin(th)});
    s.weights.push_back(2.0 * kPi / count);
  }
  return s;
}

SphereSampling SphereSampling::fibonacci(int count) {
  if (count < 1) throw std::invalid_argument("fibonacci: need at least one direction");
  SphereSampling s;
  s.dim = 3;
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    double z = 1.0 - (2.0 * i + 1.0) / count;
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    double ph = golden * i;
    s.directions.push_back({r * std::cos(ph), r * std::sin(ph), z});
    s.weights.push_back(4.0 * kPi / count);
  }
  return s;
}

SphereSampling SphereSampling::icosahedral(int refinements) {
  if (refinements < 0 || refinements > 6) {
    throw std::invalid_argument("icosahedral: refinement depth out of range");
  }
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<std::array<double, 3>> verts = {
      {-1, phi, 0}, {1, phi, 0},   {-1, -phi, 0}, {1, -phi, 0},
      {0, -1, phi}, {0, 1, phi},   {0, -1, -phi}, {0, 1, -phi},
      {phi, 0, -1}, {phi, 0, 1},   {-phi, 0, -1}, {-phi, 0, 1}};
  std::vector<std::array<int, 3>> faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  auto normalize = [](std::array<double, 3> v) {
    double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    return std::array<double, 3>{v[0] / n, v[1] / n, v[2] / n};
  };
  for (auto& v : verts) v = normalize(v);

  for (int r = 0; r < refinements; ++r) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      std::array<double, 3> m = {(verts[a][0] + verts[b][0]) / 2.0,
                                 (verts[a][1] + verts[b][1]) / 2.0,
                                 (verts[a][2] + verts[b][2]) / 2.0};
      verts.push_back(normalize(m));
      int idx = static_cast<int>(verts.size()) - 1;
      midpoint.emplace(key, idx);
      return idx;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(faces.size() * 4);
    for (const auto& f : faces) {
      int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }

  SphereSampling s;
  s.dim = 3;
  for (const auto& v : verts) s.directions.push_back({v[0], v[1], v[2]});
  s.weights.assign(s.directions.size(), 4.0 * kPi / s.directions.size());
  return s;
}

void validate(const SphereSampling& s) {
  if (s.dim != 2 && s.dim != 3) {
    throw std::invalid_argument("sphere sampling: dim must be 2 or 3");
  }
  if (s.directions.empty()) {
    throw std::invalid_argument("sphere sampling: no directions");
  }
  if (s.weights.size() != s.directions.size()) {
    throw std::invalid_argument("sphere sampling: weight count mismatch");
  }
  for (size_t i = 0; i < s.directions.size(); ++i) {
    if (static_cast<int>(s.directions[i].size()) != s.dim) {
      throw std::invalid_argument("sphere sampling: direction dimension mismatch");
    }
    double n2 = 0.0;
    for (double v : s.directions[i]) n2 += v * v;
    if (std::abs(n2 - 1.0) > 1e-12) {
      throw std::invalid_argument("sphere sampling: directions must be unit vectors");
    }
    if (!(s.weights[i] > 0.0)) {
      throw std::invalid_argument("sphere sampling: weights must be positive");
    }
  }
}

Cplx born_kernel(const weights::WeightSpec& F, const std::vector<double>& omega,
                 const std::vector<double>& sigma) {
  weights::validate(F);
  if (omega.size() != sigma.size()) {
    throw std::invalid_argument("born_kernel: direction dimensions differ");
  }
  auto unit = [](const std::vector<double>& d) {
    double n2 = 0.0;
    for (double v : d) n2 += v * v;
    return std::abs(n2 - 1.0) <= 1e-10;
  };
  if (!unit(omega) || !unit(sigma)) {
    throw std::invalid_argument("born_kernel: unit directions required");
  }

  std::vector<double> xi(omega.size());
  for (size_t i = 0; i < xi.size(); ++i) xi[i] = sigma[i] - omega[i];

  if (const auto* rad = std::get_if<weights::RadialDensity>(&F)) {
    if (omega.size() != 3) {
      throw std::invalid_argument(
          "born_kernel: radial profiles are read as densities in R^3");
    }
    if (rad->alpha != 0 || rad->beta != 0) {
      throw std::invalid_argument(
          "born_kernel: angular modulated radial densities are unsupported");
    }
    double q = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
    double R = rad->radius;
    auto profile = [rad](double r) {
      return rad->poly_coeffs.empty() ? rad->profile(r)
                                      : poly_profile(rad->poly_coeffs, r);
    };
    static const auto rule = gauss_legendre(64);
    double total = 0.0;
    for (int i = 0; i < 64; ++i) {
      double r = 0.5 * R * (rule.first[i] + 1.0);
      double wq = 0.5 * R * rule.second[i];
      if (q < 1e-9) {
        total += wq * profile(r) * r * r;
      } else {
        total += wq * profile(r) * r * std::sin(q * r);
      }
    }
    return q < 1e-9 ? Cplx(4.0 * kPi * total, 0.0) : Cplx(4.0 * kPi * total / q, 0.0);
  }
  if (std::holds_alternative<weights::PolynomialDensity>(F)) {
    throw std::invalid_argument("born_kernel: polynomial disk densities have no "
                                "scattering interpretation here");
  }
  return weights::fourier_nd(F, xi);
}

BornMatrix born_matrix(const weights::WeightSpec& F, const SphereSampling& sampling) {
  validate(sampling);
  int m = static_cast<int>(sampling.directions.size());
  BornMatrix out;
  out.entries = Matrix(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      out.entries(i, j) =
          born_kernel(F, sampling.directions[i], sampling.directions[j]);
    }
  }
  out.singular_values = singular_values(out.entries);
  out.numerical_rank = numerical_rank(out.entries);
  std::ostringstream os;
  os << "directions = " << m << ", numerical rank = " << out.numerical_rank
     << ", sigma_max = " << out.singular_values.front()
     << ", sigma_min = " << out.singular_values.back() << "\n";
  out.text = os.str();
  return out;
}

namespace {

void check_helmholtz_weight(const weights::WeightSpec& F) {
  if (weights::weight_dim(F) != 3 ||
      (!std::holds_alternative<weights::PointDistribution>(F) &&
       !std::holds_alternative<weights::GridDensity>(F))) {
    throw std::invalid_argument(
        "helmholtz: supported weights are point masses and grids in R^3");
  }
  if (const auto* pts = std::get_if<weights::PointDistribution>(&F)) {
    for (const auto& atom : pts->atoms) {
      for (const auto& term : atom.terms) {
        if (term.holo_order.total() != 0 || term.anti_order.total() != 0) {
          throw std::invalid_argument(
              "helmholtz: derivative transport across the reduction is not "
              "supported");
        }
      }
    }
  }
  if (const auto* gd = std::get_if<weights::GridDensity>(&F)) {
    if (gd->step[0] >= kPi / 2.0) {
      throw std::invalid_argument(
          "helmholtz: grid too coarse to represent the frequency 2 oscillation");
    }
  }
}

}  // namespace

weights::WeightSpec helmholtz_reduce(const weights::WeightSpec& F) {
  weights::validate(F);
  check_helmholtz_weight(F);

  if (const auto* pts = std::get_if<weights::PointDistribution>(&F)) {
    weights::PointDistribution out;
    out.dim = 1;
    for (const auto& atom : pts->atoms) {
      Cplx coeff(0.0, 0.0);
      for (const auto& term : atom.terms) coeff += term.coeff;
      coeff *= std::exp(Cplx(0.0, -2.0 * atom.location[0].real()));
      Cplx zp(atom.location[1].real(), atom.location[2].real());
      bool merged = false;
      for (auto& existing : out.atoms) {
        if (std::abs(existing.location[0] - zp) <= 1e-12) {
          existing.terms[0].coeff += coeff;
          merged = true;
          break;
        }
      }
      if (!merged) {
        out.atoms.push_back(
            {{zp}, {{coeff, MultiIndex::zero(1), MultiIndex::zero(1), {}}}, {}});
      }
    }
    std::erase_if(out.atoms, [](const weights::PointAtom& a) {
      return a.terms[0].coeff == Cplx(0.0, 0.0);
    });
    return out;
  }

  const auto& gd = std::get<weights::GridDensity>(F);
  weights::GridDensity out;
  out.dim = 2;
  out.origin = {gd.origin[1], gd.origin[2]};
  out.step = {gd.step[1], gd.step[2]};
  out.shape = {gd.shape[1], gd.shape[2]};
  out.samples.assign(static_cast<size_t>(gd.shape[1]) * gd.shape[2], Cplx(0.0, 0.0));
  for (int i = 0; i < gd.shape[0]; ++i) {
    double x1 = gd.origin[0] + (i + 0.5) * gd.step[0];
    Cplx phase = std::exp(Cplx(0.0, -2.0 * x1)) * gd.step[0];
    for (int j = 0; j < gd.shape[1]; ++j) {
      for (int k = 0; k < gd.shape[2]; ++k) {
        long flat = (static_cast<long>(i) * gd.shape[1] + j) * gd.shape[2] + k;
        out.samples[static_cast<long>(j) * gd.shape[2] + k] +=
            gd.samples[flat] * phase;
      }
    }
  }
  return out;
}

Matrix helmholtz_matrix(const weights::WeightSpec& F, const bases::BasisSpec& harmonics,
                        HelmholtzPath path) {
  weights::validate(F);
  bases::validate(harmonics);
  if (harmonics.kind != bases::BasisKind::Harmonic2D) {
    throw std::invalid_argument("helmholtz_matrix: plane harmonic family required");
  }
  check_helmholtz_weight(F);

  if (path == HelmholtzPath::Transform) {
    return assembly::assemble(helmholtz_reduce(F), harmonics, harmonics).entries;
  }

  int m = bases::family_size(harmonics);
  Matrix M(m, m);
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) {
      weights::TestFn phi;
      phi.degree = -1;
      phi.eval = [&harmonics, j, k](const std::vector<Cplx>& x) {
        Cplx zp(x[1].real(), x[2].real());
        return std::exp(Cplx(0.0, -2.0 * x[0].real())) *
               bases::eval_basis(harmonics, j, {zp}) *
               std::conj(bases::eval_basis(harmonics, k, {zp}));
      };
      M(j, k) = weights::pair(F, phi);
    }
  }
  return M;
}

}  // namespace toeprank::physics

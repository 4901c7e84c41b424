#include "toeprank/weights.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "toeprank/quadrature.hpp"

namespace toeprank::weights {

namespace {

constexpr double kPi = 3.14159265358979323846;

// n (n-1) ... (n-k+1); zero when k > n.
double falling(int n, int k) {
  if (k > n) return 0.0;
  double v = 1.0;
  for (int i = 0; i < k; ++i) v *= static_cast<double>(n - i);
  return v;
}

ExactScalar falling_exact(int n, int k) {
  if (k > n) return ExactScalar(0);
  ExactScalar v(1);
  for (int i = 0; i < k; ++i) v *= ExactScalar(n - i);
  return v;
}

Cplx cpow(Cplx z, int e) {
  Cplx v(1.0, 0.0);
  for (int i = 0; i < e; ++i) v *= z;
  return v;
}

struct Validator {
  void operator()(const PointDistribution& F) const {
    if (F.dim < 1) throw std::invalid_argument("weight: dim must be positive");
    for (const auto& a : F.atoms) {
      if (static_cast<int>(a.location.size()) != F.dim) {
        throw std::invalid_argument("weight: atom location dimension mismatch");
      }
      if (a.exact_location &&
          static_cast<int>(a.exact_location->size()) != F.dim) {
        throw std::invalid_argument("weight: exact location dimension mismatch");
      }
      if (a.terms.empty()) throw std::invalid_argument("weight: atom with no terms");
      for (const auto& t : a.terms) {
        if (t.holo_order.dim() != F.dim || t.anti_order.dim() != F.dim) {
          throw std::invalid_argument("weight: derivative order dimension mismatch");
        }
      }
    }
    for (size_t i = 0; i < F.atoms.size(); ++i) {
      for (size_t j = i + 1; j < F.atoms.size(); ++j) {
        double d2 = 0.0;
        for (int k = 0; k < F.dim; ++k) {
          d2 += std::norm(F.atoms[i].location[k] - F.atoms[j].location[k]);
        }
        if (d2 < 1e-26) throw std::invalid_argument("weight: coincident atoms");
      }
    }
  }
  void operator()(const RadialDensity& F) const {
    if (!(F.radius > 0.0) || F.radius > 1.0) {
      throw std::invalid_argument("weight: radial support radius must lie in (0, 1]");
    }
    if (!F.profile) throw std::invalid_argument("weight: null radial profile");
    if (F.alpha < 0 || F.beta < 0) {
      throw std::invalid_argument("weight: negative modulation exponent");
    }
  }
  void operator()(const PolynomialDensity& F) const {
    if (F.radius.im != 0) {
      throw std::invalid_argument("weight: polynomial density radius must be real");
    }
    if (F.radius.re <= 0 || F.radius.re > 1) {
      throw std::invalid_argument("weight: polynomial density radius must lie in (0, 1]");
    }
    for (const auto& t : F.terms) {
      if (t.p < 0 || t.q < 0) throw std::invalid_argument("weight: negative power");
    }
  }
  void operator()(const GridDensity& F) const {
    if (F.dim < 1 || F.dim > 3) throw std::invalid_argument("weight: grid dim must be 1..3");
    if (static_cast<int>(F.origin.size()) != F.dim ||
        static_cast<int>(F.step.size()) != F.dim ||
        static_cast<int>(F.shape.size()) != F.dim) {
      throw std::invalid_argument("weight: grid metadata dimension mismatch");
    }
    long cells = 1;
    for (int k = 0; k < F.dim; ++k) {
      if (F.shape[k] < 1) throw std::invalid_argument("weight: empty grid axis");
      if (!(F.step[k] > 0.0)) throw std::invalid_argument("weight: nonpositive grid step");
      cells *= F.shape[k];
    }
    if (static_cast<long>(F.samples.size()) != cells) {
      throw std::invalid_argument("weight: sample count does not match grid shape");
    }
  }
};

// Tensor rule for (1/pi) int f(r) r^{alpha+beta+1} e^{i(alpha-beta)theta} phi dr dtheta.
// Angular rule is the periodic trapezoid (exact for harmonics below n_theta).
Cplx disk_quadrature(double radius, const std::function<Cplx(double)>& radial_part,
                     int alpha, int beta, const TestFn& phi, int r_degree,
                     int theta_degree) {
  int nr, panels;
  if (r_degree >= 0) {
    nr = r_degree / 2 + 12;
    panels = 1;
  } else {
    nr = 32;
    panels = 6;
  }
  int ntheta = theta_degree >= 0 ? theta_degree + 12 : 256;

  Cplx total(0.0, 0.0);
  for (int p = 0; p < panels; ++p) {
    double a = radius * p / panels, b = radius * (p + 1) / panels;
    auto rule = gauss_legendre(nr, a, b);
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
      double r = rule.nodes[i];
      Cplx fr = radial_part(r);
      if (fr == Cplx(0.0, 0.0)) continue;
      Cplx angular(0.0, 0.0);
      for (int j = 0; j < ntheta; ++j) {
        double th = 2.0 * kPi * j / ntheta;
        Cplx z = r * Cplx(std::cos(th), std::sin(th));
        Cplx osc = std::exp(Cplx(0.0, th * (alpha - beta)));
        angular += osc * phi.eval({z});
      }
      angular *= 2.0 * kPi / ntheta;
      total += rule.weights[i] * fr * std::pow(r, alpha + beta + 1) * angular;
    }
  }
  return total / kPi;
}

Cplx pair_point(const PointDistribution& F, const TestFn& phi) {
  Cplx total(0.0, 0.0);
  for (const auto& atom : F.atoms) {
    for (const auto& term : atom.terms) {
      bool plain = term.holo_order.total() == 0 && term.anti_order.total() == 0;
      if (plain) {
        total += term.coeff * phi.eval(atom.location);
      } else {
        if (!phi.deriv) {
          throw std::invalid_argument(
              "pair: weight carries derivative terms but test function has no "
              "derivative evaluator");
        }
        total += term.coeff * phi.deriv(term.holo_order, term.anti_order, atom.location);
      }
    }
  }
  return total;
}

long grid_cells(const GridDensity& g) {
  long n = 1;
  for (int k = 0; k < g.dim; ++k) n *= g.shape[k];
  return n;
}

}  // namespace

double GridDensity::cell_measure() const {
  double v = 1.0;
  for (double s : step) v *= s;
  return v;
}

std::vector<double> GridDensity::cell_center(long flat_index) const {
  std::vector<double> x(dim);
  long rem = flat_index;
  for (int k = dim - 1; k >= 0; --k) {
    long i = rem % shape[k];
    rem /= shape[k];
    x[k] = origin[k] + (i + 0.5) * step[k];
  }
  return x;
}

TestFn monomial_testfn(const MultiIndex& alpha, const MultiIndex& beta) {
  if (alpha.dim() != beta.dim()) {
    throw std::invalid_argument("monomial_testfn: exponent dimension mismatch");
  }
  TestFn t;
  t.degree = alpha.total() + beta.total();
  t.eval = [alpha, beta](const std::vector<Cplx>& z) {
    Cplx v(1.0, 0.0);
    for (int j = 0; j < alpha.dim(); ++j) {
      v *= cpow(z[j], alpha[j]) * cpow(std::conj(z[j]), beta[j]);
    }
    return v;
  };
  t.deriv = [alpha, beta](const MultiIndex& a, const MultiIndex& b,
                          const std::vector<Cplx>& z) {
    Cplx v(1.0, 0.0);
    for (int j = 0; j < alpha.dim(); ++j) {
      double c = falling(alpha[j], a[j]) * falling(beta[j], b[j]);
      if (c == 0.0) return Cplx(0.0, 0.0);
      v *= c * cpow(z[j], alpha[j] - a[j]) * cpow(std::conj(z[j]), beta[j] - b[j]);
    }
    return v;
  };
  return t;
}

RadialDensity radial_polynomial(std::vector<double> coeffs, double radius,
                                int alpha, int beta) {
  RadialDensity f;
  f.radius = radius;
  f.alpha = alpha;
  f.beta = beta;
  f.poly_degree = coeffs.empty() ? 0 : static_cast<int>(coeffs.size()) - 1;
  f.poly_coeffs = coeffs;
  f.profile = [coeffs = std::move(coeffs)](double r) {
    double v = 0.0;
    for (size_t m = coeffs.size(); m-- > 0;) v = v * r + coeffs[m];
    return v;
  };
  return f;
}

void validate(const WeightSpec& F) { std::visit(Validator{}, F); }

int weight_dim(const WeightSpec& F) {
  return std::visit(
      [](const auto& w) -> int {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, PointDistribution>) return w.dim;
        if constexpr (std::is_same_v<T, GridDensity>) return w.dim;
        return 1;
      },
      F);
}

double support_radius(const WeightSpec& F) {
  return std::visit(
      [](const auto& w) -> double {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, PointDistribution>) {
          double best = 0.0;
          for (const auto& a : w.atoms) {
            double n2 = 0.0;
            for (const auto& z : a.location) n2 += std::norm(z);
            best = std::max(best, std::sqrt(n2));
          }
          return best;
        } else if constexpr (std::is_same_v<T, RadialDensity>) {
          return w.radius;
        } else if constexpr (std::is_same_v<T, PolynomialDensity>) {
          return w.radius.to_complex().real();
        } else {
          double best = 0.0;
          for (long mask = 0; mask < (1L << w.dim); ++mask) {
            double n2 = 0.0;
            for (int k = 0; k < w.dim; ++k) {
              double c = w.origin[k] + ((mask >> k) & 1 ? w.shape[k] * w.step[k] : 0.0);
              n2 += c * c;
            }
            best = std::max(best, std::sqrt(n2));
          }
          return best;
        }
      },
      F);
}

WeightSpec conj_weight(const WeightSpec& F) {
  return std::visit(
      [](const auto& w) -> WeightSpec {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, PointDistribution>) {
          PointDistribution out = w;
          for (auto& a : out.atoms) {
            for (auto& t : a.terms) {
              t.coeff = std::conj(t.coeff);
              if (t.exact_coeff) t.exact_coeff = t.exact_coeff->conj();
              std::swap(t.holo_order, t.anti_order);
            }
          }
          return out;
        } else if constexpr (std::is_same_v<T, RadialDensity>) {
          RadialDensity out = w;
          std::swap(out.alpha, out.beta);
          return out;
        } else if constexpr (std::is_same_v<T, PolynomialDensity>) {
          PolynomialDensity out = w;
          for (auto& t : out.terms) {
            t.coeff = t.coeff.conj();
            std::swap(t.p, t.q);
          }
          return out;
        } else {
          GridDensity out = w;
          for (auto& s : out.samples) s = std::conj(s);
          return out;
        }
      },
      F);
}

Cplx pair(const WeightSpec& F, const TestFn& phi) {
  validate(F);
  if (!phi.eval) throw std::invalid_argument("pair: null test function");
  return std::visit(
      [&phi](const auto& w) -> Cplx {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, PointDistribution>) {
          return pair_point(w, phi);
        } else if constexpr (std::is_same_v<T, RadialDensity>) {
          int r_deg = -1, th_deg = -1;
          if (w.poly_degree >= 0 && phi.degree >= 0) {
            r_deg = w.poly_degree + w.alpha + w.beta + phi.degree + 1;
          }
          if (phi.degree >= 0) th_deg = w.alpha + w.beta + phi.degree;
          return disk_quadrature(
              w.radius, [&w](double r) { return Cplx(w.profile(r), 0.0); },
              w.alpha, w.beta, phi, r_deg, th_deg);
        } else if constexpr (std::is_same_v<T, PolynomialDensity>) {
          std::vector<std::pair<Cplx, std::pair<int, int>>> terms;
          int max_total = 0, max_skew = 0;
          for (const auto& t : w.terms) {
            terms.push_back({t.coeff.to_complex(), {t.p, t.q}});
            max_total = std::max(max_total, t.p + t.q);
            max_skew = std::max(max_skew, std::abs(t.p - t.q));
          }
          int r_deg = phi.degree >= 0 ? max_total + phi.degree + 1 : -1;
          int th_deg = phi.degree >= 0 ? max_skew + phi.degree : -1;
          TestFn weighted;
          weighted.degree = phi.degree;
          weighted.eval = [&terms, &phi](const std::vector<Cplx>& z) {
            Cplx dens(0.0, 0.0);
            for (const auto& t : terms) {
              dens += t.first * cpow(z[0], t.second.first) *
                      cpow(std::conj(z[0]), t.second.second);
            }
            return dens * phi.eval(z);
          };
          double rad = w.radius.to_complex().real();
          return disk_quadrature(
              rad, [](double) { return Cplx(1.0, 0.0); }, 0, 0, weighted,
              r_deg >= 0 ? r_deg + 0 : -1, th_deg >= 0 ? th_deg : -1);
        } else {
          Cplx total(0.0, 0.0);
          double vol = w.cell_measure();
          long n = grid_cells(w);
          for (long i = 0; i < n; ++i) {
            if (w.samples[i] == Cplx(0.0, 0.0)) continue;
            auto x = w.cell_center(i);
            std::vector<Cplx> zx(x.size());
            for (size_t k = 0; k < x.size(); ++k) zx[k] = Cplx(x[k], 0.0);
            total += w.samples[i] * phi.eval(zx);
          }
          return total * vol;
        }
      },
      F);
}

Cplx moment(const WeightSpec& F, const MultiIndex& alpha, const MultiIndex& beta) {
  validate(F);
  if (alpha.dim() != beta.dim()) {
    throw std::invalid_argument("moment: exponent dimension mismatch");
  }
  return std::visit(
      [&](const auto& w) -> Cplx {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, PointDistribution>) {
          if (alpha.dim() != w.dim) {
            throw std::invalid_argument("moment: exponent dimension mismatch");
          }
          Cplx total(0.0, 0.0);
          for (const auto& atom : w.atoms) {
            for (const auto& term : atom.terms) {
              Cplx v = term.coeff;
              for (int j = 0; j < w.dim && v != Cplx(0.0, 0.0); ++j) {
                double c = falling(alpha[j], term.holo_order[j]) *
                           falling(beta[j], term.anti_order[j]);
                if (c == 0.0) {
                  v = 0.0;
                  break;
                }
                v *= c * cpow(atom.location[j], alpha[j] - term.holo_order[j]) *
                     cpow(std::conj(atom.location[j]), beta[j] - term.anti_order[j]);
              }
              total += v;
            }
          }
          return total;
        } else if constexpr (std::is_same_v<T, RadialDensity>) {
          if (alpha.dim() != 1) {
            throw std::invalid_argument("moment: radial weights are 1-D");
          }
          // angular selection: nonzero only when total z-power matches zbar-power
          if (w.alpha + alpha[0] != w.beta + beta[0]) return Cplx(0.0, 0.0);
          long l = w.alpha + alpha[0] + w.beta + beta[0] + 1;
          return Cplx(2.0 * radial_moment(w, l), 0.0);
        } else if constexpr (std::is_same_v<T, PolynomialDensity>) {
          if (alpha.dim() != 1) {
            throw std::invalid_argument("moment: polynomial densities are 1-D");
          }
          return moment_exact(WeightSpec(w), alpha, beta).to_complex();
        } else {
          if (w.dim != 2 || alpha.dim() != 1) {
            throw std::invalid_argument(
                "moment: grid moments require a 2-D grid treated as the complex plane");
          }
          Cplx total(0.0, 0.0);
          double vol = w.cell_measure();
          long n = grid_cells(w);
          for (long i = 0; i < n; ++i) {
            if (w.samples[i] == Cplx(0.0, 0.0)) continue;
            auto x = w.cell_center(i);
            Cplx z(x[0], x[1]);
            total += w.samples[i] * cpow(z, alpha[0]) * cpow(std::conj(z), beta[0]);
          }
          return total * vol;
        }
      },
      F);
}

ExactScalar moment_exact(const WeightSpec& F, const MultiIndex& alpha,
                         const MultiIndex& beta) {
  validate(F);
  return std::visit(
      [&](const auto& w) -> ExactScalar {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, PointDistribution>) {
          if (alpha.dim() != w.dim || beta.dim() != w.dim) {
            throw std::invalid_argument("moment_exact: exponent dimension mismatch");
          }
          ExactScalar total(0);
          for (const auto& atom : w.atoms) {
            if (!atom.exact_location) {
              throw std::domain_error("moment_exact: atom lacks exact location");
            }
            for (const auto& term : atom.terms) {
              if (!term.exact_coeff) {
                throw std::domain_error("moment_exact: term lacks exact coefficient");
              }
              ExactScalar v = *term.exact_coeff;
              for (int j = 0; j < w.dim; ++j) {
                ExactScalar c = falling_exact(alpha[j], term.holo_order[j]) *
                                falling_exact(beta[j], term.anti_order[j]);
                if (c.is_zero()) {
                  v = ExactScalar(0);
                  break;
                }
                const ExactScalar& loc = (*atom.exact_location)[j];
                v *= c * exact_pow(loc, alpha[j] - term.holo_order[j]) *
                     exact_pow(loc.conj(), beta[j] - term.anti_order[j]);
              }
              total += v;
            }
          }
          return total;
        } else if constexpr (std::is_same_v<T, PolynomialDensity>) {
          if (alpha.dim() != 1 || beta.dim() != 1) {
            throw std::invalid_argument("moment_exact: polynomial densities are 1-D");
          }
          // term z^p zbar^q against z^a zbar^b integrates to
          // rho^{2(p+a)+2}/(p+a+1) when p+a = q+b, else 0.
          ExactScalar total(0);
          for (const auto& t : w.terms) {
            int pa = t.p + alpha[0], qb = t.q + beta[0];
            if (pa != qb) continue;
            ExactScalar r2 = w.radius * w.radius;
            total += t.coeff * exact_pow(r2, pa + 1) * ExactScalar::rational(1, pa + 1);
          }
          return total;
        } else {
          throw std::domain_error("moment_exact: weight has no exact representation");
        }
      },
      F);
}

double radial_moment(const RadialDensity& f, long l) {
  if (l < 0) throw std::invalid_argument("radial_moment: negative power");
  validate(WeightSpec(f));
  if (!f.poly_coeffs.empty()) {
    double v = 0.0;
    for (size_t m = 0; m < f.poly_coeffs.size(); ++m) {
      v += f.poly_coeffs[m] * std::pow(f.radius, static_cast<double>(l + m + 1)) /
           static_cast<double>(l + m + 1);
    }
    return v;
  }
  int nodes = 32, panels = 8;
  if (f.poly_degree >= 0) {
    nodes = static_cast<int>((f.poly_degree + l) / 2 + 8);
    panels = 1;
  }
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    double a = f.radius * p / panels, b = f.radius * (p + 1) / panels;
    auto rule = gauss_legendre(nodes, a, b);
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
      double r = rule.nodes[i];
      total += rule.weights[i] * f.profile(r) * std::pow(r, static_cast<double>(l));
    }
  }
  return total;
}

Cplx cauchy_transform(const WeightSpec& F, Cplx z) {
  validate(F);
  return std::visit(
      [&](const auto& w) -> Cplx {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, PointDistribution>) {
          if (w.dim != 1) {
            throw std::invalid_argument("cauchy_transform: 1-D weights only");
          }
          Cplx total(0.0, 0.0);
          for (const auto& atom : w.atoms) {
            Cplx d = z - atom.location[0];
            if (std::abs(d) < 1e-9) {
              throw std::domain_error("cauchy_transform: evaluation point hits an atom");
            }
            for (const auto& term : atom.terms) {
              // kernel is holomorphic in w off z, so antiholomorphic
              // derivatives contribute nothing
              if (term.anti_order[0] > 0) continue;
              int a = term.holo_order[0];
              double fact = 1.0;
              for (int i = 2; i <= a; ++i) fact *= i;
              total += term.coeff * fact / (kPi * cpow(d, a + 1));
            }
          }
          return total;
        } else if constexpr (std::is_same_v<T, GridDensity>) {
          if (w.dim != 2) {
            throw std::invalid_argument(
                "cauchy_transform: grid weight must be a 2-D plane grid");
          }
          double margin = std::max(w.step[0], w.step[1]);
          bool inside = z.real() > w.origin[0] - margin &&
                        z.real() < w.origin[0] + w.shape[0] * w.step[0] + margin &&
                        z.imag() > w.origin[1] - margin &&
                        z.imag() < w.origin[1] + w.shape[1] * w.step[1] + margin;
          if (inside) {
            throw std::domain_error("cauchy_transform: point inside grid support");
          }
          Cplx total(0.0, 0.0);
          double vol = w.cell_measure();
          long n = grid_cells(w);
          for (long i = 0; i < n; ++i) {
            auto x = w.cell_center(i);
            total += w.samples[i] / (kPi * (z - Cplx(x[0], x[1])));
          }
          return total * vol;
        } else {
          double rad = support_radius(F);
          if (std::abs(z) <= rad + 1e-3) {
            throw std::domain_error("cauchy_transform: point inside disk support");
          }
          TestFn kernel;
          kernel.degree = -1;
          kernel.eval = [z](const std::vector<Cplx>& p) {
            return 1.0 / (kPi * (z - p[0]));
          };
          return pair(F, kernel);
        }
      },
      F);
}

WeightSpec project_measure(const WeightSpec& mu, const std::vector<double>& zeta) {
  validate(mu);
  double n2 = 0.0;
  for (double c : zeta) n2 += c * c;
  if (std::abs(std::sqrt(n2) - 1.0) > 1e-12) {
    throw std::invalid_argument("project_measure: direction must be a unit vector");
  }
  return std::visit(
      [&](const auto& w) -> WeightSpec {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, PointDistribution>) {
          if (static_cast<int>(zeta.size()) != w.dim) {
            throw std::invalid_argument("project_measure: direction dimension mismatch");
          }
          // collect projected masses, merging coincident images
          std::vector<std::pair<double, Cplx>> masses;
          for (const auto& atom : w.atoms) {
            double t = 0.0;
            for (int k = 0; k < w.dim; ++k) {
              if (std::abs(atom.location[k].imag()) > 1e-12) {
                throw std::invalid_argument(
                    "project_measure: measure must live on the real slice");
              }
              t += atom.location[k].real() * zeta[k];
            }
            Cplx c(0.0, 0.0);
            for (const auto& term : atom.terms) {
              if (term.holo_order.total() != 0 || term.anti_order.total() != 0) {
                throw std::invalid_argument(
                    "project_measure: derivative terms are not projectable");
              }
              c += term.coeff;
            }
            bool merged = false;
            for (auto& m : masses) {
              if (std::abs(m.first - t) < 1e-12) {
                m.second += c;
                merged = true;
                break;
              }
            }
            if (!merged) masses.push_back({t, c});
          }
          PointDistribution out;
          out.dim = 1;
          double scale = 0.0;
          for (const auto& m : masses) scale = std::max(scale, std::abs(m.second));
          for (const auto& m : masses) {
            if (std::abs(m.second) < 1e-14 * std::max(1.0, scale)) continue;
            out.atoms.push_back(
                {{Cplx(m.first, 0.0)},
                 {{m.second, MultiIndex::zero(1), MultiIndex::zero(1)}},
                 {}});
          }
          return out;
        } else if constexpr (std::is_same_v<T, GridDensity>) {
          if (static_cast<int>(zeta.size()) != w.dim) {
            throw std::invalid_argument("project_measure: direction dimension mismatch");
          }
          long n = grid_cells(w);
          double tmin = 0.0, tmax = 0.0;
          for (long i = 0; i < n; ++i) {
            auto x = w.cell_center(i);
            double t = 0.0;
            for (int k = 0; k < w.dim; ++k) t += x[k] * zeta[k];
            if (i == 0) tmin = tmax = t;
            tmin = std::min(tmin, t);
            tmax = std::max(tmax, t);
          }
          int bins = 2 * *std::max_element(w.shape.begin(), w.shape.end());
          double width = (tmax - tmin) / bins;
          if (width <= 0.0) width = 1.0;
          GridDensity out;
          out.dim = 1;
          out.origin = {tmin - 0.5 * width};
          out.step = {width};
          out.shape = {bins + 1};
          out.samples.assign(bins + 1, Cplx(0.0, 0.0));
          double vol = w.cell_measure();
          for (long i = 0; i < n; ++i) {
            auto x = w.cell_center(i);
            double t = 0.0;
            for (int k = 0; k < w.dim; ++k) t += x[k] * zeta[k];
            int b = static_cast<int>(std::floor((t - out.origin[0]) / width));
            b = std::clamp(b, 0, bins);
            out.samples[b] += w.samples[i] * vol / width;
          }
          return out;
        } else {
          throw std::invalid_argument(
              "project_measure: only discrete and grid measures are projectable");
        }
      },
      mu);
}

Cplx fourier_1d(const WeightSpec& mu, double t) { return fourier_nd(mu, {t}); }

Cplx fourier_nd(const WeightSpec& mu, const std::vector<double>& xi) {
  validate(mu);
  return std::visit(
      [&](const auto& w) -> Cplx {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, PointDistribution>) {
          if (static_cast<int>(xi.size()) != w.dim) {
            throw std::invalid_argument("fourier: frequency dimension mismatch");
          }
          Cplx total(0.0, 0.0);
          for (const auto& atom : w.atoms) {
            double phase = 0.0;
            for (int k = 0; k < w.dim; ++k) {
              if (std::abs(atom.location[k].imag()) > 1e-12) {
                throw std::invalid_argument("fourier: measure must live on the real slice");
              }
              phase += atom.location[k].real() * xi[k];
            }
            Cplx c(0.0, 0.0);
            for (const auto& term : atom.terms) {
              if (term.holo_order.total() != 0 || term.anti_order.total() != 0) {
                throw std::invalid_argument("fourier: derivative terms unsupported");
              }
              c += term.coeff;
            }
            total += c * std::exp(Cplx(0.0, -phase));
          }
          return total;
        } else if constexpr (std::is_same_v<T, GridDensity>) {
          if (static_cast<int>(xi.size()) != w.dim) {
            throw std::invalid_argument("fourier: frequency dimension mismatch");
          }
          Cplx total(0.0, 0.0);
          double vol = w.cell_measure();
          long n = grid_cells(w);
          for (long i = 0; i < n; ++i) {
            auto x = w.cell_center(i);
            double phase = 0.0;
            for (int k = 0; k < w.dim; ++k) phase += x[k] * xi[k];
            total += w.samples[i] * std::exp(Cplx(0.0, -phase));
          }
          return total * vol;
        } else {
          throw std::invalid_argument("fourier: unsupported weight kind");
        }
      },
      mu);
}

}  // namespace toeprank::weights

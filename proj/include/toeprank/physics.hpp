#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "toeprank/bases.hpp"
#include "toeprank/linalg.hpp"
#include "toeprank/weights.hpp"

namespace toeprank::physics {

using Cplx = std::complex<double>;

// Uniform square grid on [-L, L)^2 with n nodes per axis, periodic for
// spectral differentiation. Node i sits at -L + i * step.
struct GridSpec {
  int n = 512;
  double half_width = 11.0;

  double step() const { return 2.0 * half_width / n; }
  double coord(int i) const { return -half_width + step() * i; }
  long size() const { return static_cast<long>(n) * n; }
  bool operator==(const GridSpec& o) const {
    return n == o.n && half_width == o.half_width;
  }
};

// Complex samples at grid nodes, row-major with index ix * n + iy.
struct GridFn {
  GridSpec grid;
  std::vector<Cplx> values;

  Cplx& at(int ix, int iy) { return values[static_cast<long>(ix) * grid.n + iy]; }
  Cplx at(int ix, int iy) const { return values[static_cast<long>(ix) * grid.n + iy]; }
};

GridFn sample_grid(const GridSpec& grid, const std::function<Cplx(double, double)>& f);

// <a, b> = step^2 sum a conj(b); grids must coincide.
Cplx grid_inner(const GridFn& a, const GridFn& b);
double grid_norm(const GridFn& a);

// Magnetic ladder configuration. The creation step applies
//   (2i)^{-1} (d - (B/2) (x1 - i x2))  with  d = d/dx1 - i d/dx2,
// which raises the level of the B-field ground family. Set
// conjugate_convention to flip both signs (d/dx1 + i d/dx2 and x1 + i x2)
// when matching sources that use the mirrored ladder.
struct LandauConfig {
  double field = 2.0;  // B > 0
  int level = 0;       // q >= 0
  int truncation = 8;  // family size
  GridSpec grid;
  bool conjugate_convention = false;
  bool spectral = true;  // FFT derivatives; false = 4th-order finite differences

  double level_energy() const { return (2.0 * level + 1.0) * field; }
};

// One application of the raising operator on grid data. Spectral mode checks
// that u is resolved (negligible energy near the Nyquist band) and throws
// std::invalid_argument when the grid is too coarse.
GridFn creation_apply(const GridFn& u, const LandauConfig& cfg);

// Orthonormal level-q family of size cfg.truncation: raise z^s e^{-B|z|^2/4}
// q times, then modified Gram-Schmidt under the grid inner product. Throws
// std::runtime_error if the family degenerates at the grid resolution.
std::vector<GridFn> landau_basis(const LandauConfig& cfg);

struct SpectrumReport {
  std::vector<double> eigenvalues;  // descending; real parts when Hermitian
  double hermiticity_gap = 0.0;     // max |M - M^adj|
  std::string text;
};

struct LandauToeplitz {
  Matrix entries;
  SpectrumReport spectrum;
  double level_energy = 0.0;
};

// Real density with compact support in the disk of given radius about
// (center_x, center_y); evaluated only inside that disk, zero outside.
struct LocalDensity {
  std::function<double(double, double)> value;
  double center_x = 0.0;
  double center_y = 0.0;
  double radius = 1.0;
};

// Compression of a multiplication operator to the level-q family:
// entries(s, t) = integral V x_s conj(x_t) under plane Lebesgue measure.
// Densities integrate on a 4x spectrally refined restriction of the grid to
// the support box; the support must stay inside the grid. Supported weights:
// point masses (dim 1, plane = C), radial densities with no angular
// modulation, and 2-D grid densities whose cells sit on a dyadic refinement
// of the basis grid. The overloads taking a prebuilt basis trust it and skip
// the rebuild.
LandauToeplitz landau_toeplitz(const weights::WeightSpec& V, const LandauConfig& cfg);
LandauToeplitz landau_toeplitz(const weights::WeightSpec& V, const LandauConfig& cfg,
                               const std::vector<GridFn>& basis);
LandauToeplitz landau_toeplitz(const LocalDensity& V, const LandauConfig& cfg);
LandauToeplitz landau_toeplitz(const LocalDensity& V, const LandauConfig& cfg,
                               const std::vector<GridFn>& basis);
// Density known only at the basis grid nodes; node-sum quadrature at grid
// resolution, accuracy tied to the smoothness of the samples.
LandauToeplitz landau_toeplitz(const GridFn& V, const LandauConfig& cfg);
LandauToeplitz landau_toeplitz(const GridFn& V, const LandauConfig& cfg,
                               const std::vector<GridFn>& basis);

// W = sum_m coeffs[m] Delta^m V with the periodic 5-point Laplacian.
GridFn dq_transform(const GridFn& V, const std::vector<double>& coeffs);

// Eigenvalues of the level-q compression of V against the level-0 compression
// of the transformed density. The coefficients are caller input; the gap is
// reported, not asserted.
struct SpectraComparison {
  std::vector<double> spectrum_q;
  std::vector<double> spectrum_0;
  double max_gap = 0.0;
  std::string text;
};
SpectraComparison dq_spectra_comparison(const LocalDensity& V,
                                        const std::vector<double>& coeffs,
                                        const LandauConfig& cfg);

// Unit directions with surface quadrature weights (sum = sphere area).
struct SphereSampling {
  int dim = 3;
  std::vector<std::vector<double>> directions;
  std::vector<double> weights;

  static SphereSampling circle(int count);               // dim 2, uniform angles
  static SphereSampling fibonacci(int count);            // dim 3, spiral nodes
  static SphereSampling icosahedral(int refinements);    // dim 3, 12/42/162/...
};
void validate(const SphereSampling& s);

// K(omega, sigma) = <F, e^{i x . (omega - sigma)}> for unit directions.
// Point and grid weights evaluate directly; a radial density is read as the
// rotation-invariant profile f(|x|) in R^3 under plain Lebesgue measure.
Cplx born_kernel(const weights::WeightSpec& F, const std::vector<double>& omega,
                 const std::vector<double>& sigma);

struct BornMatrix {
  Matrix entries;  // K(omega_i, omega_j) over the sampling directions
  std::vector<double> singular_values;
  int numerical_rank = 0;
  std::string text;
};
BornMatrix born_matrix(const weights::WeightSpec& F, const SphereSampling& sampling);

// Gram-type matrix of plane harmonics against the x1-oscillation at frequency
// 2: entries(j, k) = <F, e^{-2 i x1} h_j(x') conj(h_k(x'))> for a weight in
// R^3 with x' = (x2, x3). Direct evaluates the triple product; Transform
// integrates out x1 first and assembles the reduced plane weight.
enum class HelmholtzPath { Direct, Transform };
Matrix helmholtz_matrix(const weights::WeightSpec& F, const bases::BasisSpec& harmonics,
                        HelmholtzPath path = HelmholtzPath::Direct);

// integral over x1 against e^{-2 i x1}: weight in R^3 -> weight on the plane
// x1 = 0 (atoms keep (x2, x3) packed as one complex slot).
weights::WeightSpec helmholtz_reduce(const weights::WeightSpec& F);

}  // namespace toeprank::physics

#pragma once

// Classical analytic-signal fields of a coherent state and direct transverse
// quadrature of their time-averaged momentum and angular momentum densities.
//
// The amplitude factor (hbar omega0 dw / 2 eps0 c)^{1/2} is left out of the
// fields and the momentum density is normalised so that its plane integral is
// in the same units of hbar omega0/(c^2 T) as the operator expectations. The
// averaging window T therefore appears only inside that shared prefactor.

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpbeam/execution.hpp"
#include "qpbeam/geometry.hpp"
#include "qpbeam/states.hpp"

namespace qpbeam {

using CVec3 = std::array<cplx, 3>;

/// Whether the first-order longitudinal terms i (c/omega0) grad_perp are kept.
enum class GradientTerms { include, omit };

enum class TimeAverage { analytic, sampled };

/// E+ = i exp[-i omega0 (t - z/c)] sum_A alpha_A (x^_mu psi_A + i z^ lambda_bar d_mu psi_A).
/// Throws std::invalid_argument for single-photon states.
CVec3 classical_E_plus(const BeamState& state, const Vec3& r, double t, const BeamParams& beam,
                       GradientTerms gradient = GradientTerms::include);

/// B+ = (i/c) exp[-i omega0 (t - z/c)] sum_A alpha_A (z^ x x^_mu psi_A + i lambda_bar x^_mu x grad_perp psi_A).
CVec3 classical_B_plus(const BeamState& state, const Vec3& r, double t, const BeamParams& beam,
                       GradientTerms gradient = GradientTerms::include);

/// Period-averaged momentum density c Re(E+* x B+) [m^-2]. The sampled mode
/// averages 2c Re E+(t) x Re B+(t) over `samples` equally spaced times of one
/// optical period instead.
Vec3 time_averaged_momentum_density(const BeamState& state, double x, double y, double z,
                                    const BeamParams& beam,
                                    TimeAverage mode = TimeAverage::analytic, int samples = 32,
                                    GradientTerms gradient = GradientTerms::include);

struct GridSpec {
  int n = 512;                ///< nodes per axis
  double extent_factor = 8.0; ///< half-width in units of w0
  double z = 0.0;             ///< plane [m]
  GradientTerms gradient = GradientTerms::include;
  Execution execution = Execution::parallel;
};

struct CoverageCheck {
  bool warning = false;
  std::string message;
};

/// Warns when the half-width is below 6 w(z) or n < 128.
CoverageCheck check_coverage(const GridSpec& grid, const BeamParams& beam);

class CoverageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Plane integrals of the density d, of r x d with r = (x, y, z), and of the
/// intensity moments x d_z, y d_z (for centroids).
struct DensityIntegrals {
  double px = 0.0, py = 0.0, pz = 0.0;
  double jx = 0.0, jy = 0.0, jz = 0.0;
  double x_pz = 0.0, y_pz = 0.0;
};

/// Row-parallel Simpson quadrature on precomputed 1D mode tables. Row sums are
/// combined by a fixed-order pairwise reduction, so serial and parallel runs
/// are bitwise identical. Throws std::invalid_argument for n < 3.
DensityIntegrals integrate_densities(const BeamState& state, const BeamParams& beam,
                                     const GridSpec& grid);

/// Straightforward node-by-node evaluation through time_averaged_momentum_density.
DensityIntegrals integrate_densities_reference(const BeamState& state, const BeamParams& beam,
                                               const GridSpec& grid);

struct MomentComparison {
  std::string quantity;  ///< Px, Py, Pz, Jx, Jy, Jz
  double operator_value = 0.0;
  double quadrature_value = 0.0;
  double rel_error = 0.0;
};

/// |op - quad| / max(|op|, 1e-12).
double relative_error(double operator_value, double quadrature_value);

struct MomentReport {
  std::vector<MomentComparison> comparisons;
  DensityIntegrals integrals;
  CoverageCheck coverage;
  double max_rel_error() const;
};

/// Integrates the densities on `grid` and compares with operator expectations
/// (both in physical units, theta0 and lambda_bar resolved). With `strict`, a
/// coverage warning throws CoverageError.
MomentReport integrate_moments(const BeamState& state, const BeamParams& beam,
                               const GridSpec& grid, bool strict = false);

struct DensitySample {
  double x = 0.0;
  double y = 0.0;
  Vec3 p{};  ///< momentum density
  Vec3 j{};  ///< r x p
};

/// Row-major n x n samples of the densities on the grid.
std::vector<DensitySample> density_map(const BeamState& state, const BeamParams& beam,
                                       const GridSpec& grid);

}  // namespace qpbeam

#pragma once

// Hermite-Gauss modes psi_nm(x, y, z) of waist w0 at the beam's central
// frequency, their Fourier transforms, and the 1D ladder matrix elements.
//
// Convention: psi(x, z) = (2 pi)^{-1} Int psiT(k) exp(i k.x - i z k^2 c / 2 omega) d^2k,
// which fixes the Gouy factor exp(-i (n + 1/2) atan(z / z_R)) per axis and the
// wavefront curvature exp(+i k0 x^2 / 2R(z)).

#include <Eigen/Dense>
#include <complex>
#include <span>

#include "qpbeam/beam.hpp"

namespace qpbeam {

/// Normalised Hermite functions phi_n(s) for n = 0..value.size()-1, with
/// int phi_n phi_m ds = delta_nm.
void hermite_functions(double s, std::span<double> value);

/// As above plus derivatives phi_n'(s) = sqrt(2n) phi_{n-1}(s) - s phi_n(s).
void hermite_functions(double s, std::span<double> value, std::span<double> deriv);

/// 1D normalised HG amplitude u_n(x, z) [m^-1/2]. Throws for n < 0.
cplx hg1d(int n, double x, double z, const BeamParams& beam);

/// d u_n / dx, from the closed form (Hermite derivative and curvature phase).
cplx hg1d_dx(int n, double x, double z, const BeamParams& beam);

/// u_n(x, z) and d u_n/dx for n = 0..value.size()-1 in one pass.
void hg1d_table(double x, double z, const BeamParams& beam, std::span<cplx> value,
                std::span<cplx> deriv);

/// psi_nm(x, y, z) = u_n(x, z) u_m(y, z) [m^-1].
cplx hg2d(int n, int m, double x, double y, double z, const BeamParams& beam);

/// 1D transform (2 pi)^{-1/2} Int u_n(x, 0) exp(-i k x) dx [m^1/2].
cplx hg1d_fourier(int n, double k, const BeamParams& beam);

/// psiT_nm(kx, ky) = (2 pi)^{-1} Int psi_nm(x, 0) exp(-i k.x) d^2x [m]
///              = (-i)^{n+m} (w0/sqrt2) phi_n(kx w0/sqrt2) phi_m(ky w0/sqrt2).
cplx hg_fourier(int n, int m, double kx, double ky, const BeamParams& beam);

struct KernelCheckOptions {
  int k_points = 2048;     ///< trapezoid nodes of the inverse transform
  double k_extent = 12.0;  ///< half-width in units of sqrt2 / w0
  int x_points = 65;       ///< comparison grid per axis
  double x_extent = 4.0;   ///< half-width in units of w(z)
};

/// Max |closed form - numeric inverse transform of psiT exp(-i z k^2 c/2 omega)|
/// over a transverse grid, relative to max |psi_nm|.
double propagate_kernel_check(int n, int m, double z, const BeamParams& beam,
                              const KernelCheckOptions& options = {});

/// 1D ladder elements of the HG basis:
///   x = w0 * X,  X[n][n'] = (sqrt(n') d_{n',n+1} + sqrt(n) d_{n,n'+1}) / 2
///   d/dx = D / w0,  D[n][n'] = sqrt(n') d_{n',n+1} - sqrt(n) d_{n,n'+1}
struct LadderMatrices {
  Eigen::MatrixXd x;  ///< units of w0
  Eigen::MatrixXd d;  ///< units of 1/w0
};

LadderMatrices ladder_matrix_elements(int ncut);

/// 2D overlap Int psi*_nm psi_n'm' d^2x by direct tensor quadrature:
/// Gauss-Hermite (64 nodes per axis) at z = 0, otherwise composite Simpson on
/// `points` nodes per axis over +-8 w(z).
cplx overlap_2d(int n, int m, int n2, int m2, double z, const BeamParams& beam,
                int points = 513);

/// All overlaps for n, m <= nmax, flattened as p = n (nmax+1) + m. The tensor
/// rule factorises for separable integrands, so this is two 1D quadratures.
Eigen::MatrixXcd overlap_matrix(int nmax, double z, const BeamParams& beam,
                                int points = 513);

}  // namespace qpbeam

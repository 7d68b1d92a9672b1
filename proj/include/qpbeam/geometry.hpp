#pragma once

// Polarisation geometry of a single plane-wave component: the rotation that
// carries {x, y, z} onto the local frame {e1, e2, k/|k|}, and its first-order
// paraxial approximation.

#include <array>

#include "qpbeam/constants.hpp"

namespace qpbeam {

using Vec3 = std::array<double, 3>;
/// Row-major 3x3 matrix.
using Mat3 = std::array<Vec3, 3>;

Vec3 cross(const Vec3& a, const Vec3& b);
double dot(const Vec3& a, const Vec3& b);
double norm(const Vec3& a);
Vec3 operator-(const Vec3& a, const Vec3& b);
Vec3 operator+(const Vec3& a, const Vec3& b);
Vec3 operator*(double s, const Vec3& a);
Vec3 apply(const Mat3& r, const Vec3& v);
Mat3 multiply(const Mat3& a, const Mat3& b);
Mat3 transpose(const Mat3& a);
double determinant(const Mat3& a);
Mat3 identity3();

/// Forward-propagating wave vector (kx, ky, kz > 0) at angular frequency omega.
/// Evanescent components (k_perp > omega/c) are rejected.
class WaveVector {
 public:
  WaveVector(double kx, double ky, double omega, double c = kSpeedOfLight);

  /// Builds the wave vector at polar angle theta from z and azimuth phi.
  static WaveVector from_angles(double theta, double phi, double omega,
                                double c = kSpeedOfLight);

  double kx() const { return kx_; }
  double ky() const { return ky_; }
  double omega() const { return omega_; }
  double c() const { return c_; }
  double k() const { return omega_ / c_; }
  double k_perp() const;
  double kz() const;
  /// theta = arcsin(k_perp c / omega), in [0, pi/2].
  double theta() const;
  Vec3 unit() const;

 private:
  double kx_;
  double ky_;
  double omega_;
  double c_;
};

/// Triple of 3-vectors. The paraxial frame is deliberately allowed to be
/// non-orthonormal, so this is not a rotation matrix.
struct LocalFrame {
  Vec3 e1;
  Vec3 e2;
  Vec3 e3;
};

/// R(theta, n) = I + E sin(theta) + E^2 (1 - cos(theta)), E_ij = -eps_ijk n_k.
/// Throws std::invalid_argument unless |axis| = 1 within 1e-12.
Mat3 rodrigues_rotation(double theta, const Vec3& axis);

/// e1 = R x, e2 = R y, e3 = R z with axis n = z x k / |z x k|.
/// On-axis waves (k_perp = 0) get the identity frame.
LocalFrame local_frame_exact(const WaveVector& k);

/// e1 = x - z kx/k, e2 = y - z ky/k (not renormalised), e3 = k/|k|.
LocalFrame local_frame_paraxial(const WaveVector& k);

/// kz/k = sqrt(1 - (k_perp c/omega)^2).
double kappa_z(const WaveVector& k);

/// 1 - (k_perp c/omega)^2 / 2.
double kappa_z_paraxial(const WaveVector& k);

/// Largest absolute component difference between two frames.
double frame_deviation(const LocalFrame& a, const LocalFrame& b);

/// Max |e_i . e_j - delta_ij| together with |e1 x e2 - e3|.
double orthonormality_defect(const LocalFrame& f);

}  // namespace qpbeam

#include "qpbeam/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qpbeam {

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

Vec3 operator+(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }

Vec3 apply(const Mat3& r, const Vec3& v) {
  return {dot(r[0], v), dot(r[1], v), dot(r[2], v)};
}

Mat3 multiply(const Mat3& a, const Mat3& b) {
  Mat3 out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) out[i][j] += a[i][k] * b[k][j];
  return out;
}

Mat3 transpose(const Mat3& a) {
  Mat3 out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i][j] = a[j][i];
  return out;
}

double determinant(const Mat3& a) { return dot(a[0], cross(a[1], a[2])); }

Mat3 identity3() { return {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}}; }

WaveVector::WaveVector(double kx, double ky, double omega, double c)
    : kx_(kx), ky_(ky), omega_(omega), c_(c) {
  if (!(omega > 0.0) || !(c > 0.0))
    throw std::invalid_argument("WaveVector: omega and c must be positive");
  if (!std::isfinite(kx) || !std::isfinite(ky))
    throw std::invalid_argument("WaveVector: non-finite transverse component");
  if (k_perp() > k())
    throw std::invalid_argument(
        "WaveVector: k_perp exceeds omega/c (evanescent component)");
}

WaveVector WaveVector::from_angles(double theta, double phi, double omega,
                                   double c) {
  if (theta < 0.0 || theta > kPi / 2)
    throw std::invalid_argument("WaveVector: theta outside [0, pi/2]");
  const double kp = std::sin(theta) * omega / c;
  return WaveVector(kp * std::cos(phi), kp * std::sin(phi), omega, c);
}

double WaveVector::k_perp() const { return std::hypot(kx_, ky_); }

double WaveVector::theta() const {
  return std::asin(std::min(1.0, k_perp() / k()));
}

double WaveVector::kz() const { return k() * kappa_z(*this); }

Vec3 WaveVector::unit() const {
  const double kk = k();
  return {kx_ / kk, ky_ / kk, kz() / kk};
}

Mat3 rodrigues_rotation(double theta, const Vec3& axis) {
  if (std::abs(norm(axis) - 1.0) > 1e-12)
    throw std::invalid_argument("rodrigues_rotation: axis is not a unit vector");
  const auto& n = axis;
  const Mat3 e{Vec3{0.0, -n[2], n[1]}, Vec3{n[2], 0.0, -n[0]},
               Vec3{-n[1], n[0], 0.0}};
  const Mat3 e2 = multiply(e, e);
  const double s = std::sin(theta);
  const double v = 1.0 - std::cos(theta);
  Mat3 r = identity3();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] += s * e[i][j] + v * e2[i][j];
  return r;
}

LocalFrame local_frame_exact(const WaveVector& k) {
  const double kp = k.k_perp();
  if (kp == 0.0) return {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
  const Vec3 axis{-k.ky() / kp, k.kx() / kp, 0.0};
  const Mat3 r = rodrigues_rotation(k.theta(), axis);
  return {Vec3{r[0][0], r[1][0], r[2][0]}, Vec3{r[0][1], r[1][1], r[2][1]},
          Vec3{r[0][2], r[1][2], r[2][2]}};
}

LocalFrame local_frame_paraxial(const WaveVector& k) {
  const double kk = k.k();
  return {Vec3{1.0, 0.0, -k.kx() / kk}, Vec3{0.0, 1.0, -k.ky() / kk}, k.unit()};
}

double kappa_z(const WaveVector& k) {
  const double s = k.k_perp() / k.k();
  return std::sqrt(std::max(0.0, 1.0 - s * s));
}

double kappa_z_paraxial(const WaveVector& k) {
  const double s = k.k_perp() / k.k();
  return 1.0 - 0.5 * s * s;
}

double frame_deviation(const LocalFrame& a, const LocalFrame& b) {
  double out = 0.0;
  const std::array<const Vec3*, 3> fa{&a.e1, &a.e2, &a.e3};
  const std::array<const Vec3*, 3> fb{&b.e1, &b.e2, &b.e3};
  for (int v = 0; v < 3; ++v)
    for (int i = 0; i < 3; ++i)
      out = std::max(out, std::abs((*fa[v])[i] - (*fb[v])[i]));
  return out;
}

double orthonormality_defect(const LocalFrame& f) {
  const std::array<const Vec3*, 3> e{&f.e1, &f.e2, &f.e3};
  double out = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      out = std::max(out, std::abs(dot(*e[i], *e[j]) - (i == j ? 1.0 : 0.0)));
  out = std::max(out, norm(cross(f.e1, f.e2) - f.e3));
  return out;
}

}  // namespace qpbeam

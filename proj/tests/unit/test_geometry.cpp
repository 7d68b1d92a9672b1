#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "qpbeam/geometry.hpp"

using namespace qpbeam;

namespace {

// exp(theta E) by its Taylor series, E the cross-product matrix of the axis.
Mat3 exp_generator(double theta, const Vec3& n) {
  const Mat3 e{{{0.0, -n[2], n[1]}, {n[2], 0.0, -n[0]}, {-n[1], n[0], 0.0}}};
  Mat3 sum = identity3();
  Mat3 term = identity3();
  for (int k = 1; k < 40; ++k) {
    term = multiply(term, e);
    for (auto& row : term)
      for (double& v : row) v *= theta / k;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) sum[i][j] += term[i][j];
  }
  return sum;
}

double max_diff(const Mat3& a, const Mat3& b) {
  double d = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) d = std::max(d, std::abs(a[i][j] - b[i][j]));
  return d;
}

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vec3 v{g(rng), g(rng), g(rng)};
  return (1.0 / norm(v)) * v;
}

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = double(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

const double kOmega = 2.0 * kPi * kSpeedOfLight / 1e-6;

}  // namespace

TEST_CASE("rodrigues rotation matches the exponential of its generator") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec3 n = random_unit(rng);
    const double t = angle(rng);
    const Mat3 r = rodrigues_rotation(t, n);
    CHECK(max_diff(r, exp_generator(t, n)) < 1e-13);
    CHECK(max_diff(multiply(r, transpose(r)), identity3()) < 1e-14);
    CHECK(determinant(r) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(max_diff(multiply(r, rodrigues_rotation(-t, n)), identity3()) < 1e-14);
    // The axis is fixed.
    CHECK(norm(apply(r, n) - n) < 1e-14);
  }
}

TEST_CASE("rodrigues rotation rejects a non-unit axis") {
  CHECK_THROWS_AS(rodrigues_rotation(0.1, {0.0, 0.0, 2.0}), std::invalid_argument);
  CHECK_NOTHROW(rodrigues_rotation(0.1, {0.0, 0.0, 1.0}));
}

TEST_CASE("wave vector construction") {
  CHECK_THROWS_AS(WaveVector(2.0 * kOmega / kSpeedOfLight, 0.0, kOmega), std::invalid_argument);
  const WaveVector k = WaveVector::from_angles(0.3, 1.1, kOmega);
  CHECK(k.theta() == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(std::atan2(k.ky(), k.kx()) == doctest::Approx(1.1).epsilon(1e-14));
  CHECK(norm(k.unit()) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(k.kz() == doctest::Approx(k.k() * std::cos(0.3)).epsilon(1e-14));
}

TEST_CASE("exact local frame is a rotated triad carrying z onto k") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> th(0.0, 1.2), ph(-kPi, kPi);
  for (int trial = 0; trial < 30; ++trial) {
    const WaveVector k = WaveVector::from_angles(th(rng), ph(rng), kOmega);
    const LocalFrame f = local_frame_exact(k);
    CHECK(orthonormality_defect(f) < 1e-14);
    CHECK(norm(f.e3 - k.unit()) < 1e-14);
  }
  const LocalFrame axial = local_frame_exact(WaveVector(0.0, 0.0, kOmega));
  CHECK(frame_deviation(axial, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}) == 0.0);
}

TEST_CASE("paraxial frame and kappa_z converge at second and fourth order") {
  std::vector<double> thetas, frame_err, kappa_err;
  for (int i = 0; i < 12; ++i) {
    const double t = 1e-3 * std::pow(100.0, i / 11.0);
    const WaveVector k = WaveVector::from_angles(t, 0.7, kOmega);
    thetas.push_back(t);
    frame_err.push_back(frame_deviation(local_frame_paraxial(k), local_frame_exact(k)));
    kappa_err.push_back(std::abs(kappa_z(k) - kappa_z_paraxial(k)));
  }
  CHECK(loglog_slope(thetas, frame_err) == doctest::Approx(2.0).epsilon(0.05));
  CHECK(loglog_slope(thetas, kappa_err) == doctest::Approx(4.0).epsilon(0.05));
  // Leading coefficient of sqrt(1 - s^2) - (1 - s^2/2) is -s^4/8.
  const WaveVector k = WaveVector::from_angles(0.01, 0.0, kOmega);
  const double s = std::sin(0.01);
  CHECK((kappa_z(k) - kappa_z_paraxial(k)) / (-std::pow(s, 4) / 8.0) ==
        doctest::Approx(1.0).epsilon(1e-3));
}

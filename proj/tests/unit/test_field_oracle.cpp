#include <doctest.h>

#include <cmath>
#include <random>

#include "qpbeam/field_oracle.hpp"

using namespace qpbeam;

namespace {

const BeamParams kBeam = BeamParams::from_wavelength(1e-6, 1e-5);
const double kR = 1.0 / std::sqrt(2.0);

BeamState random_six_mode(std::mt19937_64& rng, const ModeSpace& space) {
  std::normal_distribution<double> g;
  cplx v[5];
  for (auto& c : v) c = cplx(g(rng), g(rng));
  const double na = std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
  const double np = std::sqrt(std::norm(v[3]) + std::norm(v[4]));
  return six_mode_state(space, Polarization(v[3] / np, v[4] / np), v[0] / na, v[1] / na,
                        v[2] / na);
}

GridSpec grid(int n, double z = 0.0) {
  GridSpec g;
  g.n = n;
  g.z = z;
  return g;
}

}  // namespace

TEST_CASE("fields of the vacuum and of a single photon") {
  const ModeSpace space(2);
  const BeamState vac = BeamState::vacuum(space);
  const CVec3 e = classical_E_plus(vac, {1e-6, 2e-6, 0.0}, 0.0, kBeam);
  const CVec3 b = classical_B_plus(vac, {1e-6, 2e-6, 0.0}, 0.0, kBeam);
  for (int k = 0; k < 3; ++k) {
    CHECK(e[k] == cplx(0.0));
    CHECK(b[k] == cplx(0.0));
  }
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(space.dim());
  c(0) = 1.0;
  const BeamState photon = BeamState::single_photon(space, c);
  CHECK_THROWS_AS(classical_E_plus(photon, {0, 0, 0}, 0.0, kBeam), std::invalid_argument);
  CHECK_THROWS_AS(integrate_moments(photon, kBeam, grid(64)), std::invalid_argument);
}

TEST_CASE("longitudinal components follow the Gaussian log-derivative") {
  const ModeSpace space(1);
  const BeamState g = six_mode_state(space, Polarization::linear_x(), 1.0, 0.0, 0.0);
  const double w0 = kBeam.w0(), lb = kBeam.lambda_bar();
  const CVec3 axis = classical_E_plus(g, {0.0, 0.0, 0.0}, 0.0, kBeam);
  CHECK(axis[2] == cplx(0.0));
  // d_x ln psi_00 = -2x / w0^2 at the waist.
  const CVec3 e = classical_E_plus(g, {w0 / 2.0, 0.0, 0.0}, 0.3e-15, kBeam);
  CHECK(std::abs(e[2] / e[0] - cplx(0.0, -lb / w0)) < 1e-12 * lb / w0);
  CHECK(e[1] == cplx(0.0));
  const CVec3 b = classical_B_plus(g, {0.0, w0 / 2.0, 0.0}, 0.0, kBeam);
  CHECK(b[0] == cplx(0.0));
  CHECK(std::abs(b[1]) > 0.0);
  CHECK(std::abs(b[2] / b[1] - cplx(0.0, -lb / w0)) < 1e-12 * lb / w0);
  // |B| = |E| / c for the transverse parts.
  CHECK(std::abs(b[1]) * kBeam.c() == doctest::Approx(std::abs(classical_E_plus(g, {0.0, w0 / 2.0, 0.0}, 0.0, kBeam)[0])));
}

TEST_CASE("analytic and sampled time averages agree") {
  const ModeSpace space(1);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int trial = 0; trial < 10; ++trial) {
    const BeamState s = random_six_mode(rng, space);
    const double x = u(rng) * kBeam.w0(), y = u(rng) * kBeam.w0();
    const double z = u(rng) * kBeam.rayleigh_range();
    const Vec3 a = time_averaged_momentum_density(s, x, y, z, kBeam);
    const Vec3 n = time_averaged_momentum_density(s, x, y, z, kBeam, TimeAverage::sampled, 32);
    CHECK(norm(a - n) < 1e-10 * norm(a));
  }
}

TEST_CASE("fundamental Gaussian density and moments") {
  const ModeSpace space(1);
  const BeamState g = six_mode_state(space, Polarization::linear_x(), 1.0, 0.0, 0.0);
  const Vec3 d = time_averaged_momentum_density(g, 0.0, 0.0, 0.0, kBeam);
  CHECK(d[0] == 0.0);
  CHECK(d[1] == 0.0);
  CHECK(d[2] > 0.0);
  const MomentReport r = integrate_moments(g, kBeam, grid(256));
  CHECK(std::abs(r.integrals.pz - 1.0) < 1e-4);
  CHECK(std::abs(r.integrals.px) < 1e-6);
  CHECK(std::abs(r.integrals.py) < 1e-6);
  CHECK(std::abs(r.integrals.jx) < 1e-6);
  CHECK(std::abs(r.integrals.jy) < 1e-6);
  CHECK(std::abs(r.integrals.jz) < 1e-6);
  CHECK_FALSE(r.coverage.warning);
}

TEST_CASE("circularly polarised Laguerre-Gauss beam carries 2 lambda_bar") {
  const ModeSpace space(1);
  const BeamState s =
      six_mode_state(space, Polarization::circular(1), 0.0, kR, cplx(0.0, kR));
  const MomentReport r = integrate_moments(s, kBeam, grid(256));
  CHECK(std::abs(r.integrals.jz - 2.0 * kBeam.lambda_bar()) < 1e-3 * kBeam.lambda_bar());
}

TEST_CASE("random six-mode states match operator moments") {
  const ModeSpace space(1);
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 4; ++trial) {
    const BeamState s = random_six_mode(rng, space);
    for (double z : {0.0, 0.5 * kBeam.rayleigh_range()}) {
      const MomentReport r = integrate_moments(s, kBeam, grid(256, z));
      CHECK(r.comparisons.size() == 6);
      for (const auto& c : r.comparisons) {
        INFO(c.quantity, " op ", c.operator_value, " quad ", c.quadrature_value);
        CHECK(c.rel_error < 1e-3);
      }
    }
  }
}

TEST_CASE("intensity centroid follows -Jy / Pz") {
  const ModeSpace space(1);
  for (double eps : {0.05, 0.2, 0.5}) {
    const BeamState s = six_mode_state(space, Polarization::linear_x(), std::cos(eps),
                                       std::sin(eps), 0.0);
    const DensityIntegrals q = integrate_densities(s, kBeam, grid(256));
    const double centroid = q.x_pz / q.pz;
    CHECK(centroid == doctest::Approx(kBeam.w0() / 2.0 * std::sin(2.0 * eps)).epsilon(1e-6));
  }
}

TEST_CASE("dropping the gradient terms removes Jz") {
  const ModeSpace space(1);
  const BeamState s = six_mode_state(space, Polarization::circular(1), 1.0, 0.0, 0.0);
  GridSpec g = grid(256);
  const double full = integrate_densities(s, kBeam, g).jz;
  g.gradient = GradientTerms::omit;
  const double bare = integrate_densities(s, kBeam, g).jz;
  CHECK(full == doctest::Approx(kBeam.lambda_bar()).epsilon(1e-4));
  CHECK(std::abs(bare) < 0.05 * std::abs(full));
}

TEST_CASE("coverage warnings") {
  const ModeSpace space(1);
  const BeamState s = six_mode_state(space, Polarization::linear_x(), 1.0, 0.0, 0.0);
  CHECK(check_coverage(grid(64), kBeam).warning);
  CHECK_FALSE(check_coverage(grid(512), kBeam).warning);
  GridSpec narrow = grid(256);
  narrow.extent_factor = 4.0;
  CHECK(check_coverage(narrow, kBeam).warning);
  // Far from the waist the default extent no longer covers 6 w(z).
  CHECK(check_coverage(grid(512, 2.0 * kBeam.rayleigh_range()), kBeam).warning);
  const MomentReport r = integrate_moments(s, kBeam, grid(64));
  CHECK(r.coverage.warning);
  CHECK_FALSE(r.coverage.message.empty());
  CHECK_THROWS_AS(integrate_moments(s, kBeam, grid(64), true), CoverageError);
}

TEST_CASE("density map samples the same densities") {
  const ModeSpace space(1);
  std::mt19937_64 rng(4);
  const BeamState s = random_six_mode(rng, space);
  const GridSpec g = grid(21, 0.3 * kBeam.rayleigh_range());
  const auto map = density_map(s, kBeam, g);
  REQUIRE(map.size() == 441);
  for (std::size_t k : {0ul, 100ul, 220ul, 440ul}) {
    const Vec3 d = time_averaged_momentum_density(s, map[k].x, map[k].y, g.z, kBeam);
    CHECK(norm(d - map[k].p) < 1e-12 * norm(d));
    CHECK(norm(cross({map[k].x, map[k].y, g.z}, d) - map[k].j) < 1e-12 * norm(map[k].j));
  }
}

TEST_CASE("relative error floor") {
  CHECK(relative_error(2.0, 1.0) == 0.5);
  CHECK(relative_error(0.0, 1e-15) == doctest::Approx(1e-3));
}

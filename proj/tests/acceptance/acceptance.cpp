// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qpbeam/field_oracle.hpp"
#include "qpbeam/geometry.hpp"
#include "qpbeam/hermite_gauss.hpp"
#include "qpbeam/matrix_oracle.hpp"

using namespace qpbeam;

namespace {

const BeamParams kBeam = BeamParams::from_wavelength(1e-6, 1e-5);
const double kR = 1.0 / std::sqrt(2.0);

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

struct Draw {
  Polarization pol;
  cplx a00, a10, a01;
};

Draw random_draw(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  cplx v[5];
  for (auto& c : v) c = cplx(g(rng), g(rng));
  const double na = std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
  const double np = std::sqrt(std::norm(v[3]) + std::norm(v[4]));
  return {Polarization(v[3] / np, v[4] / np), v[0] / na, v[1] / na, v[2] / na};
}

Outcome matrix_oracle_equivalence() {
  const ModeSpace space(6);
  OracleOptions opt;
  opt.execution = Execution::serial;
  const auto t0 = std::chrono::steady_clock::now();
  const OracleResult o = oracle_matrix_elements(space, kBeam, OracleFamily::both, opt);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double dev = oracle_deviation(OperatorSet(space, kBeam), o);
  return {dev < 1e-6 && secs < 60.0 && o.flagged.empty(),
          fmt("max relative deviation %.3g (limit 1e-6), single-core %.2f s (limit 60 s)", dev,
              secs)};
}

Outcome commutation_table() {
  const auto table = ccr_table(ModeSpace(6), kBeam, 1e-12);
  int bad = 0;
  double worst = 0.0;
  for (const auto& r : table) {
    if (!r.matches) ++bad;
    worst = std::max(worst, r.residual_norm);
  }
  return {bad == 0, fmt("%.0f pairs, %.0f mismatches, worst relative residual %.3g (limit 1e-12)",
                        double(table.size()), double(bad), worst)};
}

Outcome six_mode_closed_forms() {
  const ModeSpace space(2);
  const OperatorSet ops(space, kBeam);
  std::mt19937_64 rng(20240601);
  const double t0 = kBeam.theta0(), w0 = kBeam.w0(), lb = kBeam.lambda_bar();
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Draw d = random_draw(rng);
    const Moments m = operator_moments(six_mode_state(space, d.pol, d.a00, d.a10, d.a01), ops);
    const double sigma = helicity(d.pol);
    const double errs[] = {
        std::abs(m.px - t0 * std::imag(std::conj(d.a00) * d.a10)) / t0,
        std::abs(m.py - t0 * std::imag(std::conj(d.a00) * d.a01)) / t0,
        std::abs(m.pz - 1.0),
        std::abs(m.jx - w0 * std::real(std::conj(d.a00) * d.a01)) / w0,
        std::abs(m.jy + w0 * std::real(std::conj(d.a00) * d.a10)) / w0,
        std::abs(m.jz - lb * (sigma + 2.0 * std::imag(std::conj(d.a10) * d.a01))) / lb};
    for (double e : errs) worst = std::max(worst, e);
  }
  return {worst < 1e-12, fmt("100 draws, worst error %.3g in units of theta0, w0, lambda_bar "
                             "(limit 1e-12)", worst)};
}

Outcome laguerre_gauss_oam() {
  const ModeSpace space(2);
  const OperatorSet ops(space, kBeam);
  const double lb = kBeam.lambda_bar();
  double worst_jz = 0.0, worst_oam = 0.0;
  for (int sigma : {1, -1})
    for (int ell : {1, -1}) {
      const BeamState s = six_mode_state(space, Polarization::circular(sigma), 0.0, kR,
                                         cplx(0.0, ell * kR));
      worst_jz = std::max(worst_jz,
                          std::abs(expectation(s, ops.at("Jz")).value - lb * (sigma + ell)) / lb);
      worst_oam = std::max(worst_oam,
                           std::abs(per_photon_oam(s, ops.at("Lz"), ops.at("Pz")) - ell));
    }
  return {worst_jz < 1e-12 && worst_oam < 1e-12,
          fmt("Jz error %.3g lambda_bar, per-photon OAM error %.3g (limit 1e-12)", worst_jz,
              worst_oam)};
}

Outcome field_quadrature_oracle() {
  const ModeSpace space(1);
  std::mt19937_64 rng(777);
  GridSpec waist;
  waist.n = 512;
  waist.extent_factor = 8.0;
  GridSpec shifted = waist;
  shifted.z = 0.5 * kBeam.rayleigh_range();
  double worst = 0.0, worst_shift = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Draw d = random_draw(rng);
    const BeamState s = six_mode_state(space, d.pol, d.a00, d.a10, d.a01);
    const MomentReport a = integrate_moments(s, kBeam, waist, true);
    const MomentReport b = integrate_moments(s, kBeam, shifted, true);
    worst = std::max(worst, a.max_rel_error());
    for (std::size_t k = 0; k < a.comparisons.size(); ++k)
      worst_shift = std::max(worst_shift, relative_error(a.comparisons[k].quadrature_value,
                                                         b.comparisons[k].quadrature_value));
  }
  return {worst < 1e-3 && worst_shift < 5e-3,
          fmt("20 states, worst rel_error %.3g (limit 1e-3), worst shift at z_R/2 %.3g "
              "(limit 5e-3)", worst, worst_shift)};
}

Outcome displacement_link() {
  const ModeSpace space(1);
  const OperatorSet ops(space, kBeam);
  GridSpec grid;
  double worst = 0.0;
  for (double eps : {0.05, 0.2, 0.5}) {
    const BeamState s = six_mode_state(space, Polarization::linear_x(), std::cos(eps),
                                       std::sin(eps), 0.0);
    const DensityIntegrals q = integrate_densities(s, kBeam, grid);
    const double centroid = q.x_pz / q.pz;
    const double predicted =
        -expectation(s, ops.at("Jy")).value / expectation(s, ops.at("Pz")).value;
    worst = std::max(worst, std::abs(centroid - predicted) / std::abs(predicted));
  }
  return {worst < 1e-4, fmt("worst relative centroid mismatch %.3g (limit 1e-4)", worst)};
}

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

Outcome paraxial_scaling() {
  std::vector<double> th, frame, kappa;
  for (int i = 0; i < 25; ++i) {
    const double t = 1e-3 * std::pow(100.0, i / 24.0);
    const WaveVector k = WaveVector::from_angles(t, 0.7, kBeam.omega0());
    th.push_back(t);
    frame.push_back(frame_deviation(local_frame_paraxial(k), local_frame_exact(k)));
    kappa.push_back(std::abs(kappa_z(k) - kappa_z_paraxial(k)));
  }
  const double sf = loglog_slope(th, frame), sk = loglog_slope(th, kappa);
  return {std::abs(sf - 2.0) <= 0.1 && std::abs(sk - 4.0) <= 0.2,
          fmt("frame order %.4f (2.0 +- 0.1), kappa_z order %.4f (4.0 +- 0.2)", sf, sk)};
}

Outcome gradient_necessity() {
  const ModeSpace space(1);
  const BeamState s = six_mode_state(space, Polarization::circular(1), 1.0, 0.0, 0.0);
  GridSpec grid;
  const double full = integrate_densities(s, kBeam, grid).jz;
  grid.gradient = GradientTerms::omit;
  const double bare = integrate_densities(s, kBeam, grid).jz;
  const double ratio = std::abs(bare) / std::abs(full);
  return {ratio < 0.05, fmt("|Jz without gradient terms| / |Jz| = %.3g (limit 0.05), full Jz = "
                            "%.6f lambda_bar", ratio, full / kBeam.lambda_bar())};
}

Outcome mode_hygiene() {
  const double zr = kBeam.rayleigh_range();
  double ortho = 0.0;
  for (double z : {0.0, 0.5 * zr, 2.0 * zr}) {
    const Eigen::MatrixXcd o = overlap_matrix(6, z, kBeam);
    ortho = std::max(ortho, (o - Eigen::MatrixXcd::Identity(o.rows(), o.cols()))
                                .cwiseAbs()
                                .maxCoeff());
  }
  double kernel = 0.0;
  for (int n = 0; n <= 2; ++n)
    for (int m = 0; m <= 2; ++m)
      for (double z : {-zr, -0.5 * zr, 0.0, 0.5 * zr, zr})
        kernel = std::max(kernel, propagate_kernel_check(n, m, z, kBeam));
  return {ortho < 1e-8 && kernel < 1e-6,
          fmt("orthonormality defect %.3g (limit 1e-8), kernel residual %.3g (limit 1e-6)", ortho,
              kernel)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"matrix-element oracle equivalence", matrix_oracle_equivalence},
      {"commutation table", commutation_table},
      {"six-mode closed forms", six_mode_closed_forms},
      {"Laguerre-Gauss orbital angular momentum", laguerre_gauss_oam},
      {"field-quadrature oracle", field_quadrature_oracle},
      {"displacement and transverse angular momentum", displacement_link},
      {"paraxial geometry error scaling", paraxial_scaling},
      {"gradient-term necessity", gradient_necessity},
      {"mode-layer hygiene", mode_hygiene},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s [%zu] %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

#include "qpbeam/hermite_gauss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "qpbeam/quadrature.hpp"

namespace qpbeam {
namespace {

void require_order(int n) {
  if (n < 0) throw std::invalid_argument("Hermite-Gauss mode order must be >= 0");
}

struct PlaneGeometry {
  double w;      // beam radius w(z)
  double a;      // sqrt2 / w(z)
  double zeta;   // Gouy angle atan(z / z_R)
  double inv_r;  // wavefront curvature 1 / R(z)
};

PlaneGeometry plane_geometry(double z, const BeamParams& beam) {
  const double zr = beam.rayleigh_range();
  PlaneGeometry g{};
  g.w = beam.waist_at(z);
  g.a = std::sqrt(2.0) / g.w;
  g.zeta = std::atan(z / zr);
  g.inv_r = z / (z * z + zr * zr);
  return g;
}

}  // namespace

void hermite_functions(double s, std::span<double> value) {
  if (value.empty()) return;
  value[0] = std::pow(kPi, -0.25) * std::exp(-0.5 * s * s);
  if (value.size() > 1) value[1] = std::sqrt(2.0) * s * value[0];
  for (std::size_t n = 1; n + 1 < value.size(); ++n) {
    const double dn = double(n);
    value[n + 1] = std::sqrt(2.0 / (dn + 1.0)) * s * value[n] -
                   std::sqrt(dn / (dn + 1.0)) * value[n - 1];
  }
}

void hermite_functions(double s, std::span<double> value, std::span<double> deriv) {
  hermite_functions(s, value);
  for (std::size_t n = 0; n < value.size(); ++n) {
    deriv[n] = -s * value[n];
    if (n > 0) deriv[n] += std::sqrt(2.0 * double(n)) * value[n - 1];
  }
}

void hg1d_table(double x, double z, const BeamParams& beam, std::span<cplx> value,
                std::span<cplx> deriv) {
  const std::size_t count = value.size();
  if (count == 0) return;
  const PlaneGeometry g = plane_geometry(z, beam);
  const double s = g.a * x;

  std::vector<double> phi(count), dphi(count);
  hermite_functions(s, phi, dphi);

  const double k0 = beam.k0();
  const cplx curvature = std::polar(1.0, 0.5 * k0 * x * x * g.inv_r);
  const cplx curvature_slope{0.0, k0 * x * g.inv_r};
  const double amp = std::sqrt(g.a);
  for (std::size_t n = 0; n < count; ++n) {
    const cplx gouy = std::polar(1.0, -(double(n) + 0.5) * g.zeta);
    const cplx envelope = amp * curvature * gouy;
    value[n] = envelope * phi[n];
    if (!deriv.empty()) deriv[n] = envelope * (g.a * dphi[n] + phi[n] * curvature_slope);
  }
}

cplx hg1d(int n, double x, double z, const BeamParams& beam) {
  require_order(n);
  std::vector<cplx> v(n + 1);
  hg1d_table(x, z, beam, v, {});
  return v[n];
}

cplx hg1d_dx(int n, double x, double z, const BeamParams& beam) {
  require_order(n);
  std::vector<cplx> v(n + 1), d(n + 1);
  hg1d_table(x, z, beam, v, d);
  return d[n];
}

cplx hg2d(int n, int m, double x, double y, double z, const BeamParams& beam) {
  return hg1d(n, x, z, beam) * hg1d(m, y, z, beam);
}

cplx hg1d_fourier(int n, double k, const BeamParams& beam) {
  require_order(n);
  const double inv_a = beam.w0() / std::sqrt(2.0);
  std::vector<double> phi(n + 1);
  hermite_functions(k * inv_a, phi);
  // (-i)^n
  static constexpr cplx kPhase[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
  return kPhase[n % 4] * std::sqrt(inv_a) * phi[n];
}

cplx hg_fourier(int n, int m, double kx, double ky, const BeamParams& beam) {
  return hg1d_fourier(n, kx, beam) * hg1d_fourier(m, ky, beam);
}

double propagate_kernel_check(int n, int m, double z, const BeamParams& beam,
                              const KernelCheckOptions& options) {
  require_order(n);
  require_order(m);
  const double a0 = std::sqrt(2.0) / beam.w0();
  const std::vector<double> k = uniform_nodes(options.k_points, options.k_extent * a0);
  const double dk = k[1] - k[0];
  const std::vector<double> x =
      uniform_nodes(options.x_points, options.x_extent * beam.waist_at(z));
  const double chirp = z / (2.0 * beam.k0());

  // Numeric inverse transform along one axis (trapezoid rule, i.e. the DFT sum).
  auto propagate_1d = [&](int order) {
    std::vector<cplx> spectrum(k.size());
    for (std::size_t j = 0; j < k.size(); ++j)
      spectrum[j] = hg1d_fourier(order, k[j], beam) * std::polar(1.0, -chirp * k[j] * k[j]);
    std::vector<cplx> out(x.size());
    const double norm = dk / std::sqrt(2.0 * kPi);
    for (std::size_t i = 0; i < x.size(); ++i) {
      cplx acc = 0.0;
      for (std::size_t j = 0; j < k.size(); ++j)
        acc += spectrum[j] * std::polar(1.0, k[j] * x[i]);
      out[i] = norm * acc;
    }
    return out;
  };
  const std::vector<cplx> num_x = propagate_1d(n);
  const std::vector<cplx> num_y = m == n ? num_x : propagate_1d(m);

  double max_diff = 0.0;
  double max_ref = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const cplx ux = hg1d(n, x[i], z, beam);
    for (std::size_t j = 0; j < x.size(); ++j) {
      const cplx closed = ux * hg1d(m, x[j], z, beam);
      max_ref = std::max(max_ref, std::abs(closed));
      max_diff = std::max(max_diff, std::abs(closed - num_x[i] * num_y[j]));
    }
  }
  return max_diff / max_ref;
}

LadderMatrices ladder_matrix_elements(int ncut) {
  if (ncut < 1) throw std::invalid_argument("ladder_matrix_elements: ncut must be >= 1");
  const int p = ncut + 1;
  LadderMatrices out{Eigen::MatrixXd::Zero(p, p), Eigen::MatrixXd::Zero(p, p)};
  for (int n = 0; n + 1 < p; ++n) {
    const double r = std::sqrt(double(n + 1));
    out.x(n, n + 1) = 0.5 * r;
    out.x(n + 1, n) = 0.5 * r;
    out.d(n, n + 1) = r;
    out.d(n + 1, n) = -r;
  }
  return out;
}

namespace {

// Nodes and integration weights along one axis at plane z.
struct AxisRule {
  std::vector<double> x;
  std::vector<double> w;
};

AxisRule axis_rule(double z, const BeamParams& beam, int points) {
  AxisRule rule;
  if (z == 0.0) {
    const GaussHermiteRule gh = gauss_hermite(64);
    const double inv_a = beam.w0() / std::sqrt(2.0);
    for (std::size_t i = 0; i < gh.nodes.size(); ++i) {
      rule.x.push_back(gh.nodes[i] * inv_a);
      rule.w.push_back(gh.scaled_weights[i] * inv_a);
    }
  } else {
    const double half = 8.0 * beam.waist_at(z);
    rule.x = uniform_nodes(points, half);
    rule.w = simpson_weights(points, rule.x[1] - rule.x[0]);
  }
  return rule;
}

}  // namespace

cplx overlap_2d(int n, int m, int n2, int m2, double z, const BeamParams& beam,
                int points) {
  require_order(n);
  require_order(m);
  require_order(n2);
  require_order(m2);
  const AxisRule rule = axis_rule(z, beam, points);
  const int top = std::max({n, m, n2, m2}) + 1;
  const std::size_t q = rule.x.size();
  std::vector<cplx> table(q * top);
  for (std::size_t i = 0; i < q; ++i)
    hg1d_table(rule.x[i], z, beam, std::span<cplx>(table).subspan(i * top, top), {});

  cplx acc = 0.0;
  for (std::size_t j = 0; j < q; ++j) {
    const cplx* ty = &table[j * top];
    cplx row = 0.0;
    for (std::size_t i = 0; i < q; ++i) {
      const cplx* tx = &table[i * top];
      row += rule.w[i] * std::conj(tx[n] * ty[m]) * (tx[n2] * ty[m2]);
    }
    acc += rule.w[j] * row;
  }
  return acc;
}

Eigen::MatrixXcd overlap_matrix(int nmax, double z, const BeamParams& beam, int points) {
  require_order(nmax);
  const AxisRule rule = axis_rule(z, beam, points);
  const int p = nmax + 1;
  Eigen::MatrixXcd one_d = Eigen::MatrixXcd::Zero(p, p);
  std::vector<cplx> u(p);
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    hg1d_table(rule.x[i], z, beam, u, {});
    for (int a = 0; a < p; ++a)
      for (int b = 0; b < p; ++b) one_d(a, b) += rule.w[i] * std::conj(u[a]) * u[b];
  }
  Eigen::MatrixXcd out(p * p, p * p);
  for (int n = 0; n < p; ++n)
    for (int m = 0; m < p; ++m)
      for (int n2 = 0; n2 < p; ++n2)
        for (int m2 = 0; m2 < p; ++m2)
          out(n * p + m, n2 * p + m2) = one_d(n, n2) * one_d(m, m2);
  return out;
}

}  // namespace qpbeam

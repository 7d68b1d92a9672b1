#include "qpbeam/field_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qpbeam/hermite_gauss.hpp"
#include "qpbeam/quadrature.hpp"

namespace qpbeam {
namespace {

void require_coherent(const BeamState& state, const char* where) {
  if (state.kind() != StateKind::coherent)
    throw std::invalid_argument(std::string(where) +
                                ": single-photon states have no classical eigenvalue field");
}

// Transverse profiles f_mu and their gradients at one point.
struct LocalProfile {
  cplx f[2];
  cplx fx[2];
  cplx fy[2];
};

// Envelope vectors e, b with E+ = i e^{-i phi} e and B+ = (i/c) e^{-i phi} b.
struct Envelopes {
  CVec3 e;
  CVec3 b;
};

Envelopes envelopes(const LocalProfile& p, double lambda_bar, GradientTerms gradient) {
  const cplx g = gradient == GradientTerms::include ? kI * lambda_bar : cplx(0.0);
  Envelopes out;
  out.e = {p.f[0], p.f[1], g * (p.fx[0] + p.fy[1])};
  out.b = {-p.f[1], p.f[0], g * (p.fy[0] - p.fx[1])};
  return out;
}

// Re(e* x b).
Vec3 density_from(const Envelopes& v) {
  const auto& e = v.e;
  const auto& b = v.b;
  return {std::real(std::conj(e[1]) * b[2] - std::conj(e[2]) * b[1]),
          std::real(std::conj(e[2]) * b[0] - std::conj(e[0]) * b[2]),
          std::real(std::conj(e[0]) * b[1] - std::conj(e[1]) * b[0])};
}

LocalProfile profile_at(const BeamState& state, double x, double y, double z,
                        const BeamParams& beam) {
  const ModeSpace& space = state.space();
  const int p = space.per_axis();
  std::vector<cplx> ux(p), dux(p), uy(p), duy(p);
  hg1d_table(x, z, beam, ux, dux);
  hg1d_table(y, z, beam, uy, duy);
  LocalProfile out{};
  const Eigen::VectorXcd& a = state.amplitudes();
  for (int mu = 1; mu <= 2; ++mu)
    for (int n = 0; n < p; ++n)
      for (int m = 0; m < p; ++m) {
        const cplx alpha = a(space.index_of({mu, n, m}));
        if (alpha == cplx(0.0)) continue;
        out.f[mu - 1] += alpha * ux[n] * uy[m];
        out.fx[mu - 1] += alpha * dux[n] * uy[m];
        out.fy[mu - 1] += alpha * ux[n] * duy[m];
      }
  return out;
}

cplx carrier(double z, double t, const BeamParams& beam) {
  return kI * std::polar(1.0, -beam.omega0() * (t - z / beam.c()));
}

}  // namespace

CVec3 classical_E_plus(const BeamState& state, const Vec3& r, double t, const BeamParams& beam,
                       GradientTerms gradient) {
  require_coherent(state, "classical_E_plus");
  const auto v = envelopes(profile_at(state, r[0], r[1], r[2], beam), beam.lambda_bar(), gradient);
  const cplx ph = carrier(r[2], t, beam);
  return {ph * v.e[0], ph * v.e[1], ph * v.e[2]};
}

CVec3 classical_B_plus(const BeamState& state, const Vec3& r, double t, const BeamParams& beam,
                       GradientTerms gradient) {
  require_coherent(state, "classical_B_plus");
  const auto v = envelopes(profile_at(state, r[0], r[1], r[2], beam), beam.lambda_bar(), gradient);
  const cplx ph = carrier(r[2], t, beam) / beam.c();
  return {ph * v.b[0], ph * v.b[1], ph * v.b[2]};
}

Vec3 time_averaged_momentum_density(const BeamState& state, double x, double y, double z,
                                    const BeamParams& beam, TimeAverage mode, int samples,
                                    GradientTerms gradient) {
  require_coherent(state, "time_averaged_momentum_density");
  if (mode == TimeAverage::analytic)
    return density_from(envelopes(profile_at(state, x, y, z, beam), beam.lambda_bar(), gradient));

  if (samples < 3)
    throw std::invalid_argument("time_averaged_momentum_density: need at least 3 samples");
  const Vec3 r{x, y, z};
  const double period = 2.0 * kPi / beam.omega0();
  Vec3 acc{};
  for (int k = 0; k < samples; ++k) {
    const double t = period * k / samples;
    const CVec3 e = classical_E_plus(state, r, t, beam, gradient);
    const CVec3 b = classical_B_plus(state, r, t, beam, gradient);
    const Vec3 re{e[0].real(), e[1].real(), e[2].real()};
    const Vec3 rb{b[0].real(), b[1].real(), b[2].real()};
    acc = acc + cross(re, rb);
  }
  return (2.0 * beam.c() / samples) * acc;
}

CoverageCheck check_coverage(const GridSpec& grid, const BeamParams& beam) {
  CoverageCheck c;
  std::ostringstream msg;
  const double extent = grid.extent_factor * beam.w0();
  const double w = beam.waist_at(grid.z);
  if (extent < 6.0 * w) {
    c.warning = true;
    msg << "grid half-width " << extent << " m is below 6 w(z) = " << 6.0 * w << " m";
  }
  if (grid.n < 128) {
    if (c.warning) msg << "; ";
    c.warning = true;
    msg << "grid has " << grid.n << " nodes per axis, below the 128 needed for oracle runs";
  }
  c.message = msg.str();
  return c;
}

namespace {

enum Quantity { kPx, kPy, kPz, kJx, kJy, kJz, kXPz, kYPz, kQuantities };

DensityIntegrals to_integrals(const std::array<double, kQuantities>& q) {
  return {q[kPx], q[kPy], q[kPz], q[kJx], q[kJy], q[kJz], q[kXPz], q[kYPz]};
}

void accumulate(std::array<double, kQuantities>& acc, double w, const Vec3& r, const Vec3& d) {
  const Vec3 j = cross(r, d);
  acc[kPx] += w * d[0];
  acc[kPy] += w * d[1];
  acc[kPz] += w * d[2];
  acc[kJx] += w * j[0];
  acc[kJy] += w * j[1];
  acc[kJz] += w * j[2];
  acc[kXPz] += w * r[0] * d[2];
  acc[kYPz] += w * r[1] * d[2];
}

void require_grid(const GridSpec& grid) {
  if (grid.n < 3) throw std::invalid_argument("field oracle grid needs at least 3 nodes per axis");
  if (!(grid.extent_factor > 0.0))
    throw std::invalid_argument("field oracle grid extent must be positive");
}

// 1D mode tables on the grid nodes, shared by both axes.
struct GridTables {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<cplx> u;   // u[i * p + n]
  std::vector<cplx> du;
  int p = 0;
};

GridTables grid_tables(const GridSpec& grid, const BeamParams& beam, int p) {
  const double extent = grid.extent_factor * beam.w0();
  GridTables t;
  t.p = p;
  t.nodes = uniform_nodes(grid.n, extent);
  t.weights = simpson_weights(grid.n, 2.0 * extent / (grid.n - 1));
  t.u.resize(std::size_t(grid.n) * p);
  t.du.resize(std::size_t(grid.n) * p);
  for (int i = 0; i < grid.n; ++i)
    hg1d_table(t.nodes[i], grid.z, beam, std::span(t.u).subspan(std::size_t(i) * p, p),
               std::span(t.du).subspan(std::size_t(i) * p, p));
  return t;
}

// Evaluates the densities along row x = nodes[i], calling visit(j, r, d).
template <class Visit>
void evaluate_row(const BeamState& state, const BeamParams& beam, const GridSpec& grid,
                  const GridTables& t, int i, Visit&& visit) {
  const ModeSpace& space = state.space();
  const int p = t.p;
  const Eigen::VectorXcd& a = state.amplitudes();

  // g[mu][m] = sum_n alpha u_n(x_i), gd[mu][m] = sum_n alpha u_n'(x_i).
  std::vector<cplx> g(2 * p), gd(2 * p);
  for (int mu = 0; mu < 2; ++mu)
    for (int m = 0; m < p; ++m) {
      cplx s{}, sd{};
      for (int n = 0; n < p; ++n) {
        const cplx alpha = a(space.index_of({mu + 1, n, m}));
        s += alpha * t.u[std::size_t(i) * p + n];
        sd += alpha * t.du[std::size_t(i) * p + n];
      }
      g[mu * p + m] = s;
      gd[mu * p + m] = sd;
    }

  const double x = t.nodes[i];
  const double lb = beam.lambda_bar();
  for (int j = 0; j < grid.n; ++j) {
    const cplx* uy = &t.u[std::size_t(j) * p];
    const cplx* duy = &t.du[std::size_t(j) * p];
    LocalProfile lp{};
    for (int mu = 0; mu < 2; ++mu)
      for (int m = 0; m < p; ++m) {
        lp.f[mu] += g[mu * p + m] * uy[m];
        lp.fx[mu] += gd[mu * p + m] * uy[m];
        lp.fy[mu] += g[mu * p + m] * duy[m];
      }
    const Vec3 d = density_from(envelopes(lp, lb, grid.gradient));
    visit(j, Vec3{x, t.nodes[j], grid.z}, d);
  }
}

}  // namespace

DensityIntegrals integrate_densities(const BeamState& state, const BeamParams& beam,
                                     const GridSpec& grid) {
  require_coherent(state, "integrate_densities");
  require_grid(grid);
  const GridTables t = grid_tables(grid, beam, state.space().per_axis());

  // rows[q][i] = w_i * sum_j w_j q(x_i, y_j)
  std::array<std::vector<double>, kQuantities> rows;
  for (auto& r : rows) r.assign(grid.n, 0.0);

#pragma omp parallel for schedule(dynamic, 4) if (grid.execution == Execution::parallel)
  for (int i = 0; i < grid.n; ++i) {
    std::array<double, kQuantities> acc{};
    evaluate_row(state, beam, grid, t, i,
                 [&](int j, const Vec3& r, const Vec3& d) { accumulate(acc, t.weights[j], r, d); });
    for (int q = 0; q < kQuantities; ++q) rows[q][i] = t.weights[i] * acc[q];
  }

  std::array<double, kQuantities> total{};
  for (int q = 0; q < kQuantities; ++q) total[q] = pairwise_sum(rows[q]);
  return to_integrals(total);
}

DensityIntegrals integrate_densities_reference(const BeamState& state, const BeamParams& beam,
                                               const GridSpec& grid) {
  require_coherent(state, "integrate_densities_reference");
  require_grid(grid);
  const double extent = grid.extent_factor * beam.w0();
  const std::vector<double> nodes = uniform_nodes(grid.n, extent);
  const std::vector<double> w = simpson_weights(grid.n, 2.0 * extent / (grid.n - 1));
  std::array<double, kQuantities> acc{};
  for (int i = 0; i < grid.n; ++i)
    for (int j = 0; j < grid.n; ++j) {
      const Vec3 r{nodes[i], nodes[j], grid.z};
      const Vec3 d = time_averaged_momentum_density(state, r[0], r[1], r[2], beam,
                                                    TimeAverage::analytic, 32, grid.gradient);
      accumulate(acc, w[i] * w[j], r, d);
    }
  return to_integrals(acc);
}

double relative_error(double operator_value, double quadrature_value) {
  return std::abs(operator_value - quadrature_value) / std::max(std::abs(operator_value), 1e-12);
}

double MomentReport::max_rel_error() const {
  double worst = 0.0;
  for (const auto& c : comparisons) worst = std::max(worst, c.rel_error);
  return worst;
}

MomentReport integrate_moments(const BeamState& state, const BeamParams& beam,
                               const GridSpec& grid, bool strict) {
  require_coherent(state, "integrate_moments");
  MomentReport report;
  report.coverage = check_coverage(grid, beam);
  if (strict && report.coverage.warning) throw CoverageError(report.coverage.message);

  report.integrals = integrate_densities(state, beam, grid);
  const Moments op = operator_moments(state, OperatorSet(state.space(), beam));
  const DensityIntegrals& q = report.integrals;
  const std::pair<const char*, std::pair<double, double>> rows[] = {
      {"Px", {op.px, q.px}}, {"Py", {op.py, q.py}}, {"Pz", {op.pz, q.pz}},
      {"Jx", {op.jx, q.jx}}, {"Jy", {op.jy, q.jy}}, {"Jz", {op.jz, q.jz}}};
  for (const auto& [name, v] : rows)
    report.comparisons.push_back({name, v.first, v.second, relative_error(v.first, v.second)});
  return report;
}

std::vector<DensitySample> density_map(const BeamState& state, const BeamParams& beam,
                                       const GridSpec& grid) {
  require_coherent(state, "density_map");
  require_grid(grid);
  const GridTables t = grid_tables(grid, beam, state.space().per_axis());
  std::vector<DensitySample> out(std::size_t(grid.n) * grid.n);
#pragma omp parallel for schedule(dynamic, 4) if (grid.execution == Execution::parallel)
  for (int i = 0; i < grid.n; ++i)
    evaluate_row(state, beam, grid, t, i, [&](int j, const Vec3& r, const Vec3& d) {
      out[std::size_t(i) * grid.n + j] = {r[0], r[1], d, cross(r, d)};
    });
  return out;
}

}  // namespace qpbeam

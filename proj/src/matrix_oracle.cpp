#include "qpbeam/matrix_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "qpbeam/hermite_gauss.hpp"
#include "qpbeam/quadrature.hpp"

namespace qpbeam {

const QuadraticOperator& OracleResult::at(std::string_view name) const {
  for (const auto& op : operators)
    if (op.name() == name) return op;
  throw std::out_of_range("OracleResult: no operator named '" + std::string(name) + "'");
}

namespace {

// Spatial integrals Int psi*_p [.] psi_p' for every pair of HG_nm labels.
enum Integrand { kOverlap, kX, kY, kDx, kDy, kRot, kIntegrands };

using SpatialTables = std::array<Eigen::MatrixXcd, kIntegrands>;

struct AxisTable {
  std::vector<double> x;
  std::vector<double> weight;         // dx weights
  std::vector<std::vector<cplx>> u;   // u[i][n]
  std::vector<std::vector<cplx>> du;  // du[i][n]
};

AxisTable axis_table(int nodes, int per_axis, double z, const BeamParams& beam) {
  const GaussHermiteRule rule = gauss_hermite(nodes);
  const double scale = beam.waist_at(z) / std::sqrt(2.0);
  AxisTable t;
  t.x.resize(nodes);
  t.weight.resize(nodes);
  t.u.assign(nodes, std::vector<cplx>(per_axis));
  t.du.assign(nodes, std::vector<cplx>(per_axis));
  for (int i = 0; i < nodes; ++i) {
    t.x[i] = scale * rule.nodes[i];
    t.weight[i] = scale * rule.scaled_weights[i];
    hg1d_table(t.x[i], z, beam, t.u[i], t.du[i]);
  }
  return t;
}

SpatialTables spatial_integrals(int ncut, int nodes, double z, const BeamParams& beam,
                                Execution execution) {
  const int p = ncut + 1;
  const int l = p * p;
  const AxisTable t = axis_table(nodes, p, z, beam);

  SpatialTables out;
  for (auto& m : out) m = Eigen::MatrixXcd::Zero(l, l);

  const long pairs = long(l) * l;
#pragma omp parallel for schedule(dynamic) if (execution == Execution::parallel)
  for (long k = 0; k < pairs; ++k) {
    const int row = int(k / l), col = int(k % l);
    const int n = row / p, m = row % p, n2 = col / p, m2 = col % p;
    std::array<cplx, kIntegrands> acc{};
    for (int i = 0; i < nodes; ++i) {
      const double x = t.x[i];
      const cplx ux = std::conj(t.u[i][n]);
      const cplx vx = t.u[i][n2], dvx = t.du[i][n2];
      std::array<cplx, kIntegrands> inner{};
      for (int j = 0; j < nodes; ++j) {
        const double y = t.x[j];
        const cplx w = t.weight[j] * std::conj(t.u[j][m]);
        const cplx v = vx * t.u[j][m2];
        const cplx vdx = dvx * t.u[j][m2];
        const cplx vdy = vx * t.du[j][m2];
        inner[kOverlap] += w * v;
        inner[kX] += w * (x * v);
        inner[kY] += w * (y * v);
        inner[kDx] += w * vdx;
        inner[kDy] += w * vdy;
        inner[kRot] += w * (x * vdy - y * vdx);
      }
      const cplx wx = t.weight[i] * ux;
      for (int q = 0; q < kIntegrands; ++q) acc[q] += wx * inner[q];
    }
    for (int q = 0; q < kIntegrands; ++q) out[q](row, col) = acc[q];
  }
  return out;
}

// Lift a spatial matrix to the full space with delta_{mu mu'} (or a 2x2 block).
Eigen::MatrixXcd lift(const Eigen::Matrix2cd& pol, const Eigen::MatrixXcd& spatial) {
  return kron(pol, spatial);
}

struct Built {
  std::vector<std::pair<std::string, Eigen::MatrixXcd>> physical;
};

// Physical matrices (theta0, lambda_bar factors included) from the integrals.
Built assemble(const SpatialTables& s, double z, const BeamParams& beam, OracleFamily family) {
  const double lb = beam.lambda_bar();
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  Eigen::Matrix2cd eps;
  eps << 0.0, 1.0, -1.0, 0.0;
  Built b;
  if (family != OracleFamily::J) {
    b.physical.emplace_back("Px", lift(id, -kI * lb * s[kDx]));
    b.physical.emplace_back("Py", lift(id, -kI * lb * s[kDy]));
    b.physical.emplace_back("Pz", lift(id, s[kOverlap]));
  }
  if (family != OracleFamily::P) {
    // r x (z^ - i lb grad_perp) with r = (x, y, z).
    const Eigen::MatrixXcd jx = s[kY] + kI * lb * z * s[kDy];
    const Eigen::MatrixXcd jy = -s[kX] - kI * lb * z * s[kDx];
    const Eigen::MatrixXcd lz = lift(id, -kI * lb * s[kRot]);
    const Eigen::MatrixXcd sz = lift(-kI * lb * eps, s[kOverlap]);
    b.physical.emplace_back("Jx", lift(id, jx));
    b.physical.emplace_back("Jy", lift(id, jy));
    b.physical.emplace_back("Jz", sz + lz);
    b.physical.emplace_back("Sz", sz);
    b.physical.emplace_back("Lz", lz);
  }
  return b;
}

UnitTag tag_for(std::string_view name) {
  if (name == "Px" || name == "Py") return UnitTag::theta0();
  if (name == "Pz") return UnitTag::dimensionless();
  if (name == "Jx" || name == "Jy") return UnitTag::lambda_bar_over_theta0();
  return UnitTag::lambda_bar();
}

}  // namespace

OracleResult oracle_matrix_elements(const ModeSpace& space, const BeamParams& beam,
                                    OracleFamily family, const OracleOptions& options) {
  if (space.ncut() > 8)
    throw std::invalid_argument("oracle_matrix_elements: ncut must be <= 8");
  if (options.nodes < 2 || options.check_nodes < 2)
    throw std::invalid_argument("oracle_matrix_elements: need at least 2 quadrature nodes");

  const auto main = assemble(
      spatial_integrals(space.ncut(), options.nodes, options.z, beam, options.execution),
      options.z, beam, family);
  const auto check = assemble(
      spatial_integrals(space.ncut(), options.check_nodes, options.z, beam, options.execution),
      options.z, beam, family);

  OracleResult result;
  for (std::size_t k = 0; k < main.physical.size(); ++k) {
    const auto& [name, phys] = main.physical[k];
    const UnitTag tag = tag_for(name);
    const double unit = tag.value(beam);
    Eigen::MatrixXcd coef = phys / unit;
    const Eigen::MatrixXcd diff = coef - check.physical[k].second / unit;
    for (Eigen::Index r = 0; r < diff.rows(); ++r)
      for (Eigen::Index c = 0; c < diff.cols(); ++c) {
        const double e = std::abs(diff(r, c));
        result.max_error_estimate = std::max(result.max_error_estimate, e);
        if (e > options.flag_threshold)
          result.flagged.push_back({name, std::size_t(r), std::size_t(c), e});
      }
    result.operators.emplace_back(name, space, std::move(coef), tag, unit, false);
  }
  return result;
}

double oracle_deviation(const OperatorSet& built, const OracleResult& oracle) {
  double worst = 0.0;
  for (const auto& op : oracle.operators) {
    const QuadraticOperator& ref = built.at(op.name());
    const double scale = max_abs(ref.coefficients());
    if (scale == 0.0) continue;
    worst = std::max(worst, max_abs(ref.coefficients() - op.coefficients()) / scale);
  }
  return worst;
}

}  // namespace qpbeam

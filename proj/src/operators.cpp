#include "qpbeam/operators.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <cmath>
#include <stdexcept>

#include "qpbeam/hermite_gauss.hpp"

namespace qpbeam {

std::string UnitTag::name() const {
  if (*this == dimensionless()) return "dimensionless";
  if (*this == theta0()) return "theta0";
  if (*this == lambda_bar()) return "lambda_bar";
  if (*this == lambda_bar_over_theta0()) return "lambda_bar_over_theta0";
  return "theta0^" + std::to_string(theta0_power) + "*lambda_bar^" +
         std::to_string(lambda_bar_power);
}

UnitTag UnitTag::parse(std::string_view text) {
  if (text == "dimensionless") return dimensionless();
  if (text == "theta0") return theta0();
  if (text == "lambda_bar") return lambda_bar();
  if (text == "lambda_bar_over_theta0") return lambda_bar_over_theta0();
  constexpr std::string_view kHead = "theta0^";
  constexpr std::string_view kMid = "*lambda_bar^";
  const auto mid = text.find(kMid);
  if (text.starts_with(kHead) && mid != std::string_view::npos) {
    UnitTag tag;
    const auto a = text.substr(kHead.size(), mid - kHead.size());
    const auto b = text.substr(mid + kMid.size());
    const auto ra = std::from_chars(a.data(), a.data() + a.size(), tag.theta0_power);
    const auto rb = std::from_chars(b.data(), b.data() + b.size(), tag.lambda_bar_power);
    if (ra.ec == std::errc{} && rb.ec == std::errc{} && ra.ptr == a.data() + a.size() &&
        rb.ptr == b.data() + b.size())
      return tag;
  }
  throw std::invalid_argument("unknown units tag '" + std::string(text) + "'");
}

double UnitTag::value(const BeamParams& beam) const {
  return std::pow(beam.theta0(), theta0_power) * std::pow(beam.lambda_bar(), lambda_bar_power);
}

double max_abs(const Eigen::MatrixXcd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

QuadraticOperator::QuadraticOperator(std::string name, ModeSpace space,
                                     Eigen::MatrixXcd coefficients, UnitTag units,
                                     double unit_value, bool hermitian)
    : name_(std::move(name)),
      space_(space),
      coefficients_(std::move(coefficients)),
      units_(units),
      unit_value_(unit_value),
      hermitian_(hermitian) {
  const auto d = static_cast<Eigen::Index>(space_.dim());
  if (coefficients_.rows() != d || coefficients_.cols() != d)
    throw std::invalid_argument("QuadraticOperator " + name_ +
                                ": matrix does not match mode space dimension");
  if (hermitian_ && max_abs(coefficients_ - coefficients_.adjoint()) >= 1e-12)
    throw std::invalid_argument("QuadraticOperator " + name_ + ": not Hermitian");
}

cplx QuadraticOperator::element(const ModeIndex& row, const ModeIndex& col) const {
  return coefficients_(space_.index_of(row), space_.index_of(col));
}

namespace {

double kd(int a, int b) { return a == b ? 1.0 : 0.0; }

// Levi-Civita eps_{mu mu' 3} for mu, mu' in {1, 2}.
double eps12(int mu, int mu2) {
  if (mu == 1 && mu2 == 2) return 1.0;
  if (mu == 2 && mu2 == 1) return -1.0;
  return 0.0;
}

template <class F>
Eigen::MatrixXcd fill(const ModeSpace& space, F&& element) {
  const auto d = static_cast<Eigen::Index>(space.dim());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const ModeIndex a = space.mode_at(i);
    for (Eigen::Index j = 0; j < d; ++j) out(i, j) = element(a, space.mode_at(j));
  }
  return out;
}

// sqrt(n') d_{n',n+1} - sqrt(n) d_{n,n'+1}
double lowering_minus_raising(int n, int n2) {
  return std::sqrt(double(n2)) * kd(n2, n + 1) - std::sqrt(double(n)) * kd(n, n2 + 1);
}

// sqrt(n) d_{n,n'+1} + sqrt(n') d_{n',n+1}
double position_ladder(int n, int n2) {
  return std::sqrt(double(n)) * kd(n, n2 + 1) + std::sqrt(double(n2)) * kd(n2, n + 1);
}

}  // namespace

MomentumOperators build_P(const ModeSpace& space, const BeamParams& beam) {
  const cplx half_over_i{0.0, -0.5};  // 1/(2i)
  auto px = fill(space, [&](const ModeIndex& a, const ModeIndex& b) -> cplx {
    return kd(a.mu, b.mu) * kd(a.m, b.m) * half_over_i * lowering_minus_raising(a.n, b.n);
  });
  auto py = fill(space, [&](const ModeIndex& a, const ModeIndex& b) -> cplx {
    return kd(a.mu, b.mu) * kd(a.n, b.n) * half_over_i * lowering_minus_raising(a.m, b.m);
  });
  auto pz = fill(space, [&](const ModeIndex& a, const ModeIndex& b) -> cplx {
    return kd(a.mu, b.mu) * kd(a.n, b.n) * kd(a.m, b.m);
  });
  const double t = UnitTag::theta0().value(beam);
  return {QuadraticOperator("Px", space, std::move(px), UnitTag::theta0(), t, true),
          QuadraticOperator("Py", space, std::move(py), UnitTag::theta0(), t, true),
          QuadraticOperator("Pz", space, std::move(pz), UnitTag::dimensionless(), 1.0, true)};
}

AngularMomentumOperators build_J(const ModeSpace& space, const BeamParams& beam) {
  auto jx = fill(space, [&](const ModeIndex& a, const ModeIndex& b) -> cplx {
    return kd(a.mu, b.mu) * kd(a.n, b.n) * position_ladder(a.m, b.m);
  });
  auto jy = fill(space, [&](const ModeIndex& a, const ModeIndex& b) -> cplx {
    return -kd(a.mu, b.mu) * kd(a.m, b.m) * position_ladder(a.n, b.n);
  });
  auto sz = fill(space, [&](const ModeIndex& a, const ModeIndex& b) -> cplx {
    return -kI * eps12(a.mu, b.mu) * kd(a.n, b.n) * kd(a.m, b.m);
  });
  auto lz = fill(space, [&](const ModeIndex& a, const ModeIndex& b) -> cplx {
    const double t1 = std::sqrt(double(a.n) * b.m) * kd(a.n, b.n + 1) * kd(b.m, a.m + 1);
    const double t2 = std::sqrt(double(b.n) * a.m) * kd(b.n, a.n + 1) * kd(a.m, b.m + 1);
    return -kI * kd(a.mu, b.mu) * (t1 - t2);
  });
  Eigen::MatrixXcd jz = sz + lz;

  const UnitTag lb = UnitTag::lambda_bar();
  const UnitTag lbt = UnitTag::lambda_bar_over_theta0();
  return {QuadraticOperator("Jx", space, std::move(jx), lbt, lbt.value(beam), true),
          QuadraticOperator("Jy", space, std::move(jy), lbt, lbt.value(beam), true),
          QuadraticOperator("Jz", space, std::move(jz), lb, lb.value(beam), true),
          QuadraticOperator("Sz", space, std::move(sz), lb, lb.value(beam), true),
          QuadraticOperator("Lz", space, std::move(lz), lb, lb.value(beam), true)};
}

namespace {

QuadraticOperator renamed(const QuadraticOperator& op, std::string name) {
  return QuadraticOperator(std::move(name), op.space(), op.coefficients(), op.units(),
                           op.unit_value(), op.hermitian());
}

}  // namespace

OperatorSet::OperatorSet(const ModeSpace& space, const BeamParams& beam) {
  auto p = build_P(space, beam);
  auto j = build_J(space, beam);
  const auto d = static_cast<Eigen::Index>(space.dim());
  const UnitTag lb = UnitTag::lambda_bar();
  ops_.push_back(p.px);
  ops_.push_back(p.py);
  ops_.push_back(p.pz);
  ops_.push_back(renamed(j.jx, "Lx"));
  ops_.push_back(renamed(j.jy, "Ly"));
  ops_.push_back(j.lz);
  ops_.emplace_back("Sx", space, Eigen::MatrixXcd::Zero(d, d), lb, lb.value(beam), true);
  ops_.emplace_back("Sy", space, Eigen::MatrixXcd::Zero(d, d), lb, lb.value(beam), true);
  ops_.push_back(j.sz);
  ops_.push_back(j.jx);
  ops_.push_back(j.jy);
  ops_.push_back(j.jz);
}

const QuadraticOperator& OperatorSet::at(std::string_view name) const {
  for (const auto& op : ops_)
    if (op.name() == name) return op;
  throw std::out_of_range("OperatorSet: no operator named '" + std::string(name) + "'");
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

SpinOrbitBlocks spin_orbit_blocks(int ncut) {
  const LadderMatrices lad = ladder_matrix_elements(std::max(ncut, 1));
  const int p = ncut + 1;
  const Eigen::MatrixXcd x = lad.x.topLeftCorner(p, p).cast<cplx>();
  const Eigen::MatrixXcd d = lad.d.topLeftCorner(p, p).cast<cplx>();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(p, p);

  SpinOrbitBlocks b;
  b.sx.setZero();
  b.sy.setZero();
  b.sz << 0.0, -kI, kI, 0.0;
  // x = w0 X, d/dx = D / w0 and lambda_bar/theta0 = w0/2.
  b.lx = kron(id, 2.0 * x);
  b.ly = -kron(2.0 * x, id);
  b.lz = -kI * (kron(x, d) - kron(d, x));
  b.px = cplx(0.0, -0.5) * kron(d, id);
  b.py = cplx(0.0, -0.5) * kron(id, d);
  b.pz = Eigen::MatrixXcd::Identity(p * p, p * p);
  return b;
}

double TensorSplitReport::max() const {
  return std::max({residual_x, residual_y, residual_z, residual_p, spin_transverse});
}

TensorSplitReport tensor_split_check(const ModeSpace& space, const BeamParams& beam) {
  const SpinOrbitBlocks b = spin_orbit_blocks(space.ncut());
  const auto l = static_cast<Eigen::Index>(space.spatial_dim());
  const Eigen::MatrixXcd il = Eigen::MatrixXcd::Identity(l, l);
  const Eigen::MatrixXcd is = Eigen::MatrixXcd::Identity(2, 2);
  const auto j = build_J(space, beam);
  const auto p = build_P(space, beam);

  TensorSplitReport r;
  r.residual_x = max_abs(kron(b.sx, il) + kron(is, b.lx) - j.jx.coefficients());
  r.residual_y = max_abs(kron(b.sy, il) + kron(is, b.ly) - j.jy.coefficients());
  r.residual_z = max_abs(kron(b.sz, il) + kron(is, b.lz) - j.jz.coefficients());
  r.residual_p = std::max({max_abs(kron(is, b.px) - p.px.coefficients()),
                           max_abs(kron(is, b.py) - p.py.coefficients()),
                           max_abs(kron(is, b.pz) - p.pz.coefficients())});
  r.spin_transverse = std::max(b.sx.cwiseAbs().maxCoeff(), b.sy.cwiseAbs().maxCoeff());
  return r;
}

QuadraticOperator commutator(const QuadraticOperator& u, const QuadraticOperator& v) {
  if (!(u.space() == v.space()))
    throw std::invalid_argument("commutator: operators live on different mode spaces");
  Eigen::MatrixXcd c = u.coefficients() * v.coefficients() - v.coefficients() * u.coefficients();
  return QuadraticOperator("[" + u.name() + "," + v.name() + "]", u.space(), std::move(c),
                           u.units() * v.units(), u.unit_value() * v.unit_value(), false);
}

Eigen::VectorXd interior_mask(const ModeSpace& space) {
  Eigen::VectorXd mask(space.dim());
  const int edge = space.ncut() - 2;
  for (std::size_t i = 0; i < space.dim(); ++i) {
    const ModeIndex a = space.mode_at(i);
    mask(i) = (a.n <= edge && a.m <= edge) ? 1.0 : 0.0;
  }
  return mask;
}

Eigen::MatrixXcd project_interior(const ModeSpace& space, const Eigen::MatrixXcd& m) {
  const Eigen::VectorXd mask = interior_mask(space);
  return mask.asDiagonal() * m * mask.asDiagonal();
}

namespace {

int axis_of(char c) {
  switch (c) {
    case 'x': return 0;
    case 'y': return 1;
    case 'z': return 2;
  }
  throw std::invalid_argument("operator axis must be x, y or z");
}

constexpr char kAxes[] = {'x', 'y', 'z'};

int levi_civita(int a, int b, int c) {
  return (a - b) * (b - c) * (c - a) / 2;
}

void parse_name(std::string_view name, char& family, int& axis) {
  if (name.size() != 2 || std::string_view("PLSJ").find(name[0]) == std::string_view::npos)
    throw std::invalid_argument("unknown operator name '" + std::string(name) + "'");
  family = name[0];
  axis = axis_of(name[1]);
}

}  // namespace

ExpectedCommutator expected_commutator(std::string_view a, std::string_view b) {
  char fa, fb;
  int ia, ib;
  parse_name(a, fa, ia);
  parse_name(b, fb, ib);
  const ExpectedCommutator zero{"zero", 0};
  if (ia == ib && fa == fb) return zero;

  const auto third = [](int x, int y) { return 3 - x - y; };
  // [U_a, U_b] = i lambda_bar eps_abc (1 - delta_cz) U_c for L-L and J-J.
  if ((fa == 'L' && fb == 'L') || (fa == 'J' && fb == 'J')) {
    const int c = third(ia, ib);
    if (c == 2) return zero;
    return {std::string(1, fa) + kAxes[c], levi_civita(ia, ib, c)};
  }
  // [L_a, P_b] = i lambda_bar eps_abc (1 - delta_bz) P_c.
  if (fa == 'L' && fb == 'P') {
    if (ia == ib || ib == 2) return zero;
    const int c = third(ia, ib);
    return {std::string("P") + kAxes[c], levi_civita(ia, ib, c)};
  }
  if (fa == 'P' && fb == 'L') {
    const ExpectedCommutator swapped = expected_commutator(b, a);
    return {swapped.rhs, -swapped.coefficient};
  }
  // P-P, S-S, and S against P or L all vanish.
  return zero;
}

std::vector<CommutatorReport> ccr_table(const ModeSpace& space, const BeamParams& beam,
                                        double tolerance) {
  if (space.ncut() < 3)
    throw std::invalid_argument("ccr_table: ncut must be >= 3 for a non-empty interior");
  const OperatorSet ops(space, beam);
  const std::vector<std::string> names{"Lx", "Ly", "Lz", "Px", "Py", "Pz", "Sx", "Sy", "Sz"};
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j) pairs.emplace_back(names[i], names[j]);
  pairs.emplace_back("Jx", "Jy");
  pairs.emplace_back("Jx", "Jz");
  pairs.emplace_back("Jy", "Jz");

  const UnitTag lb = UnitTag::lambda_bar();
  std::vector<CommutatorReport> out;
  for (const auto& [an, bn] : pairs) {
    const QuadraticOperator& u = ops.at(an);
    const QuadraticOperator& v = ops.at(bn);
    const QuadraticOperator c = commutator(u, v);
    const Eigen::MatrixXcd ci = project_interior(space, c.coefficients());

    CommutatorReport rep;
    rep.a = an;
    rep.b = bn;
    rep.expected = expected_commutator(an, bn);

    const double cnorm = max_abs(ci);
    if (cnorm <= tolerance) {
      rep.identified_rhs = "zero";
      rep.residual_norm = cnorm;
    } else {
      // Candidates ordered so that the operands' own families are tried first;
      // Lx/Jx and Ly/Jy coincide as matrices.
      std::vector<const QuadraticOperator*> candidates;
      for (char fam : {an[0], bn[0], 'P', 'L', 'S', 'J'})
        for (const auto& op : ops.all())
          if (op.name()[0] == fam && max_abs(op.coefficients()) > 0.0 &&
              std::find(candidates.begin(), candidates.end(), &op) == candidates.end())
            candidates.push_back(&op);

      double best = std::numeric_limits<double>::infinity();
      for (const QuadraticOperator* w : candidates) {
        if (!(w->units() * lb == c.units())) continue;
        const Eigen::MatrixXcd wi = project_interior(space, w->coefficients());
        const double wn2 = wi.squaredNorm();
        if (wn2 == 0.0) continue;
        const cplx f = (wi.conjugate().cwiseProduct(ci)).sum() / (kI * wn2);
        const double denom = std::max(std::abs(f), 1e-300) * max_abs(wi);
        const double res = max_abs(ci - kI * f * wi) / denom;
        if (res < best - 1e-15) {
          best = res;
          rep.identified_rhs = w->name();
          rep.coefficient = f;
          rep.residual_norm = res;
        }
      }
      if (!(best <= tolerance)) {
        rep.identified_rhs = "unidentified";
        rep.residual_norm = best;
      }
    }

    rep.matches = rep.identified_rhs == rep.expected.rhs && rep.residual_norm <= tolerance &&
                  std::abs(rep.coefficient - cplx(rep.expected.coefficient, 0.0)) <= tolerance;
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace qpbeam

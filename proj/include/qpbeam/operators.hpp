#pragma once

// Per-unit-length linear and angular momentum operators as matrices over the
// truncated mode space, and the commutator table they generate.
//
// Every operator U = sum_AA' a_A^+ U^{AA'} a_A' is stored as a dimensionless
// coefficient matrix plus a UnitTag carrying the physical prefactor
// (theta0, lambda_bar, lambda_bar/theta0). The global factor hbar omega0/(c^2 T)
// is never multiplied in.

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "qpbeam/beam.hpp"

namespace qpbeam {

/// theta0^a * lambda_bar^b.
struct UnitTag {
  int theta0_power = 0;
  int lambda_bar_power = 0;

  static constexpr UnitTag dimensionless() { return {0, 0}; }
  static constexpr UnitTag theta0() { return {1, 0}; }
  static constexpr UnitTag lambda_bar() { return {0, 1}; }
  static constexpr UnitTag lambda_bar_over_theta0() { return {-1, 1}; }

  /// "dimensionless", "theta0", "lambda_bar", "lambda_bar_over_theta0", or
  /// "theta0^a*lambda_bar^b" for composite tags.
  std::string name() const;
  /// Inverse of name(); throws std::invalid_argument.
  static UnitTag parse(std::string_view text);
  double value(const BeamParams& beam) const;

  friend UnitTag operator*(UnitTag a, UnitTag b) {
    return {a.theta0_power + b.theta0_power, a.lambda_bar_power + b.lambda_bar_power};
  }
  friend bool operator==(const UnitTag&, const UnitTag&) = default;
};

class QuadraticOperator {
 public:
  /// Throws std::invalid_argument if the matrix does not match the space, or
  /// if `hermitian` is claimed but ||M - M^+||_max >= 1e-12.
  QuadraticOperator(std::string name, ModeSpace space, Eigen::MatrixXcd coefficients,
                    UnitTag units, double unit_value, bool hermitian);

  const std::string& name() const { return name_; }
  const ModeSpace& space() const { return space_; }
  const Eigen::MatrixXcd& coefficients() const { return coefficients_; }
  UnitTag units() const { return units_; }
  double unit_value() const { return unit_value_; }
  bool hermitian() const { return hermitian_; }

  /// Coefficients times the resolved unit prefactor.
  Eigen::MatrixXcd physical() const { return unit_value_ * coefficients_; }
  cplx element(const ModeIndex& row, const ModeIndex& col) const;

 private:
  std::string name_;
  ModeSpace space_;
  Eigen::MatrixXcd coefficients_;
  UnitTag units_;
  double unit_value_;
  bool hermitian_;
};

struct MomentumOperators {
  QuadraticOperator px;
  QuadraticOperator py;
  QuadraticOperator pz;
};

struct AngularMomentumOperators {
  QuadraticOperator jx;
  QuadraticOperator jy;
  QuadraticOperator jz;
  QuadraticOperator sz;
  QuadraticOperator lz;
};

MomentumOperators build_P(const ModeSpace& space, const BeamParams& beam);
AngularMomentumOperators build_J(const ModeSpace& space, const BeamParams& beam);

/// The named family {Px,Py,Pz, Lx,Ly,Lz, Sx,Sy,Sz, Jx,Jy,Jz} on one space.
/// Lx = Jx and Ly = Jy because the spin has no transverse part.
class OperatorSet {
 public:
  OperatorSet(const ModeSpace& space, const BeamParams& beam);

  const QuadraticOperator& at(std::string_view name) const;
  const std::vector<QuadraticOperator>& all() const { return ops_; }

 private:
  std::vector<QuadraticOperator> ops_;
};

/// J = S (x) I_L + I_S (x) L: spin 2x2 blocks and orbital-only matrices built
/// from the 1D ladder matrices (x = w0 X, d/dx = D/w0).
struct SpinOrbitBlocks {
  Eigen::Matrix2cd sx, sy, sz;      ///< units lambda_bar
  Eigen::MatrixXcd lx, ly;          ///< units lambda_bar/theta0
  Eigen::MatrixXcd lz;              ///< units lambda_bar
  Eigen::MatrixXcd px, py, pz;      ///< orbital P blocks, units theta0 / 1
};

SpinOrbitBlocks spin_orbit_blocks(int ncut);

struct TensorSplitReport {
  double residual_x = 0.0;
  double residual_y = 0.0;
  double residual_z = 0.0;
  double residual_p = 0.0;        ///< P = I_S (x) P_orbital
  double spin_transverse = 0.0;   ///< max |Sx|, |Sy|
  double max() const;
};

/// Rebuilds Jx, Jy, Jz (and P) via Kronecker products and returns the max
/// entry-wise deviation from build_J / build_P.
TensorSplitReport tensor_split_check(const ModeSpace& space, const BeamParams& beam);

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// UV - VU with coefficient matrix [U~, V~] and tag units(U)*units(V).
/// Throws std::invalid_argument on a space mismatch.
QuadraticOperator commutator(const QuadraticOperator& u, const QuadraticOperator& v);

/// Mask selecting n, m <= ncut - 2 (both polarisations), where products of two
/// ladder-type operators do not reach the truncation edge.
Eigen::VectorXd interior_mask(const ModeSpace& space);

/// P M P with P the interior projector.
Eigen::MatrixXcd project_interior(const ModeSpace& space, const Eigen::MatrixXcd& m);

/// Paper table: [U_a, V_b] = i lambda_bar f W_c.
struct ExpectedCommutator {
  std::string rhs;  ///< operator name or "zero"
  int coefficient = 0;
};

/// Expected right-hand side for a pair drawn from {P, L, S, J}:
/// f^PP = f^SS = 0, f^JJ_abc = f^LL_abc = eps_abc (1 - delta_cz),
/// f^LP_abc = eps_abc (1 - delta_bz), and P, L commute with S.
ExpectedCommutator expected_commutator(std::string_view a, std::string_view b);

struct CommutatorReport {
  std::string a;
  std::string b;
  double residual_norm = 0.0;       ///< relative max-norm residual on the interior
  std::string identified_rhs;       ///< operator name or "zero"
  cplx coefficient{0.0, 0.0};       ///< f with [U,V] = i lambda_bar f W
  ExpectedCommutator expected;
  bool matches = false;
};

/// Evaluates every pair of {Lx,Ly,Lz,Px,Py,Pz,Sx,Sy,Sz} plus the J-J pairs on
/// the interior projector and identifies the right-hand side.
/// Throws std::invalid_argument when ncut < 3.
std::vector<CommutatorReport> ccr_table(const ModeSpace& space, const BeamParams& beam,
                                        double tolerance = 1e-12);

double max_abs(const Eigen::MatrixXcd& m);

}  // namespace qpbeam

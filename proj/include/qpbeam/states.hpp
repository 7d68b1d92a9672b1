#pragma once

// Coherent and single-photon states as amplitude vectors over a ModeSpace, and
// expectation values <U> = (alpha, U alpha) of quadratic operators. Every
// result is in units of hbar omega0 / (c^2 T).

#include <Eigen/Dense>
#include <string>

#include "qpbeam/operators.hpp"

namespace qpbeam {

/// u = xi x^ + eta y^ with |xi|^2 + |eta|^2 = 1.
class Polarization {
 public:
  /// Throws std::invalid_argument unless normalised within 1e-12.
  Polarization(cplx xi, cplx eta);

  static Polarization linear_x() { return {1.0, 0.0}; }
  static Polarization linear_y() { return {0.0, 1.0}; }
  /// sigma = +1: (1, i)/sqrt2; sigma = -1: (1, -i)/sqrt2.
  static Polarization circular(int sigma);

  cplx xi() const { return xi_; }
  cplx eta() const { return eta_; }

 private:
  cplx xi_;
  cplx eta_;
};

/// sigma = i (xi eta* - xi* eta): +-1 for circular, 0 for linear.
double helicity(const Polarization& pol);
/// Alternative spelling of helicity().
inline double elicity(const Polarization& pol) { return helicity(pol); }

enum class StateKind { coherent, single_photon };

std::string to_string(StateKind kind);

class BeamState {
 public:
  /// Any finite amplitude vector alpha_A.
  static BeamState coherent(const ModeSpace& space, Eigen::VectorXcd alpha);
  /// Mode amplitudes c_A with ||c|| = 1 within 1e-12.
  static BeamState single_photon(const ModeSpace& space, Eigen::VectorXcd c);
  static BeamState vacuum(const ModeSpace& space);

  StateKind kind() const { return kind_; }
  const ModeSpace& space() const { return space_; }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  cplx amplitude(const ModeIndex& a) const { return amplitudes_(space_.index_of(a)); }

 private:
  BeamState(StateKind kind, const ModeSpace& space, Eigen::VectorXcd amplitudes);

  StateKind kind_;
  ModeSpace space_;
  Eigen::VectorXcd amplitudes_;
};

struct Expectation {
  std::string op;
  cplx coefficient{0.0, 0.0};  ///< (alpha, U~ alpha) before the unit prefactor
  UnitTag units;
  double value = 0.0;          ///< Re(coefficient) * units.value(beam)
};

/// Throws std::invalid_argument when the state and operator spaces differ.
Expectation expectation(const BeamState& state, const QuadraticOperator& op);

/// Coherent state on HG00, HG10, HG01 with alpha_{1nm} = xi a_nm and
/// alpha_{2nm} = eta a_nm. Needs ncut >= 1 and a normalised triple (1e-12).
BeamState six_mode_state(const ModeSpace& space, const Polarization& pol, cplx a00, cplx a10,
                         cplx a01);

struct TiltAngles {
  double theta_x = 0.0;
  double theta_y = 0.0;
};

/// tan theta_a = <P_a>/<P_z>. Throws std::domain_error when <Pz> = 0.
TiltAngles tilt_angles(const BeamState& state, const MomentumOperators& p);

/// <Lz>/<Pz> in units of lambda_bar, i.e. orbital angular momentum per photon
/// in units of hbar. Throws std::domain_error when <Pz> = 0.
double per_photon_oam(const BeamState& state, const QuadraticOperator& lz,
                      const QuadraticOperator& pz);

/// The six moments in physical units (theta0, lambda_bar resolved).
struct Moments {
  double px = 0.0, py = 0.0, pz = 0.0;
  double jx = 0.0, jy = 0.0, jz = 0.0;
};

Moments operator_moments(const BeamState& state, const OperatorSet& ops);

}  // namespace qpbeam

#include "qpbeam/states.hpp"

#include <cmath>
#include <stdexcept>

namespace qpbeam {

Polarization::Polarization(cplx xi, cplx eta) : xi_(xi), eta_(eta) {
  if (std::abs(std::norm(xi) + std::norm(eta) - 1.0) > 1e-12)
    throw std::invalid_argument("Polarization: |xi|^2 + |eta|^2 must be 1");
}

Polarization Polarization::circular(int sigma) {
  if (sigma != 1 && sigma != -1)
    throw std::invalid_argument("Polarization::circular: sigma must be +1 or -1");
  const double r = 1.0 / std::sqrt(2.0);
  return {r, cplx(0.0, sigma * r)};
}

double helicity(const Polarization& pol) {
  const cplx xi = pol.xi(), eta = pol.eta();
  return std::real(kI * (xi * std::conj(eta) - std::conj(xi) * eta));
}

std::string to_string(StateKind kind) {
  return kind == StateKind::coherent ? "coherent" : "single_photon";
}

BeamState::BeamState(StateKind kind, const ModeSpace& space, Eigen::VectorXcd amplitudes)
    : kind_(kind), space_(space), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != static_cast<Eigen::Index>(space_.dim()))
    throw std::invalid_argument("BeamState: amplitude vector does not match mode space");
  if (!amplitudes_.allFinite())
    throw std::invalid_argument("BeamState: amplitudes must be finite");
}

BeamState BeamState::coherent(const ModeSpace& space, Eigen::VectorXcd alpha) {
  return BeamState(StateKind::coherent, space, std::move(alpha));
}

BeamState BeamState::single_photon(const ModeSpace& space, Eigen::VectorXcd c) {
  if (std::abs(c.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("BeamState: single-photon amplitudes must have unit norm");
  return BeamState(StateKind::single_photon, space, std::move(c));
}

BeamState BeamState::vacuum(const ModeSpace& space) {
  return coherent(space, Eigen::VectorXcd::Zero(space.dim()));
}

Expectation expectation(const BeamState& state, const QuadraticOperator& op) {
  if (!(state.space() == op.space()))
    throw std::invalid_argument("expectation: state and operator spaces differ");
  const Eigen::VectorXcd& a = state.amplitudes();
  Expectation e;
  e.op = op.name();
  e.coefficient = a.dot(op.coefficients() * a);  // Eigen dot conjugates the left side
  e.units = op.units();
  e.value = e.coefficient.real() * op.unit_value();
  return e;
}

BeamState six_mode_state(const ModeSpace& space, const Polarization& pol, cplx a00, cplx a10,
                         cplx a01) {
  if (space.ncut() < 1) throw std::invalid_argument("six_mode_state: ncut must be >= 1");
  if (std::abs(std::norm(a00) + std::norm(a10) + std::norm(a01) - 1.0) > 1e-12)
    throw std::invalid_argument("six_mode_state: |a00|^2 + |a10|^2 + |a01|^2 must be 1");
  Eigen::VectorXcd alpha = Eigen::VectorXcd::Zero(space.dim());
  const struct {
    int n, m;
    cplx a;
  } modes[] = {{0, 0, a00}, {1, 0, a10}, {0, 1, a01}};
  for (const auto& md : modes) {
    alpha(space.index_of({1, md.n, md.m})) = pol.xi() * md.a;
    alpha(space.index_of({2, md.n, md.m})) = pol.eta() * md.a;
  }
  return BeamState::coherent(space, std::move(alpha));
}

TiltAngles tilt_angles(const BeamState& state, const MomentumOperators& p) {
  const double pz = expectation(state, p.pz).value;
  if (pz == 0.0) throw std::domain_error("tilt_angles: <Pz> = 0, tilt undefined");
  return {std::atan(expectation(state, p.px).value / pz),
          std::atan(expectation(state, p.py).value / pz)};
}

double per_photon_oam(const BeamState& state, const QuadraticOperator& lz,
                      const QuadraticOperator& pz) {
  const double flux = expectation(state, pz).coefficient.real();
  if (flux == 0.0) throw std::domain_error("per_photon_oam: zero photon flux");
  return expectation(state, lz).coefficient.real() / flux;
}

Moments operator_moments(const BeamState& state, const OperatorSet& ops) {
  Moments m;
  m.px = expectation(state, ops.at("Px")).value;
  m.py = expectation(state, ops.at("Py")).value;
  m.pz = expectation(state, ops.at("Pz")).value;
  m.jx = expectation(state, ops.at("Jx")).value;
  m.jy = expectation(state, ops.at("Jy")).value;
  m.jz = expectation(state, ops.at("Jz")).value;
  return m;
}

}  // namespace qpbeam

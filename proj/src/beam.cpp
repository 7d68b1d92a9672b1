#include "qpbeam/beam.hpp"

#include <cmath>
#include <stdexcept>

namespace qpbeam {

BeamParams::BeamParams(double omega0, double w0, double c)
    : omega0_(omega0), w0_(w0), c_(c) {
  if (!(omega0 > 0.0) || !std::isfinite(omega0))
    throw std::invalid_argument("BeamParams: omega0 must be positive");
  if (!(w0 > 0.0) || !std::isfinite(w0))
    throw std::invalid_argument("BeamParams: w0 must be positive");
  if (!(c > 0.0)) throw std::invalid_argument("BeamParams: c must be positive");
}

BeamParams BeamParams::from_wavelength(double wavelength, double w0, double c) {
  if (!(wavelength > 0.0))
    throw std::invalid_argument("BeamParams: wavelength must be positive");
  return BeamParams(2.0 * kPi * c / wavelength, w0, c);
}

double BeamParams::waist_at(double z) const {
  const double u = z / rayleigh_range();
  return w0_ * std::sqrt(1.0 + u * u);
}

std::string to_string(const ModeIndex& a) {
  return "(" + std::to_string(a.mu) + "," + std::to_string(a.n) + "," +
         std::to_string(a.m) + ")";
}

ModeSpace::ModeSpace(int ncut) : ncut_(ncut) {
  if (ncut < 0) throw std::invalid_argument("ModeSpace: ncut must be >= 0");
}

bool ModeSpace::contains(const ModeIndex& a) const {
  return a.valid() && a.n <= ncut_ && a.m <= ncut_;
}

std::size_t ModeSpace::index_of(const ModeIndex& a) const {
  if (!contains(a))
    throw std::out_of_range("ModeSpace: mode " + to_string(a) +
                            " outside truncation ncut=" + std::to_string(ncut_));
  const std::size_t p = per_axis();
  return (std::size_t(a.mu - 1) * p + a.n) * p + a.m;
}

ModeIndex ModeSpace::mode_at(std::size_t index) const {
  if (index >= dim()) throw std::out_of_range("ModeSpace: index out of range");
  const std::size_t p = per_axis();
  return ModeIndex{int(index / spatial_dim()) + 1, int((index / p) % p),
                   int(index % p)};
}

}  // namespace qpbeam

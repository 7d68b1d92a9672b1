#pragma once

#include <cstddef>
#include <string>

#include "qpbeam/constants.hpp"

namespace qpbeam {

/// Beam scaffolding shared by every formula: central frequency and waist.
///
/// The reduced length is lambda_bar = c/omega0 (wavelength / 2 pi) and the
/// angular spread is fixed to theta0 = 2 lambda_bar / w0. With this pair the
/// transverse momentum elements of Hermite-Gauss modes of waist w0 take the
/// ladder form (theta0 / 2i)(sqrt(n') d_{n',n+1} - sqrt(n) d_{n,n'+1}) exactly,
/// and lambda_bar / theta0 = w0 / 2 is the position ladder scale.
class BeamParams {
 public:
  BeamParams(double omega0, double w0, double c = kSpeedOfLight);

  static BeamParams from_wavelength(double wavelength, double w0,
                                    double c = kSpeedOfLight);

  double omega0() const { return omega0_; }
  double w0() const { return w0_; }
  double c() const { return c_; }

  double k0() const { return omega0_ / c_; }
  double lambda_bar() const { return c_ / omega0_; }
  double wavelength() const { return 2.0 * kPi * c_ / omega0_; }
  double theta0() const { return 2.0 * lambda_bar() / w0_; }
  double rayleigh_range() const { return omega0_ * w0_ * w0_ / (2.0 * c_); }
  /// Beam radius w(z) = w0 sqrt(1 + (z/z_R)^2).
  double waist_at(double z) const;
  /// Set when theta0 >= 0.3, outside the well-collimated regime.
  bool paraxiality_warning() const { return theta0() >= 0.3; }

 private:
  double omega0_;
  double w0_;
  double c_;
};

/// Cumulative mode label A = (mu, n, m): polarisation x_mu and HG_nm.
struct ModeIndex {
  int mu = 1;
  int n = 0;
  int m = 0;

  bool valid() const { return (mu == 1 || mu == 2) && n >= 0 && m >= 0; }
  friend bool operator==(const ModeIndex&, const ModeIndex&) = default;
};

std::string to_string(const ModeIndex& a);

/// Square truncation n, m <= ncut for both polarisations; flat order is
/// mu-major, then n, then m.
class ModeSpace {
 public:
  explicit ModeSpace(int ncut);

  int ncut() const { return ncut_; }
  int per_axis() const { return ncut_ + 1; }
  std::size_t spatial_dim() const { return std::size_t(per_axis()) * per_axis(); }
  std::size_t dim() const { return 2 * spatial_dim(); }

  bool contains(const ModeIndex& a) const;
  /// Throws std::out_of_range for labels outside the truncation.
  std::size_t index_of(const ModeIndex& a) const;
  ModeIndex mode_at(std::size_t index) const;

  friend bool operator==(const ModeSpace&, const ModeSpace&) = default;

 private:
  int ncut_;
};

}  // namespace qpbeam

#pragma once

// File formats: coordinate-sparse operator CSV, run configuration JSON and
// state JSON.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qpbeam/field_oracle.hpp"
#include "qpbeam/operators.hpp"
#include "qpbeam/states.hpp"

namespace qpbeam {

inline constexpr int kSchemaVersion = 1;

/// Malformed input. `location()` is "line L, column C" for syntax errors or a
/// JSON pointer / CSV line for content errors.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string location, const std::string& what)
      : std::runtime_error(location + ": " + what), location_(std::move(location)) {}
  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

/// Header "mu,n,m,mu',n',m',re,im,units_tag", then one row per nonzero
/// coefficient in flat order, numbers printed with 17 significant digits.
void write_operator_csv(std::ostream& out, const QuadraticOperator& op);

/// Inverse of write_operator_csv. The unit value is resolved from `beam`; a
/// file without rows reads back as a dimensionless zero operator.
QuadraticOperator read_operator_csv(std::istream& in, const std::string& name,
                                    const ModeSpace& space, const BeamParams& beam);

struct RunConfig {
  int schema_version = kSchemaVersion;
  double omega0 = 2.0 * kPi * kSpeedOfLight / 1e-6;  ///< [rad/s], default 1 um wavelength
  double w0 = 1e-5;                                   ///< waist [m]
  int ncut = 6;
  int grid_n = 512;
  double grid_extent_factor = 8.0;  ///< half-width in units of w0
  double grid_z_over_zr = 0.0;
  double tol_ccr = 1e-12;
  double tol_oracle = 1e-3;
  std::string output_dir = ".";

  BeamParams beam() const { return BeamParams(omega0, w0); }
  GridSpec grid() const;
};

/// Parses a configuration document; every key is optional, unknown keys are
/// rejected. `beam` takes either "wavelength" or "omega0" (not both).
/// Throws ParseError.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

struct StateFile {
  BeamState state;
  std::optional<Polarization> polarization;
};

/// {"kind": "coherent" | "single_photon", "polarization": [re, im, re, im],
///  "amplitudes": [{"mu": 1, "n": 0, "m": 0, "re": .., "im": ..}, ...]}
/// Entries without "mu" are spread over both polarisations as (xi a, eta a),
/// which requires "polarization". Repeated labels add. Throws ParseError.
StateFile parse_state(std::string_view text, const ModeSpace& space);
StateFile load_state(const std::filesystem::path& path, const ModeSpace& space);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace qpbeam

#pragma once

// Brute-force matrix elements of the momentum and angular momentum operators:
// every entry is a 2D tensor Gauss-Hermite quadrature of the defining integral
//   P:  Int psi* (z^ - i lambda_bar grad_perp) psi' d^2x
//   J:  Int psi* r x (z^ - i lambda_bar grad_perp) psi' d^2x,  r = (x, y, z)
// with derivatives from the analytic Hermite recurrence. The spin part of Jz
// is the polarisation algebra -i lambda_bar eps_{mu mu' 3} times the numeric
// spatial overlap.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "qpbeam/execution.hpp"
#include "qpbeam/operators.hpp"

namespace qpbeam {

enum class OracleFamily { P, J, both };

struct OracleOptions {
  int nodes = 64;             ///< Gauss-Hermite nodes per axis
  int check_nodes = 48;       ///< second rule used for the error estimate
  double z = 0.0;             ///< evaluation plane [m]
  double flag_threshold = 1e-7;
  Execution execution = Execution::parallel;
};

struct OracleFlag {
  std::string op;
  std::size_t row = 0;
  std::size_t col = 0;
  double error_estimate = 0.0;
};

struct OracleResult {
  /// Px, Py, Pz and/or Jx, Jy, Jz, Sz, Lz, with the build_* unit tags.
  std::vector<QuadraticOperator> operators;
  double max_error_estimate = 0.0;
  std::vector<OracleFlag> flagged;

  const QuadraticOperator& at(std::string_view name) const;
};

/// Throws std::invalid_argument when ncut > 8 or the node counts are < 2.
OracleResult oracle_matrix_elements(const ModeSpace& space, const BeamParams& beam,
                                    OracleFamily family, const OracleOptions& options = {});

/// max |build - oracle| / max |build| over the operators present in both.
double oracle_deviation(const OperatorSet& built, const OracleResult& oracle);

}  // namespace qpbeam

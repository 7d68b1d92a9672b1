#pragma once

namespace qpbeam {

/// Selects between the plain serial loop and the OpenMP kernel. Both use the
/// same fixed reduction order, so results are bit-identical.
enum class Execution { serial, parallel };

}  // namespace qpbeam

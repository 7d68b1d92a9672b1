#pragma once

#include <complex>
#include <numbers>

namespace qpbeam {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr cplx kI{0.0, 1.0};

}  // namespace qpbeam

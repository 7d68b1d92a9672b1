#pragma once

#include <span>
#include <vector>

namespace qpbeam {

/// Gauss-Hermite rule for the weight exp(-s^2).
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  /// weights[i] * exp(nodes[i]^2): integrates f(s) ds directly.
  std::vector<double> scaled_weights;
};

/// Newton iteration on the orthonormal Hermite recurrence; exact for
/// polynomials of degree <= 2n - 1 against exp(-s^2).
GaussHermiteRule gauss_hermite(int n);

/// Composite Simpson weights for `points` equally spaced nodes with spacing h.
/// An even number of points closes with a Simpson 3/8 panel.
std::vector<double> simpson_weights(int points, double h);

/// Equally spaced nodes on [-half_width, half_width].
std::vector<double> uniform_nodes(int points, double half_width);

/// Pairwise (tree) summation in a fixed order.
double pairwise_sum(std::span<const double> values);

}  // namespace qpbeam

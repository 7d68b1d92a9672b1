#include "qpbeam/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "qpbeam/constants.hpp"

namespace qpbeam {

GaussHermiteRule gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite: n must be >= 1");
  constexpr double kEps = 1e-15;
  constexpr int kMaxIter = 200;
  const double pim4 = std::pow(kPi, -0.25);

  GaussHermiteRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  rule.scaled_weights.assign(n, 0.0);

  const int half = (n + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < half; ++i) {
    // Initial guesses for the largest roots first.
    if (i == 0)
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
    else if (i == 1)
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    else if (i == 2)
      z = 1.86 * z - 0.86 * rule.nodes[0];
    else if (i == 3)
      z = 1.91 * z - 0.91 * rule.nodes[1];
    else
      z = 2.0 * z - rule.nodes[i - 2];

    double pp = 0.0;
    int iter = 0;
    for (; iter < kMaxIter; ++iter) {
      double p1 = pim4;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(double(j) / (j + 1)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= kEps * std::max(1.0, std::abs(z))) break;
    }
    if (iter == kMaxIter)
      throw std::runtime_error("gauss_hermite: Newton iteration did not converge");

    // Weight 2/pp^2 and its exp(z^2)-scaled form. The scaled weight is formed
    // from the Hermite function value, which stays O(1) at the outer nodes.
    double f1 = pim4 * std::exp(-0.5 * z * z);
    double f2 = 0.0;
    for (int j = 0; j < n - 1; ++j) {
      const double f3 = f2;
      f2 = f1;
      f1 = z * std::sqrt(2.0 / (j + 1)) * f2 - std::sqrt(double(j) / (j + 1)) * f3;
    }
    const double dphi = std::sqrt(2.0 * n) * f1;  // Hermite-function form of pp

    rule.nodes[i] = z;
    rule.nodes[n - 1 - i] = -z;
    rule.weights[i] = rule.weights[n - 1 - i] = 2.0 / (pp * pp);
    rule.scaled_weights[i] = rule.scaled_weights[n - 1 - i] = 2.0 / (dphi * dphi);
  }
  return rule;
}

std::vector<double> simpson_weights(int points, double h) {
  if (points < 3) throw std::invalid_argument("simpson_weights: need >= 3 points");
  std::vector<double> w(points, 0.0);
  const int intervals = points - 1;
  int simpson_end = intervals;  // number of intervals covered by 1/3 rule
  if (intervals % 2 == 1) simpson_end = intervals - 3;
  for (int i = 0; i < simpson_end; i += 2) {
    w[i] += h / 3.0;
    w[i + 1] += 4.0 * h / 3.0;
    w[i + 2] += h / 3.0;
  }
  if (simpson_end != intervals) {
    const int s = simpson_end;
    w[s] += 3.0 * h / 8.0;
    w[s + 1] += 9.0 * h / 8.0;
    w[s + 2] += 9.0 * h / 8.0;
    w[s + 3] += 3.0 * h / 8.0;
  }
  return w;
}

std::vector<double> uniform_nodes(int points, double half_width) {
  if (points < 2) throw std::invalid_argument("uniform_nodes: need >= 2 points");
  std::vector<double> x(points);
  const double h = 2.0 * half_width / (points - 1);
  for (int i = 0; i < points; ++i) x[i] = -half_width + i * h;
  return x;
}

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kBlock = 8;
  if (values.size() <= kBlock) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t mid = values.size() / 2;
  return pairwise_sum(values.first(mid)) + pairwise_sum(values.subspan(mid));
}

}  // namespace qpbeam

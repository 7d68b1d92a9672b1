#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "qpbeam/constants.hpp"
#include "qpbeam/quadrature.hpp"

using namespace qpbeam;

namespace {

// Int s^k exp(-s^2) ds = Gamma((k+1)/2) for even k, 0 for odd k.
double gaussian_moment(int k) { return k % 2 ? 0.0 : std::tgamma((k + 1) / 2.0); }

}  // namespace

TEST_CASE("gauss-hermite integrates polynomial moments exactly") {
  for (int n : {2, 5, 16, 48, 64}) {
    const GaussHermiteRule r = gauss_hermite(n);
    REQUIRE(r.nodes.size() == std::size_t(n));
    for (int k = 0; k <= std::min(2 * n - 1, 40); ++k) {
      double s = 0.0, scale = 0.0;
      for (int i = 0; i < n; ++i) {
        s += r.weights[i] * std::pow(r.nodes[i], k);
        scale += std::abs(r.weights[i] * std::pow(r.nodes[i], k));
      }
      CHECK(std::abs(s - gaussian_moment(k)) <= 1e-13 * scale);
    }
  }
}

TEST_CASE("gauss-hermite scaled weights integrate plain functions") {
  const GaussHermiteRule r = gauss_hermite(64);
  double s = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i)
    s += r.scaled_weights[i] * std::exp(-r.nodes[i] * r.nodes[i] / 2.0);
  CHECK(s == doctest::Approx(std::sqrt(2.0 * kPi)).epsilon(1e-13));
  // Nodes are symmetric.
  for (std::size_t i = 0; i < r.nodes.size(); ++i)
    CHECK(r.nodes[i] == doctest::Approx(-r.nodes[r.nodes.size() - 1 - i]).epsilon(1e-13));
}

TEST_CASE("simpson weights are exact for cubics, odd and even point counts") {
  for (int points : {5, 6, 7, 10, 33}) {
    const double half = 1.7;
    const auto x = uniform_nodes(points, half);
    const auto w = simpson_weights(points, 2.0 * half / (points - 1));
    CHECK(x.front() == -half);
    CHECK(x.back() == doctest::Approx(half).epsilon(1e-15));
    double s = 0.0;
    for (int i = 0; i < points; ++i) s += w[i] * (x[i] * x[i] * x[i] + 2.0 * x[i] * x[i] - 1.0);
    CHECK(s == doctest::Approx(4.0 * std::pow(half, 3) / 3.0 - 2.0 * half).epsilon(1e-13));
  }
  CHECK_THROWS(simpson_weights(1, 0.1));
}

TEST_CASE("pairwise sum agrees with a long-double sum and is order independent of threads") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(100003);
  for (double& x : v) x = u(rng);
  long double ref = 0.0L;
  for (double x : v) ref += x;
  CHECK(std::abs(pairwise_sum(v) - double(ref)) < 1e-12);
  CHECK(pairwise_sum(v) == pairwise_sum(v));
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
}

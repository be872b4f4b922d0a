#include "hermheat/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hermheat/errors.hpp"

namespace hermheat {

namespace {

// h_M and h_{M-1} at z, both in the e^{-z^2/2}-scaled form.
struct HermitePair {
  double hM;
  double hMm1;
};

HermitePair hermite_pair(int M, double z) {
  double p0 = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * z * z);
  if (M == 0) return {p0, 0.0};
  double p1 = z * std::sqrt(2.0) * p0;
  for (int k = 1; k < M; ++k) {
    const double p2 = z * std::sqrt(2.0 / (k + 1)) * p1 - std::sqrt(double(k) / (k + 1)) * p0;
    p0 = p1;
    p1 = p2;
  }
  return {p1, p0};
}

// Newton polish of a root of h_M. h_M'(z) = sqrt(2M) h_{M-1}(z) - z h_M(z).
double polish_root(int M, double z) {
  for (int it = 0; it < 100; ++it) {
    const auto [hM, hMm1] = hermite_pair(M, z);
    const double deriv = std::sqrt(2.0 * M) * hMm1 - z * hM;
    const double dz = hM / deriv;
    z -= dz;
    if (std::abs(dz) < 1e-15 * (1.0 + std::abs(z))) break;
  }
  return z;
}

}  // namespace

QuadratureRule gauss_hermite_rule(int M) {
  if (M < 1 || M > 512) throw ConfigError("gauss_hermite_rule: M must be in [1, 512]");

  QuadratureRule rule;
  rule.order = M;
  rule.nodes.assign(static_cast<std::size_t>(M), 0.0);
  rule.weights.assign(static_cast<std::size_t>(M), 0.0);
  rule.scaled_weights.assign(static_cast<std::size_t>(M), 0.0);

  // Roots of H_M, largest first, upper half only (symmetry fills the rest).
  // Initial guesses follow the classic gauher ladder over polished roots.
  const int half = (M + 1) / 2;
  std::vector<double> roots;
  roots.reserve(static_cast<std::size_t>(half));
  double z = 0.0;
  for (int i = 0; i < half; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * M + 1.0) - 1.85575 * std::pow(2.0 * M + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      z -= 1.14 * std::pow(double(M), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * roots[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * roots[1];
    } else {
      z = 2.0 * z - roots[static_cast<std::size_t>(i) - 2];
    }
    z = polish_root(M, z);
    roots.push_back(z);

    const int hi = M - 1 - i;  // ascending position of +z
    const int lo = i;          // ascending position of -z
    const auto [hM, hMm1] = hermite_pair(M, z);
    (void)hM;
    const double sw = 1.0 / (M * hMm1 * hMm1);
    rule.nodes[static_cast<std::size_t>(hi)] = z;
    rule.nodes[static_cast<std::size_t>(lo)] = -z;
    rule.scaled_weights[static_cast<std::size_t>(hi)] = sw;
    rule.scaled_weights[static_cast<std::size_t>(lo)] = sw;
    const double w = sw * std::exp(-z * z);
    rule.weights[static_cast<std::size_t>(hi)] = w;
    rule.weights[static_cast<std::size_t>(lo)] = w;
  }
  if (M % 2 == 1) {
    const int mid = M / 2;
    const auto [hM, hMm1] = hermite_pair(M, 0.0);
    (void)hM;
    rule.nodes[static_cast<std::size_t>(mid)] = 0.0;
    const double sw = 1.0 / (M * hMm1 * hMm1);
    rule.scaled_weights[static_cast<std::size_t>(mid)] = sw;
    rule.weights[static_cast<std::size_t>(mid)] = sw;
  }

  // Postconditions: zeroth moment and node ordering.
  double sum = 0.0;
  for (int i = M - 1; i >= 0; --i) sum += rule.weights[static_cast<std::size_t>(i)];
  if (std::abs(sum - std::sqrt(std::numbers::pi)) > 1e-12)
    throw std::runtime_error("gauss_hermite_rule: zeroth moment check failed");
  for (int i = 0; i + 1 < M; ++i)
    if (!(rule.nodes[static_cast<std::size_t>(i)] < rule.nodes[static_cast<std::size_t>(i + 1)]))
      throw std::runtime_error("gauss_hermite_rule: nodes not strictly increasing");

  return rule;
}

QuadratureRule gauss_legendre_rule(int n) {
  if (n < 1 || n > 256) throw ConfigError("gauss_legendre_rule: n must be in [1, 256]");

  QuadratureRule rule;
  rule.order = n;
  rule.nodes.assign(static_cast<std::size_t>(n), 0.0);
  rule.weights.assign(static_cast<std::size_t>(n), 0.0);

  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-angle initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      if (n == 1) {
        p1 = x;
      }
      for (int k = 1; k < n; ++k) {
        const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  rule.scaled_weights = rule.weights;
  return rule;
}

}  // namespace hermheat

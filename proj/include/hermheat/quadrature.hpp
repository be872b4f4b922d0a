#pragma once

#include <vector>

namespace hermheat {

// Nodes and weights of an M-point rule. For Gauss-Hermite the weights belong
// to the weight function e^{-x^2}; scaled_weights carry the factor e^{+x_i^2}
// so that plain integrals  int f(x) dx ~= sum scaled_weights[i] * f(x_i)
// never touch an underflowing exponential (the extreme true weights fall
// below DBL_MIN once M grows past ~380).
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> scaled_weights;
  int order = 0;
};

// M-point Gauss-Hermite rule, exact for polynomials of degree <= 2M-1 against
// e^{-x^2}. Nodes by Newton iteration on the normalized Hermite-function
// recurrence; 1 <= M <= 512.
QuadratureRule gauss_hermite_rule(int M);

// n-point Gauss-Legendre rule on [-1,1] (plain dx weights).
QuadratureRule gauss_legendre_rule(int n);

}  // namespace hermheat

#pragma once

#include <string>
#include <vector>

#include "hermheat/errors.hpp"

namespace hermheat {

// Admissible-exponent bookkeeping for the global small-data decay estimate
//   ||u(t)||_{L^a} <= C t^{-sigma},  sigma = 1/(m-1) - d/(2 beta a).
// case_id records which regime of d/(2 beta) vs p/(p-1) applies; (r, q) is
// one admissible pair for the interpolation chain, with theta_k implied by
// theta_k = (1 - (d/2beta)/q) / (sigma (p k + m - 1)).
struct ExponentPlan {
  double p = 0.0;
  double m = 0.0;
  double a = 0.0;
  int d = 1;
  double beta = 1.0;

  int case_id = 0;             // 1: D > p', 2: D = p', 3: D < p'  (D = d/2beta)
  double a_lower = 0.0;
  double a_upper = 0.0;        // +inf when m >= 2
  double sigma = 0.0;

  bool feasible = false;
  double r = 0.0;              // 1 < r <= a, 1/r = 1/a + 1/q
  double q = 0.0;              // q >= 1
  std::string infeasibility_reason;
};

// Validates the hypotheses p > 1, 0 < beta <= 1, m >= 1 + 2 p beta / d
// (equivalently p <= d(m-1)/(2 beta)), classifies the case, checks the
// a-range (errors name the violated bound), computes sigma and searches for
// one (r, q) pair meeting the interpolation constraints for k = 0..50.
ExponentPlan feasible_exponents(double p, double m, int d, double beta, double a);

}  // namespace hermheat

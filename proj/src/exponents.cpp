#include "hermheat/exponents.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace hermheat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Checks every interpolation constraint for a candidate q at levels
// k = 0..k_max; theta_k is forced by the exact balance
//   1 - D/q = sigma theta_k (p k + m - 1).
bool q_admissible(double q, double p, double m, double a, double D, double sigma, int k_max) {
  if (q < 1.0) return false;
  if (!(D / q < 1.0)) return false;
  if (!(sigma < D / q)) return false;            // sigma (1 + theta_k (...)) < 1
  const double inv_r = 1.0 / a + 1.0 / q;
  if (!(inv_r < 1.0)) return false;              // r > 1
  const double top = 1.0 - D / q;
  if (!(top > 0.0)) return false;
  for (int k = 0; k <= k_max; ++k) {
    const double expo = p * k + m - 1.0;
    const double theta = top / (sigma * expo);
    if (!(theta > 0.0 && theta < 1.0)) return false;
    // 1/(q expo) = theta/a + (1-theta)/rho with rho in [p, inf)
    const double rhs = 1.0 / (q * expo) - theta / a;
    if (rhs < -1e-15) return false;
    const double inv_rho = rhs / (1.0 - theta);
    if (inv_rho > 1.0 / p + 1e-12) return false;
  }
  return true;
}

}  // namespace

ExponentPlan feasible_exponents(double p, double m, int d, double beta, double a) {
  std::ostringstream err;
  if (!(p > 1.0)) throw ConfigError("feasible_exponents: hypothesis p > 1 violated");
  if (!(beta > 0.0 && beta <= 1.0))
    throw ConfigError("feasible_exponents: hypothesis 0 < beta <= 1 violated");
  if (d < 1) throw ConfigError("feasible_exponents: d must be >= 1");
  const double m_floor = 1.0 + 2.0 * p * beta / d;
  if (m < m_floor - 1e-12) {
    err << "feasible_exponents: hypothesis m >= 1 + 2 p beta / d violated (m = " << m
        << " < " << m_floor << ", equivalently p > d(m-1)/(2 beta))";
    throw ConfigError(err.str());
  }

  ExponentPlan plan;
  plan.p = p;
  plan.m = m;
  plan.a = a;
  plan.d = d;
  plan.beta = beta;

  const double D = d / (2.0 * beta);
  const double p_conj = p / (p - 1.0);
  const double two_minus_m_pos = std::max(0.0, 2.0 - m);

  if (D > p_conj) {
    plan.case_id = 1;
    plan.a_lower = D * (m - 1.0);
  } else if (D == p_conj) {
    plan.case_id = 2;
    plan.a_lower = D * (m - 1.0);
  } else {
    plan.case_id = 3;
    if (!(two_minus_m_pos < d * (p - 1.0) / (2.0 * beta * p))) {
      err << "feasible_exponents: case (3) requires (2-m)_+ < d(p-1)/(2 beta p) = "
          << d * (p - 1.0) / (2.0 * beta * p);
      throw ConfigError(err.str());
    }
    plan.a_lower = p_conj * (m - 1.0);
  }
  plan.a_upper = two_minus_m_pos == 0.0 ? kInf : D * (m - 1.0) / two_minus_m_pos;

  if (!(a > plan.a_lower)) {
    err << "feasible_exponents: a = " << a << " violates the case (" << plan.case_id
        << ") lower bound a > " << plan.a_lower;
    throw ConfigError(err.str());
  }
  if (!(a < plan.a_upper)) {
    err << "feasible_exponents: a = " << a << " violates the case (" << plan.case_id
        << ") upper bound a < " << plan.a_upper;
    throw ConfigError(err.str());
  }

  plan.sigma = 1.0 / (m - 1.0) - D / a;

  // One admissible (r, q): scan the open interval forced by the constraints.
  const double q_lo = std::max(1.0, D);
  const double q_hi = std::min(a / (m - 1.0), plan.sigma > 0.0 ? D / plan.sigma : kInf);
  if (q_lo < q_hi) {
    const int steps = 257;
    for (int i = 1; i < steps; ++i) {
      const double q = q_lo + (q_hi - q_lo) * i / steps;
      if (q_admissible(q, p, m, a, D, plan.sigma, 50)) {
        plan.q = q;
        plan.r = 1.0 / (1.0 / a + 1.0 / q);
        plan.feasible = true;
        break;
      }
    }
  }
  if (!plan.feasible) {
    std::ostringstream why;
    why << "no (r, q) pair found in q in (" << q_lo << ", " << q_hi
        << ") meeting the interpolation constraints";
    plan.infeasibility_reason = why.str();
  }
  return plan;
}

}  // namespace hermheat

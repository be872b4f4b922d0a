#pragma once

#include <cstdint>
#include <string>

#include "hermheat/errors.hpp"

namespace hermheat {

// Growth class of the nonlinearity's local-Lipschitz envelope:
//   LipschitzExp:      |f(u)-f(v)| <= C |u-v| (e^{l|u|^p} + e^{l|v|^p})
//   VanishingPowerExp: |f(u)-f(v)| <= C |u-v| (|u|^{m-1} e^{l|u|^p} + ...)
enum class GrowthClass { LipschitzExp, VanishingPowerExp, Unclassified };

// The nonlinearity families handled by the solver:
//   PurePower(m):         f(u) = u |u|^{m-1}
//   ExpFull(p, lambda):   f(u) = u e^{lambda |u|^p}
//   MixedPower(m,q,l):    f(u) = u |u|^{m-1} e^{lambda |u|^q}
//   ExpM1M(q):            f(u) = e^{|u|^q} - 1
//   ExpTaylor:            f(u) = e^u - 1 - u
// Each is multiplied by sign * scale; f(0) = 0 always.
struct NonlinearitySpec {
  enum class Family { PurePower, ExpFull, MixedPower, ExpM1M, ExpTaylor };

  Family family = Family::PurePower;
  double m = 1.0;       // power at the origin (PurePower, MixedPower)
  double p = 2.0;       // exponential power (ExpFull)
  double q = 2.0;       // exponential power (MixedPower, ExpM1M)
  double lambda = 1.0;  // exponential rate
  int sign = 1;
  double scale = 1.0;   // epsilon; 0 switches the equation to its linear part

  GrowthClass growth_class = GrowthClass::Unclassified;

  static NonlinearitySpec pure_power(double m, int sign = 1, double scale = 1.0);
  static NonlinearitySpec exp_full(double p, double lambda, int sign = 1, double scale = 1.0);
  static NonlinearitySpec mixed_power(double m, double q, double lambda, int sign = 1,
                                      double scale = 1.0);
  static NonlinearitySpec exp_m1(double q, int sign = 1, double scale = 1.0);
  static NonlinearitySpec exp_taylor(int sign = 1, double scale = 1.0);

  // Power of |u| as u -> 0; drives the decay exponent sigma.
  double vanishing_order() const;
  std::string family_name() const;
};

// Stores the class flags for a given ambient (orlicz_p, d, beta); see the
// growth classes above. MixedPower lands in VanishingPowerExp only when
// m >= 1 + 2 p beta / d and q <= p.
GrowthClass classify_nonlinearity(NonlinearitySpec& spec, double orlicz_p, int d, double beta);

struct SaturationCounter {
  std::int64_t clamped = 0;
};

// Pointwise f(v). Exponent arguments clamp at 700 and bump the counter;
// saturation is a diagnostic, never an error.
double eval_nonlinearity(const NonlinearitySpec& spec, double v, SaturationCounter* sat = nullptr);

}  // namespace hermheat

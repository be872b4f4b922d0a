#include "hermheat/nonlinearity.hpp"

#include <cmath>

namespace hermheat {

namespace {

constexpr double kExpClamp = 700.0;

double clamped_exp(double a, SaturationCounter* sat) {
  if (a > kExpClamp) {
    if (sat) ++sat->clamped;
    a = kExpClamp;
  }
  return std::exp(a);
}

double clamped_expm1(double a, SaturationCounter* sat) {
  if (a > kExpClamp) {
    if (sat) ++sat->clamped;
    a = kExpClamp;
  }
  return std::expm1(a);
}

void check_common(double m, double q, double lambda) {
  if (m < 1.0) throw ConfigError("NonlinearitySpec: m must be >= 1 (f(0) = 0)");
  if (q <= 0.0) throw ConfigError("NonlinearitySpec: q must be positive");
  if (lambda < 0.0) throw ConfigError("NonlinearitySpec: lambda must be >= 0");
}

}  // namespace

NonlinearitySpec NonlinearitySpec::pure_power(double m, int sign, double scale) {
  check_common(m, 1.0, 0.0);
  NonlinearitySpec s;
  s.family = Family::PurePower;
  s.m = m;
  s.sign = sign;
  s.scale = scale;
  return s;
}

NonlinearitySpec NonlinearitySpec::exp_full(double p, double lambda, int sign, double scale) {
  if (p <= 1.0) throw ConfigError("NonlinearitySpec: exp_full requires p > 1");
  check_common(1.0, p, lambda);
  NonlinearitySpec s;
  s.family = Family::ExpFull;
  s.p = p;
  s.lambda = lambda;
  s.sign = sign;
  s.scale = scale;
  return s;
}

NonlinearitySpec NonlinearitySpec::mixed_power(double m, double q, double lambda, int sign,
                                               double scale) {
  check_common(m, q, lambda);
  NonlinearitySpec s;
  s.family = Family::MixedPower;
  s.m = m;
  s.q = q;
  s.lambda = lambda;
  s.sign = sign;
  s.scale = scale;
  return s;
}

NonlinearitySpec NonlinearitySpec::exp_m1(double q, int sign, double scale) {
  check_common(1.0, q, 1.0);
  NonlinearitySpec s;
  s.family = Family::ExpM1M;
  s.q = q;
  s.sign = sign;
  s.scale = scale;
  return s;
}

NonlinearitySpec NonlinearitySpec::exp_taylor(int sign, double scale) {
  NonlinearitySpec s;
  s.family = Family::ExpTaylor;
  s.sign = sign;
  s.scale = scale;
  return s;
}

double NonlinearitySpec::vanishing_order() const {
  switch (family) {
    case Family::PurePower:
    case Family::MixedPower:
      return m;
    case Family::ExpFull:
      return 1.0;
    case Family::ExpM1M:
      return q;
    case Family::ExpTaylor:
      return 2.0;
  }
  return 1.0;
}

std::string NonlinearitySpec::family_name() const {
  switch (family) {
    case Family::PurePower:
      return "pure_power";
    case Family::ExpFull:
      return "exp_full";
    case Family::MixedPower:
      return "mixed_power";
    case Family::ExpM1M:
      return "exp_m1";
    case Family::ExpTaylor:
      return "exp_taylor";
  }
  return "";
}

GrowthClass classify_nonlinearity(NonlinearitySpec& spec, double orlicz_p, int d, double beta) {
  const double m_floor = 1.0 + 2.0 * orlicz_p * beta / d;
  GrowthClass g = GrowthClass::Unclassified;
  switch (spec.family) {
    case NonlinearitySpec::Family::ExpFull:
      g = GrowthClass::LipschitzExp;
      break;
    case NonlinearitySpec::Family::PurePower:
      if (spec.m >= m_floor) g = GrowthClass::VanishingPowerExp;
      break;
    case NonlinearitySpec::Family::MixedPower:
      if (spec.m >= m_floor && spec.q <= orlicz_p) g = GrowthClass::VanishingPowerExp;
      break;
    case NonlinearitySpec::Family::ExpM1M:
      if (spec.q >= m_floor && spec.q <= orlicz_p) g = GrowthClass::VanishingPowerExp;
      break;
    case NonlinearitySpec::Family::ExpTaylor:
      if (2.0 >= m_floor && 1.0 <= orlicz_p) g = GrowthClass::VanishingPowerExp;
      break;
  }
  spec.growth_class = g;
  return g;
}

double eval_nonlinearity(const NonlinearitySpec& spec, double v, SaturationCounter* sat) {
  const double a = std::abs(v);
  double f = 0.0;
  switch (spec.family) {
    case NonlinearitySpec::Family::PurePower:
      f = spec.m == 1.0 ? v : v * std::pow(a, spec.m - 1.0);
      break;
    case NonlinearitySpec::Family::ExpFull:
      f = v * clamped_exp(spec.lambda * std::pow(a, spec.p), sat);
      break;
    case NonlinearitySpec::Family::MixedPower: {
      const double pw = spec.m == 1.0 ? 1.0 : std::pow(a, spec.m - 1.0);
      f = v * pw * clamped_exp(spec.lambda * std::pow(a, spec.q), sat);
      break;
    }
    case NonlinearitySpec::Family::ExpM1M:
      f = clamped_expm1(std::pow(a, spec.q), sat);
      break;
    case NonlinearitySpec::Family::ExpTaylor:
      // e^u - 1 - u, evaluated without cancellation for small u.
      f = v > kExpClamp ? clamped_exp(v, sat) - 1.0 - v : std::expm1(v) - v;
      break;
  }
  return spec.sign * spec.scale * f;
}

}  // namespace hermheat

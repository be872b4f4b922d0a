#include "hermheat/orlicz.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "hermheat/quadrature.hpp"
#include "hermheat/special_functions.hpp"

namespace hermheat {

namespace {

constexpr double kExpClamp = 700.0;

double clamped_expm1(double a) { return std::expm1(std::min(a, kExpClamp)); }

}  // namespace

namespace {

// phi(0) = 0 and sampled convex monotonicity; the families are convex by
// construction, so this guards parameter plumbing rather than analysis.
void validate_shape(const YoungFunction& phi) {
  if (phi(0.0) != 0.0) throw ConfigError("YoungFunction: phi(0) != 0");
  double prev = 0.0;
  for (double s = 0.25; s <= 8.0; s += 0.25) {
    const double v = phi(s);
    if (!(v >= prev)) throw ConfigError("YoungFunction: not increasing");
    const double mid = phi(s - 0.125);
    if (mid > 0.5 * (prev + v) + 1e-12) throw ConfigError("YoungFunction: not convex");
    prev = v;
  }
}

}  // namespace

YoungFunction YoungFunction::exp_lp(double p) {
  if (p < 1.0) throw ConfigError("YoungFunction::exp_lp: requires p >= 1");
  YoungFunction phi(Kind::ExpLp, p);
  validate_shape(phi);
  return phi;
}

YoungFunction YoungFunction::exp_lp_reduced(double p) {
  if (p <= 1.0) throw ConfigError("YoungFunction::exp_lp_reduced: requires p > 1");
  YoungFunction phi(Kind::ExpLpReduced, p);
  validate_shape(phi);
  return phi;
}

YoungFunction YoungFunction::power(double q) {
  if (q < 1.0) throw ConfigError("YoungFunction::power: requires q >= 1");
  YoungFunction phi(Kind::Power, q);
  validate_shape(phi);
  return phi;
}

double YoungFunction::operator()(double s) const {
  s = std::abs(s);
  switch (kind_) {
    case Kind::ExpLp:
      return clamped_expm1(std::pow(s, param_));
    case Kind::ExpLpReduced: {
      const double sp = std::pow(s, param_);
      return clamped_expm1(sp) - std::min(sp, kExpClamp);
    }
    case Kind::Power:
      return std::pow(s, param_);
  }
  return 0.0;
}

std::string YoungFunction::name() const {
  switch (kind_) {
    case Kind::ExpLp:
      return "exp_lp(p=" + std::to_string(param_) + ")";
    case Kind::ExpLpReduced:
      return "exp_lp_reduced(p=" + std::to_string(param_) + ")";
    case Kind::Power:
      return "power(q=" + std::to_string(param_) + ")";
  }
  return "";
}

NormValue lq_norm(const PhysicalField& f, double q) {
  if (q < 1.0) throw ConfigError("lq_norm: requires q >= 1");
  NormValue nv;
  nv.grid_points = f.values().size();
  nv.half_width = f.grid().half_width();
  if (std::isinf(q)) {
    nv.method = "grid-max";
    nv.value = f.max_abs();
    return nv;
  }
  nv.method = "simpson-grid";
  double s = 0.0;
  for (std::size_t i = 0; i < f.values().size(); ++i)
    s += f.grid().point_weight(i) * std::pow(std::abs(f.values()[i]), q);
  nv.value = std::pow(s, 1.0 / q);
  return nv;
}

double orlicz_modular(const PhysicalField& f, const YoungFunction& phi, double lambda) {
  if (!(lambda > 0.0)) throw ConfigError("orlicz_modular: lambda must be positive");
  double s = 0.0;
  for (std::size_t i = 0; i < f.values().size(); ++i)
    s += f.grid().point_weight(i) * phi(std::abs(f.values()[i]) / lambda);
  return s;
}

NormValue luxemburg_norm(const PhysicalField& f, const YoungFunction& phi,
                         const LuxemburgOptions& opt) {
  NormValue nv;
  nv.method = "bisection";
  nv.grid_points = f.values().size();
  nv.half_width = f.grid().half_width();

  const double fmax = f.max_abs();
  if (fmax == 0.0) {
    nv.value = 0.0;
    return nv;
  }

  // Bracket from lambda_0 = ||f||_inf: there the integrand is at most phi(1)
  // pointwise, a safe region to expand from.
  double hi = fmax;
  double lo = fmax;
  if (orlicz_modular(f, phi, hi) <= 1.0) {
    while (orlicz_modular(f, phi, hi * 0.5) <= 1.0) {
      hi *= 0.5;
      if (hi < fmax * 1e-12) {
        // Modular stays <= 1 down to negligible lambda: treat as zero norm.
        nv.value = 0.0;
        return nv;
      }
    }
    lo = hi * 0.5;
  } else {
    while (orlicz_modular(f, phi, hi) > 1.0) {
      hi *= 2.0;
      if (hi > opt.bracket_cap_factor * fmax)
        throw NormUnbounded("luxemburg_norm: field outside L^phi at this resolution (" +
                            phi.name() + ")");
    }
    lo = hi * 0.5;
  }

  // Objective is strictly decreasing: modular(lo) > 1 >= modular(hi).
  while (hi - lo > opt.rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (orlicz_modular(f, phi, mid) <= 1.0)
      hi = mid;
    else
      lo = mid;
  }
  nv.value = 0.5 * (lo + hi);
  return nv;
}

EmbeddingReport check_embedding_lq_from_explp(const PhysicalField& f, double p, double q) {
  if (!(1.0 <= p && p <= q) || std::isinf(q))
    throw ConfigError("check_embedding_lq_from_explp: requires 1 <= p <= q < inf");
  EmbeddingReport r;
  r.lhs = lq_norm(f, q).value;
  const double explp = luxemburg_norm(f, YoungFunction::exp_lp(p)).value;
  r.rhs = std::pow(gamma_fn(p / q + 1.0), 1.0 / q) * explp;
  r.margin = r.rhs - r.lhs;
  r.pass = r.lhs <= r.rhs + 1e-6;
  return r;
}

EmbeddingReport check_embedding_explp_from_lq_linf(const PhysicalField& f, double p, double q) {
  if (!(1.0 <= q && q <= p))
    throw ConfigError("check_embedding_explp_from_lq_linf: requires 1 <= q <= p");
  EmbeddingReport r;
  r.lhs = luxemburg_norm(f, YoungFunction::exp_lp(p)).value;
  r.rhs = std::pow(std::numbers::ln2, -1.0 / p) *
          (lq_norm(f, q).value + lq_norm(f, std::numeric_limits<double>::infinity()).value);
  r.margin = r.rhs - r.lhs;
  r.pass = r.lhs <= r.rhs + 1e-6;
  return r;
}

ExpMomentReport check_exp_moment_bound(const PhysicalField& u, double lambda, double p, double q,
                                       double K) {
  if (!(lambda > 0.0) || !(p >= 1.0) || !(q >= 1.0) || std::isinf(q))
    throw ConfigError("check_exp_moment_bound: requires lambda > 0 and 1 <= p, q < inf");
  ExpMomentReport r;
  r.lambda_q_Kp = lambda * q * std::pow(K, p);
  if (r.lambda_q_Kp > 1.0 + 1e-12)
    throw ConfigError("check_exp_moment_bound: hypothesis lambda*q*K^p <= 1 violated");
  const double explp = luxemburg_norm(u, YoungFunction::exp_lp(p)).value;
  if (explp > K + 1e-12)
    throw ConfigError("check_exp_moment_bound: hypothesis ||u||_{exp L^p} <= K violated");

  // ||e^{lambda |u|^p} - 1||_{L^q}
  double s = 0.0;
  for (std::size_t i = 0; i < u.values().size(); ++i) {
    const double g = clamped_expm1(lambda * std::pow(std::abs(u.values()[i]), p));
    s += u.grid().point_weight(i) * std::pow(g, q);
  }
  r.lhs = std::pow(s, 1.0 / q);
  r.rhs = std::pow(r.lambda_q_Kp, 1.0 / q);
  r.pass = r.lhs <= r.rhs + 1e-6;
  return r;
}

EquivalenceReport equivalence_e32(const PhysicalField& g, double p) {
  if (!(p > 1.0)) throw ConfigError("equivalence_e32: requires p > 1");
  if (g.max_abs() == 0.0) throw ConfigError("equivalence_e32: zero field");
  EquivalenceReport r;
  r.lp = lq_norm(g, p).value;
  r.lphi = luxemburg_norm(g, YoungFunction::exp_lp_reduced(p)).value;
  r.explp = luxemburg_norm(g, YoungFunction::exp_lp(p)).value;
  r.ratio = (r.lp + r.lphi) / r.explp;
  return r;
}

namespace {

// log(z + 1) where z = exp(la) may overflow.
double log1p_of_exp(double la) { return la > kExpClamp ? la : std::log1p(std::exp(la)); }

double envelope_value(EnvelopeKind kind, double t, double p, double r, int d, double beta) {
  const double pref = std::pow(std::numbers::ln2, -1.0 / p);
  const double lt = std::log(t);
  const double branch1 = std::exp(-d / (2.0 * beta * r) * lt) + 1.0;
  double branch2;
  if (kind == EnvelopeKind::Kappa) {
    const double la = -d / (2.0 * beta) * lt;  // log of t^{-d/(2 beta)}
    branch2 = std::exp(la) * std::pow(log1p_of_exp(la), -1.0 / p);
  } else {
    const double la = -p / (p - 1.0) * lt;
    branch2 = std::exp(la) * std::pow(log1p_of_exp(la), -1.0 / (2.0 * p));
  }
  return pref * std::min(branch1, branch2);
}

void validate_envelope_params(EnvelopeKind kind, double p, double r, int d, double beta) {
  if (!(p > 1.0)) throw ConfigError("envelope: requires p > 1");
  if (!(beta > 0.0)) throw ConfigError("envelope: requires beta > 0");
  if (kind == EnvelopeKind::Kappa) {
    if (!(d > 2.0 * beta * p / (p - 1.0)))
      throw ConfigError("kappa_envelope: requires d > 2*beta*p/(p-1)");
    if (!(r > d / (2.0 * beta))) throw ConfigError("kappa_envelope: requires r > d/(2*beta)");
  } else {
    if (std::abs(d / (2.0 * beta) - p / (p - 1.0)) > 1e-12)
      throw ConfigError("zeta_envelope: requires d/(2*beta) = p/(p-1)");
    if (!(r > d / (2.0 * beta))) throw ConfigError("zeta_envelope: requires r > d/(2*beta)");
  }
}

// Dyadic-panel integral of the envelope over (0, infty). Panels
// [2^{-j-1}, 2^{-j}] cover (0,1]; the substitution u = 1/t maps [1,infty)
// onto (0,1] with integrand env(1/u)/u^2.
double envelope_integral(EnvelopeKind kind, double p, double r, int d, double beta, int depth,
                         int gl_order) {
  const QuadratureRule gl = gauss_legendre_rule(gl_order);
  double total = 0.0;
  for (int j = 0; j < depth; ++j) {
    const double b = std::pow(2.0, -j);
    const double a = 0.5 * b;
    const double c = 0.5 * (a + b), hw = 0.5 * (b - a);
    double s_low = 0.0, s_high = 0.0;
    for (int i = 0; i < gl.order; ++i) {
      const double x = c + hw * gl.nodes[static_cast<std::size_t>(i)];
      const double w = hw * gl.weights[static_cast<std::size_t>(i)];
      s_low += w * envelope_value(kind, x, p, r, d, beta);
      s_high += w * envelope_value(kind, 1.0 / x, p, r, d, beta) / (x * x);
    }
    total += s_low + s_high;
  }
  return total;
}

}  // namespace

double kappa_envelope(double t, double p, double r, int d, double beta) {
  validate_envelope_params(EnvelopeKind::Kappa, p, r, d, beta);
  if (!(t > 0.0)) throw ConfigError("kappa_envelope: requires t > 0");
  return envelope_value(EnvelopeKind::Kappa, t, p, r, d, beta);
}

double zeta_envelope(double t, double p, double r, int d, double beta) {
  validate_envelope_params(EnvelopeKind::Zeta, p, r, d, beta);
  if (!(t > 0.0)) throw ConfigError("zeta_envelope: requires t > 0");
  return envelope_value(EnvelopeKind::Zeta, t, p, r, d, beta);
}

EnvelopeIntegral integrate_envelope(EnvelopeKind kind, double p, double r, int d, double beta) {
  validate_envelope_params(kind, p, r, d, beta);
  EnvelopeIntegral out;
  out.value = envelope_integral(kind, p, r, d, beta, 80, 16);
  out.refined_value = envelope_integral(kind, p, r, d, beta, 120, 24);
  out.rel_change = std::abs(out.refined_value - out.value) / std::abs(out.refined_value);
  return out;
}

}  // namespace hermheat

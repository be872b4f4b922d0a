#pragma once

#include <string>

#include "hermheat/field.hpp"

namespace hermheat {

// The three Young-function families used here:
//   ExpLp:        phi(s) = e^{s^p} - 1,        p >= 1
//   ExpLpReduced: phi(s) = e^{s^p} - 1 - s^p,  p > 1
//   Power:        phi(s) = s^q,                q >= 1
class YoungFunction {
 public:
  enum class Kind { ExpLp, ExpLpReduced, Power };

  static YoungFunction exp_lp(double p);
  static YoungFunction exp_lp_reduced(double p);
  static YoungFunction power(double q);

  Kind kind() const { return kind_; }
  double parameter() const { return param_; }
  double operator()(double s) const;
  std::string name() const;

 private:
  YoungFunction(Kind k, double p) : kind_(k), param_(p) {}
  Kind kind_;
  double param_;
};

struct NormValue {
  double value = 0.0;
  std::string method;          // "simpson-grid", "grid-max", "bisection"
  std::size_t grid_points = 0;
  double half_width = 0.0;
};

// L^q norm over the field's uniform box by composite Simpson; q = inf gives
// the grid maximum (a lower bound on the true sup).
NormValue lq_norm(const PhysicalField& f, double q);

struct LuxemburgOptions {
  double rel_tol = 1e-8;
  double bracket_cap_factor = 1e12;  // NormUnbounded beyond cap * ||f||_inf
};

// inf{ lambda > 0 : int phi(|f|/lambda) dx <= 1 } by bracket doubling then
// bisection; the objective is strictly decreasing in lambda.
NormValue luxemburg_norm(const PhysicalField& f, const YoungFunction& phi,
                         const LuxemburgOptions& opt = {});

// Modular  int phi(|f|/lambda) dx  (exposed for monotonicity checks).
double orlicz_modular(const PhysicalField& f, const YoungFunction& phi, double lambda);

struct EmbeddingReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
  bool pass = false;
};

// ||f||_{L^q} <= Gamma(p/q + 1)^{1/q} ||f||_{exp L^p},  1 <= p <= q < inf.
EmbeddingReport check_embedding_lq_from_explp(const PhysicalField& f, double p, double q);

// ||f||_{exp L^p} <= (log 2)^{-1/p} (||f||_{L^q} + ||f||_{L^inf}),  1 <= q <= p.
EmbeddingReport check_embedding_explp_from_lq_linf(const PhysicalField& f, double p, double q);

struct ExpMomentReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double lambda_q_Kp = 0.0;
  bool pass = false;
};

// ||e^{lambda |u|^p} - 1||_{L^q} <= (lambda q K^p)^{1/q} under
// lambda q K^p <= 1 and ||u||_{exp L^p} <= K (both validated).
ExpMomentReport check_exp_moment_bound(const PhysicalField& u, double lambda, double p, double q,
                                       double K);

struct EquivalenceReport {
  double lp = 0.0;
  double lphi = 0.0;
  double explp = 0.0;
  double ratio = 0.0;  // (lp + lphi) / explp
};

// Two-sided comparison behind C1 ||g||_{exp L^p} <= ||g||_{L^p} + ||g||_{L^phi}
// with phi(s) = e^{s^p} - 1 - s^p; the ratio is reported for band aggregation.
EquivalenceReport equivalence_e32(const PhysicalField& g, double p);

// Envelope kappa(t) (C = 1):
//   (log 2)^{-1/p} min{ t^{-d/(2 beta r)} + 1,
//                       t^{-d/(2 beta)} (log(t^{-d/(2 beta)} + 1))^{-1/p} }
// valid for p > 1, d > 2 beta p/(p-1), r > d/(2 beta).
double kappa_envelope(double t, double p, double r, int d, double beta);

// Envelope zeta(t) (C = 1):
//   (log 2)^{-1/p} min{ t^{-d/(2 beta r)} + 1,
//                       t^{-p/(p-1)} (log(t^{-p/(p-1)} + 1))^{-1/(2p)} }
// valid for p > 1, r > d/(2 beta) = p/(p-1).
double zeta_envelope(double t, double p, double r, int d, double beta);

struct EnvelopeIntegral {
  double value = 0.0;
  double refined_value = 0.0;
  double rel_change = 0.0;
};

enum class EnvelopeKind { Kappa, Zeta };

// int_0^infty of the envelope by dyadic Gauss-Legendre panels on (0,1] and the
// u = 1/t substitution on [1,infty); refined_value doubles the resolution.
EnvelopeIntegral integrate_envelope(EnvelopeKind kind, double p, double r, int d, double beta);

}  // namespace hermheat

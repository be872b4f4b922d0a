#pragma once

#include <optional>
#include <vector>

#include "hermheat/field.hpp"
#include "hermheat/nonlinearity.hpp"
#include "hermheat/propagator.hpp"

namespace hermheat {

struct SolverConfig {
  int d = 1;
  double beta = 1.0;       // 0 < beta <= 1
  int N = 40;              // spectral degree (total-degree truncation)
  double dt = 1e-3;
  double t_end = 1.0;
  double picard_tol = 1e-10;
  int picard_max = 50;
  double blowup_norm_cap = 1e8;
  NonlinearitySpec nonlinearity;

  // Diagnostics policy.
  double orlicz_p = 2.0;                    // exp L^p norm recorded per sample
  std::vector<double> diag_lebesgue = {2.0};
  int sample_stride = 1;
  std::vector<double> forced_sample_times;
  bool diag_norms = true;
  UniformGridSpec norm_grid;
  int oversample_factor = 4;                // nonlinear grid order M' = factor * N

  void validate() const;
};

struct StepDiagnostics {
  int picard_iters = 0;
  double residual = 0.0;
  double linf_grid = 0.0;         // max |u| on the oversampled grid
  std::int64_t saturation = 0;    // clamped exponent evaluations
  double tail_fraction = 0.0;     // energy above level N-2
};

struct SampleDiagnostics {
  StepDiagnostics step;
  std::vector<std::pair<double, double>> lebesgue;  // (a, ||u||_{L^a})
  double exp_lp = 0.0;                              // ||u||_{exp L^p}
};

struct TrajectorySample {
  double t = 0.0;
  SpectralField field;
  SampleDiagnostics diag;
};

enum class RunVerdict { Completed, BlowupSuspected, UnderResolved };

std::string to_string(RunVerdict v);

struct Trajectory {
  SolverConfig cfg;
  std::vector<TrajectorySample> samples;
  RunVerdict verdict = RunVerdict::Completed;
  std::string verdict_detail;
};

// One-step Duhamel fixed point (exponential trapezoid)
//   u' = E u + dt [ E F(u) + F(u') ] / 2,   E = e^{-dt H^beta},
// solved by Picard iteration from the predictor E(u + dt F(u)). dt = 0 is the
// identity. Throws NonConvergent / UnderResolved.
std::pair<SpectralField, StepDiagnostics> step(const SpectralField& u, const SolverConfig& cfg,
                                               std::optional<double> dt_override = std::nullopt);

// Time-steps until t_end, Picard failure, or the grid-L^inf cap; failures end
// the run with a verdict, never an exception. A run that completed while
// clamping exponents is downgraded to UnderResolved.
Trajectory run(const SpectralField& u0, const SolverConfig& cfg);

struct DecayFit {
  double sup_stat = 0.0;           // sup over window of t^sigma ||u||_{L^a}
  double sigma = 0.0;
  double slope = 0.0;              // OLS slope of log ||u||_{L^a} vs log t
  double slope_ci_halfwidth = 0.0; // ~95% half-width
  int n_points = 0;
};

// Requires >= 10 trajectory samples inside [t1, t2] and a nonlinearity with
// vanishing order m > 1.
DecayFit decay_fit(const Trajectory& traj, double a, double t1, double t2);

}  // namespace hermheat

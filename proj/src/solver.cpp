#include "hermheat/solver.hpp"

#include <cmath>
#include <set>

#include "hermheat/orlicz.hpp"
#include "hermheat/quadrature.hpp"
#include "hermheat/transforms.hpp"

namespace hermheat {

void SolverConfig::validate() const {
  if (d != 1 && d != 2) throw ConfigError("SolverConfig: d must be 1 or 2");
  if (!(beta > 0.0 && beta <= 1.0)) throw ConfigError("SolverConfig: requires 0 < beta <= 1");
  if (N < 1 || N > 128) throw ConfigError("SolverConfig: N must be in [1, 128]");
  if (!(dt > 0.0)) throw ConfigError("SolverConfig: dt must be positive");
  if (!(t_end >= dt)) throw ConfigError("SolverConfig: t_end must be >= dt");
  if (!(picard_tol > 0.0)) throw ConfigError("SolverConfig: picard_tol must be positive");
  if (picard_max < 1) throw ConfigError("SolverConfig: picard_max must be >= 1");
  if (!(blowup_norm_cap > 0.0)) throw ConfigError("SolverConfig: blowup_norm_cap must be positive");
  if (oversample_factor * N < 2 * N + 1)
    throw ConfigError("SolverConfig: oversample grid below the 2N+1 aliasing guard");
}

std::string to_string(RunVerdict v) {
  switch (v) {
    case RunVerdict::Completed:
      return "completed";
    case RunVerdict::BlowupSuspected:
      return "blowup_suspected";
    case RunVerdict::UnderResolved:
      return "under_resolved";
  }
  return "";
}

namespace {

// Shared per-run state: the oversampled nonlinearity grid and the semigroup
// multipliers for the configured dt.
struct Workspace {
  TensorGrid grid;
  std::vector<double> semigroup;  // per level, for dt
  double dt = 0.0;

  Workspace(const SolverConfig& cfg, double dt_in)
      : grid(TensorGrid::gauss_hermite(cfg.d, gauss_hermite_rule(cfg.oversample_factor * cfg.N))),
        dt(dt_in) {
    semigroup.resize(static_cast<std::size_t>(cfg.N) + 1);
    for (int k = 0; k <= cfg.N; ++k)
      semigroup[static_cast<std::size_t>(k)] =
          std::exp(-dt * eigenvalue_pow(k, cfg.d, cfg.beta));
  }

  void apply_E(SpectralField& u) const {
    auto& c = u.mutable_coeffs();
    for (std::size_t i = 0; i < c.size(); ++i)
      c[i] *= semigroup[static_cast<std::size_t>(u.level_of_flat(i))];
  }
};

struct FResult {
  SpectralField coeffs;
  double linf = 0.0;
  std::int64_t saturation = 0;
};

// F: synthesize on the oversampled grid, apply the nonlinearity pointwise,
// transform back to degree N. Non-finite products abort the step as a
// blow-up suspect before they can poison the transforms.
FResult apply_nonlinearity(const SpectralField& u, const SolverConfig& cfg, const Workspace& ws) {
  FResult res{SpectralField(cfg.d, cfg.N)};
  PhysicalField phys = inverse_transform(u, ws.grid);
  SaturationCounter sat;
  auto& vals = phys.mutable_values();
  double linf = 0.0;
  for (double& v : vals) {
    linf = std::max(linf, std::abs(v));
    v = eval_nonlinearity(cfg.nonlinearity, v, &sat);
    if (!std::isfinite(v))
      throw NonConvergent("nonlinearity produced non-finite values (blow-up suspect)");
  }
  res.linf = linf;
  res.saturation = sat.clamped;
  res.coeffs = forward_transform(phys, cfg.N);
  return res;
}

std::pair<SpectralField, StepDiagnostics> step_impl(const SpectralField& u,
                                                    const SolverConfig& cfg, const Workspace& ws) {
  StepDiagnostics diag;
  const double dt = ws.dt;
  if (dt == 0.0) return {u, diag};

  FResult f0 = apply_nonlinearity(u, cfg, ws);
  diag.saturation += f0.saturation;
  diag.linf_grid = f0.linf;

  SpectralField eu = u;
  ws.apply_E(eu);
  SpectralField ef = f0.coeffs;
  ws.apply_E(ef);

  // Predictor E(u + dt F(u)); corrector fixed point of the trapezoid rule.
  SpectralField v = eu;
  v.add_scaled(ef, dt);

  SpectralField base = eu;
  base.add_scaled(ef, 0.5 * dt);

  bool converged = false;
  for (int it = 1; it <= cfg.picard_max; ++it) {
    FResult fv = apply_nonlinearity(v, cfg, ws);
    diag.saturation += fv.saturation;
    diag.linf_grid = fv.linf;
    SpectralField v_next = base;
    v_next.add_scaled(fv.coeffs, 0.5 * dt);

    double res2 = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double dvi = v_next.coeffs()[i] - v.coeffs()[i];
      res2 += dvi * dvi;
    }
    diag.residual = std::sqrt(res2);
    diag.picard_iters = it;
    v = std::move(v_next);
    if (!(diag.residual >= cfg.picard_tol)) {  // also catches NaN residuals as failure below
      converged = std::isfinite(diag.residual);
      break;
    }
  }
  if (!converged)
    throw NonConvergent("Picard iteration did not reach tolerance " +
                        std::to_string(cfg.picard_tol) + " in " + std::to_string(cfg.picard_max) +
                        " iterations");

  diag.tail_fraction = v.tail_energy_fraction(cfg.N - 1);
  // The norm cap outranks the resolution check: an exploding field is a
  // blow-up suspect, not a truncation complaint.
  if (diag.linf_grid <= cfg.blowup_norm_cap && diag.tail_fraction > 0.10)
    throw UnderResolved("spectral tail above level N-2 carries " +
                        std::to_string(diag.tail_fraction * 100.0) + "% of the energy");
  return {std::move(v), diag};
}

SampleDiagnostics sample_diagnostics(const SpectralField& u, const SolverConfig& cfg,
                                     const StepDiagnostics& sd) {
  SampleDiagnostics diag;
  diag.step = sd;
  if (!cfg.diag_norms) return diag;
  const TensorGrid grid = cfg.norm_grid.make(cfg.d);
  const PhysicalField phys = inverse_transform(u, grid);
  for (double a : cfg.diag_lebesgue) diag.lebesgue.emplace_back(a, lq_norm(phys, a).value);
  if (phys.max_abs() == 0.0)
    diag.exp_lp = 0.0;
  else
    diag.exp_lp = luxemburg_norm(phys, YoungFunction::exp_lp(cfg.orlicz_p)).value;
  return diag;
}

}  // namespace

std::pair<SpectralField, StepDiagnostics> step(const SpectralField& u, const SolverConfig& cfg,
                                               std::optional<double> dt_override) {
  cfg.validate();
  if (u.dim() != cfg.d || u.max_degree() != cfg.N)
    throw ConfigError("step: field shape does not match config");
  const double dt = dt_override.value_or(cfg.dt);
  if (dt < 0.0) throw ConfigError("step: dt must be >= 0");
  Workspace ws(cfg, dt);
  return step_impl(u, cfg, ws);
}

Trajectory run(const SpectralField& u0, const SolverConfig& cfg) {
  cfg.validate();
  if (u0.dim() != cfg.d || u0.max_degree() != cfg.N)
    throw ConfigError("run: field shape does not match config");

  Trajectory traj;
  traj.cfg = cfg;
  Workspace ws(cfg, cfg.dt);

  const long n_steps = std::lround(cfg.t_end / cfg.dt);
  std::set<long> forced;
  for (double s : cfg.forced_sample_times) {
    const long n = std::lround(s / cfg.dt);
    if (n >= 1 && n <= n_steps) forced.insert(n);
  }

  SpectralField u = u0;
  traj.samples.push_back({0.0, u, sample_diagnostics(u, cfg, StepDiagnostics{})});

  std::int64_t total_saturation = 0;
  for (long n = 1; n <= n_steps; ++n) {
    StepDiagnostics sd;
    try {
      auto [next, d] = step_impl(u, cfg, ws);
      u = std::move(next);
      sd = d;
    } catch (const NonConvergent& e) {
      traj.verdict = RunVerdict::BlowupSuspected;
      traj.verdict_detail = e.what();
      return traj;
    } catch (const UnderResolved& e) {
      traj.verdict = RunVerdict::UnderResolved;
      traj.verdict_detail = e.what();
      return traj;
    }
    total_saturation += sd.saturation;
    const double t = static_cast<double>(n) * cfg.dt;
    if (sd.linf_grid > cfg.blowup_norm_cap) {
      traj.verdict = RunVerdict::BlowupSuspected;
      traj.verdict_detail = "grid L^inf exceeded blowup_norm_cap at t = " + std::to_string(t);
      traj.samples.push_back({t, u, sample_diagnostics(u, cfg, sd)});
      return traj;
    }
    if (n % cfg.sample_stride == 0 || n == n_steps || forced.count(n))
      traj.samples.push_back({t, u, sample_diagnostics(u, cfg, sd)});
  }
  if (total_saturation > 0) {
    traj.verdict = RunVerdict::UnderResolved;
    traj.verdict_detail = "run completed but clamped " + std::to_string(total_saturation) +
                          " exponent evaluations (saturated)";
  }
  return traj;
}

DecayFit decay_fit(const Trajectory& traj, double a, double t1, double t2) {
  const double m = traj.cfg.nonlinearity.vanishing_order();
  if (!(m > 1.0)) throw ConfigError("decay_fit: requires vanishing order m > 1");
  DecayFit fit;
  fit.sigma = 1.0 / (m - 1.0) - traj.cfg.d / (2.0 * traj.cfg.beta * a);

  const TensorGrid grid = traj.cfg.norm_grid.make(traj.cfg.d);
  std::vector<double> lt, ln;
  for (const auto& s : traj.samples) {
    if (s.t < t1 || s.t > t2 || s.t <= 0.0) continue;
    const double na = lq_norm(inverse_transform(s.field, grid), a).value;
    fit.sup_stat = std::max(fit.sup_stat, std::pow(s.t, fit.sigma) * na);
    if (na > 0.0) {
      lt.push_back(std::log(s.t));
      ln.push_back(std::log(na));
    }
    ++fit.n_points;
  }
  if (fit.n_points < 10)
    throw ConfigError("decay_fit: fewer than 10 trajectory samples in the window");

  if (lt.size() >= 2) {
    const std::size_t n = lt.size();
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sx += lt[i];
      sy += ln[i];
    }
    const double mx = sx / static_cast<double>(n), my = sy / static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sxx += (lt[i] - mx) * (lt[i] - mx);
      sxy += (lt[i] - mx) * (ln[i] - my);
    }
    fit.slope = sxy / sxx;
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = ln[i] - my - fit.slope * (lt[i] - mx);
      sse += r * r;
    }
    if (n > 2) {
      const double se = std::sqrt(sse / (static_cast<double>(n) - 2.0) / sxx);
      fit.slope_ci_halfwidth = 1.96 * se;
    }
  }
  return fit;
}

}  // namespace hermheat

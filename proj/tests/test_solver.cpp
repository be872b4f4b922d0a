#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hermheat/exponents.hpp"
#include "hermheat/field_library.hpp"
#include "hermheat/orlicz.hpp"
#include "hermheat/solver.hpp"
#include "hermheat/transforms.hpp"

using namespace hermheat;

namespace {

SolverConfig small_cfg(int d, int N) {
  SolverConfig cfg;
  cfg.d = d;
  cfg.N = N;
  cfg.diag_norms = false;
  return cfg;
}

}  // namespace

TEST_CASE("nonlinearity closed forms and f(0) = 0") {
  for (const auto& spec :
       {NonlinearitySpec::pure_power(3.0), NonlinearitySpec::exp_full(2.0, 1.0),
        NonlinearitySpec::mixed_power(3.0, 2.0, 1.0), NonlinearitySpec::exp_m1(2.0),
        NonlinearitySpec::exp_taylor()}) {
    CHECK(eval_nonlinearity(spec, 0.0) == 0.0);
  }
  CHECK(eval_nonlinearity(NonlinearitySpec::exp_taylor(), 1.0) ==
        doctest::Approx(std::exp(1.0) - 2.0).epsilon(1e-14));
  CHECK(eval_nonlinearity(NonlinearitySpec::mixed_power(3.0, 2.0, 1.0), 0.5) ==
        doctest::Approx(0.5 * 0.25 * std::exp(0.25)).epsilon(1e-14));
  CHECK(eval_nonlinearity(NonlinearitySpec::pure_power(1.0), 0.37) == 0.37);
  CHECK(eval_nonlinearity(NonlinearitySpec::pure_power(3.0, -1, 2.0), 2.0) == -16.0);

  SaturationCounter sat;
  eval_nonlinearity(NonlinearitySpec::exp_full(2.0, 1.0), 30.0, &sat);
  CHECK(sat.clamped == 1);
  CHECK(std::isfinite(eval_nonlinearity(NonlinearitySpec::exp_full(2.0, 1.0), 30.0)));
}

TEST_CASE("odd symmetry where the family is odd") {
  for (const auto& spec :
       {NonlinearitySpec::pure_power(2.0), NonlinearitySpec::exp_full(2.0, 0.7),
        NonlinearitySpec::mixed_power(2.5, 2.0, 0.3)}) {
    for (double v : {0.1, 0.9, 2.3}) {
      CHECK(eval_nonlinearity(spec, -v) == doctest::Approx(-eval_nonlinearity(spec, v)));
    }
  }
}

TEST_CASE("growth classification") {
  auto full = NonlinearitySpec::exp_full(2.0, 1.0);
  CHECK(classify_nonlinearity(full, 2.0, 2, 1.0) == GrowthClass::LipschitzExp);

  auto mixed = NonlinearitySpec::mixed_power(3.0, 2.0, 1.0);
  CHECK(classify_nonlinearity(mixed, 2.0, 2, 1.0) == GrowthClass::VanishingPowerExp);
  CHECK(mixed.growth_class == GrowthClass::VanishingPowerExp);

  // q > p breaks the class; so does m below 1 + 2 p beta / d.
  auto bad_q = NonlinearitySpec::mixed_power(3.0, 3.0, 1.0);
  CHECK(classify_nonlinearity(bad_q, 2.0, 2, 1.0) == GrowthClass::Unclassified);
  auto bad_m = NonlinearitySpec::mixed_power(2.0, 2.0, 1.0);
  CHECK(classify_nonlinearity(bad_m, 2.0, 2, 1.0) == GrowthClass::Unclassified);
}

TEST_CASE("local Lipschitz envelope of the growth classes") {
  // |f(u)-f(v)| <= C |u-v| (envelope(u) + envelope(v)) on [-2, 2], with C
  // from the family derivative bound at |w| = 2.
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uv(-2.0, 2.0);

  const auto full = NonlinearitySpec::exp_full(2.0, 1.0);
  const double c_full = 1.0 + 1.0 * 2.0 * 4.0;  // 1 + lambda p 2^p
  const auto mixed = NonlinearitySpec::mixed_power(3.0, 2.0, 0.5);
  const double c_mixed = 3.0 + 0.5 * 2.0 * 4.0;  // m + lambda q 2^q

  for (int rep = 0; rep < 500; ++rep) {
    const double u = uv(rng), v = uv(rng);
    {
      const double lhs = std::abs(eval_nonlinearity(full, u) - eval_nonlinearity(full, v));
      const double env = std::exp(u * u) + std::exp(v * v);
      CHECK(lhs <= c_full * std::abs(u - v) * env + 1e-12);
    }
    {
      const double lhs = std::abs(eval_nonlinearity(mixed, u) - eval_nonlinearity(mixed, v));
      const double env = u * u * std::exp(0.5 * u * u) + v * v * std::exp(0.5 * v * v);
      CHECK(lhs <= c_mixed * std::abs(u - v) * env + 1e-12);
    }
  }
}

TEST_CASE("feasible exponents: the d=2 benchmark scenario") {
  const auto plan = feasible_exponents(2.0, 3.0, 2, 1.0, 5.0);
  CHECK(plan.case_id == 3);
  CHECK(plan.a_lower == doctest::Approx(4.0));
  CHECK(std::isinf(plan.a_upper));
  CHECK(plan.sigma == doctest::Approx(0.3));
  CHECK(plan.feasible);
  CHECK(plan.q >= 1.0);
  CHECK(plan.r > 1.0);
  CHECK(plan.r <= plan.a);
  CHECK(1.0 / plan.r == doctest::Approx(1.0 / plan.a + 1.0 / plan.q).epsilon(1e-12));

  CHECK_THROWS_WITH_AS(feasible_exponents(2.0, 3.0, 2, 1.0, 3.0),
                       doctest::Contains("lower bound a > 4"), ConfigError);
  CHECK_THROWS_WITH_AS(feasible_exponents(1.0, 3.0, 2, 1.0, 5.0), doctest::Contains("p > 1"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(feasible_exponents(2.0, 2.5, 2, 1.0, 5.0),
                       doctest::Contains("m >= 1 + 2 p beta / d"), ConfigError);
  CHECK_THROWS_AS(feasible_exponents(2.0, 3.0, 2, 1.5, 5.0), ConfigError);
}

TEST_CASE("feasible exponents across the case map") {
  // Case 1: D > p/(p-1): d = 5, beta = 0.5, p = 6 -> D = 5, p' = 1.2.
  const auto c1 = feasible_exponents(6.0, 3.0, 5, 0.5, 11.0);
  CHECK(c1.case_id == 1);
  CHECK(c1.a_lower == doctest::Approx(10.0));
  CHECK(c1.feasible);

  // m < 2 gives a finite upper bound: d = 5, beta = 0.5, p = 2, m = 1.5.
  const auto c2 = feasible_exponents(2.0, 1.5, 5, 0.5, 3.0);
  CHECK(c2.case_id == 1);
  CHECK(std::isfinite(c2.a_upper));
  CHECK(c2.a_upper == doctest::Approx(5.0 * 0.5 / 0.5));
  CHECK(c2.feasible);

  // m >= 2: upper bound infinite.
  CHECK(std::isinf(feasible_exponents(2.0, 3.0, 2, 1.0, 8.0).a_upper));
}

TEST_CASE("step: dt = 0 is the identity and the linear limit is exact") {
  auto cfg = small_cfg(1, 10);
  cfg.nonlinearity = NonlinearitySpec::mixed_power(3.0, 2.0, 1.0, 1, 0.0);  // scale 0
  const auto u0 = random_bandlimited(1, 10, 3);

  const auto [uid, d0] = step(u0, cfg, 0.0);
  for (std::size_t i = 0; i < u0.size(); ++i) CHECK(uid.coeffs()[i] == u0.coeffs()[i]);
  CHECK(d0.picard_iters == 0);

  const auto [u1, d1] = step(u0, cfg, 0.25);
  const auto ref = apply_semigroup(u0, 0.25, FractionalOrder(cfg.beta));
  for (std::size_t i = 0; i < u0.size(); ++i)
    CHECK(std::abs(u1.coeffs()[i] - ref.coeffs()[i]) < 1e-15);
  CHECK(d1.picard_iters == 1);
  CHECK(d1.residual == 0.0);
}

TEST_CASE("run with scale 0 reproduces the semigroup to 1e-12") {
  auto cfg = small_cfg(1, 8);
  cfg.nonlinearity = NonlinearitySpec::exp_full(2.0, 1.0, 1, 0.0);
  cfg.dt = 1e-3;
  cfg.t_end = 1.0;
  cfg.sample_stride = 100;
  const auto u0 = random_bandlimited(1, 8, 5);
  const auto traj = run(u0, cfg);
  CHECK(traj.verdict == RunVerdict::Completed);
  for (const auto& s : traj.samples) {
    const auto ref = apply_semigroup(u0, s.t, FractionalOrder(cfg.beta));
    for (std::size_t i = 0; i < u0.size(); ++i)
      CHECK(std::abs(s.field.coeffs()[i] - ref.coeffs()[i]) <= 1e-12);
  }
}

TEST_CASE("single-mode linear oracle at dt = 1e-3") {
  // f(u) = eps u keeps Phi_alpha pure; the scalar ODE gives
  // c(t) = e^{(eps - (2k+d)^beta) t}.
  struct Case {
    int level;
    double beta;
    double eps;
  };
  for (const auto& tc : {Case{0, 1.0, 0.3}, Case{2, 0.5, 0.2}}) {
    auto cfg = small_cfg(1, 8);
    cfg.beta = tc.beta;
    cfg.nonlinearity = NonlinearitySpec::pure_power(1.0, 1, tc.eps);
    cfg.dt = 1e-3;
    cfg.t_end = 1.0;
    cfg.sample_stride = 250;
    const auto u0 = SpectralField::unit(1, 8, MultiIndex::of(tc.level));
    const auto traj = run(u0, cfg);
    CHECK(traj.verdict == RunVerdict::Completed);
    const double mu = eigenvalue_pow(tc.level, 1, tc.beta);
    for (const auto& s : traj.samples) {
      const double want = std::exp((tc.eps - mu) * s.t);
      CHECK(std::abs(s.field.coeff(MultiIndex::of(tc.level)) - want) < 1e-6);
      for (int k = 0; k <= 8; ++k)
        if (k != tc.level) CHECK(std::abs(s.field.coeffs()[static_cast<std::size_t>(k)]) < 1e-9);
    }
  }
}

TEST_CASE("step order is about two in the refinement study") {
  auto cfg = small_cfg(1, 12);
  cfg.nonlinearity = NonlinearitySpec::exp_taylor(1, 1.0);
  cfg.t_end = 0.5;
  cfg.sample_stride = 1 << 20;  // terminal sample only

  SpectralField u0(1, 12);
  u0.set_coeff(MultiIndex::of(0), 0.5);
  u0.set_coeff(MultiIndex::of(1), 0.25);

  auto terminal = [&](double dt) {
    auto c = cfg;
    c.dt = dt;
    const auto traj = run(u0, c);
    REQUIRE(traj.verdict == RunVerdict::Completed);
    return traj.samples.back().field;
  };

  const auto ref = terminal(0.0025);  // dt/8 reference
  auto err = [&](const SpectralField& u) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double d = u.coeffs()[i] - ref.coeffs()[i];
      s += d * d;
    }
    return std::sqrt(s);
  };
  const double e1 = err(terminal(0.02));
  const double e2 = err(terminal(0.01));
  CHECK(e1 / e2 >= 3.0);
  CHECK(std::log2(e1 / e2) >= 1.8);
}

TEST_CASE("large data is flagged as suspected blow-up at both resolutions") {
  for (int N : {12, 20}) {
    auto cfg = small_cfg(1, N);
    cfg.nonlinearity = NonlinearitySpec::exp_full(2.0, 1.0);
    cfg.dt = 1e-3;
    cfg.t_end = 1.0;
    SpectralField u0(1, N);
    u0.set_coeff(MultiIndex::of(0), 50.0);
    const auto traj = run(u0, cfg);
    CHECK(traj.verdict == RunVerdict::BlowupSuspected);
    CHECK(traj.samples.back().t < 1.0);
  }
}

TEST_CASE("top-level data trips the resolution guard") {
  auto cfg = small_cfg(1, 10);
  cfg.nonlinearity = NonlinearitySpec::pure_power(1.0, 1, 0.0);
  cfg.dt = 0.01;
  cfg.t_end = 0.1;
  const auto u0 = SpectralField::unit(1, 10, MultiIndex::of(10));
  const auto traj = run(u0, cfg);
  CHECK(traj.verdict == RunVerdict::UnderResolved);
}

TEST_CASE("a saturated completed run is downgraded to under-resolved") {
  auto cfg = small_cfg(1, 8);
  // Scale so small that the clamped exponential (~1e304) still leaves a
  // negligible F: the run completes but must self-report the clamping.
  cfg.nonlinearity = NonlinearitySpec::exp_full(2.0, 1.0, 1, 1e-315);
  cfg.dt = 1e-3;
  cfg.t_end = 5e-3;
  SpectralField u0(1, 8);
  u0.set_coeff(MultiIndex::of(0), 40.0);  // grid max ~ 30, exponent ~ 900
  const auto traj = run(u0, cfg);
  CHECK(traj.verdict == RunVerdict::UnderResolved);
  CHECK(traj.verdict_detail.find("saturated") != std::string::npos);
}

TEST_CASE("small-data run completes with decaying norms and passes decay_fit") {
  SolverConfig cfg;
  cfg.d = 2;
  cfg.N = 12;
  cfg.beta = 1.0;
  cfg.nonlinearity = NonlinearitySpec::mixed_power(3.0, 2.0, 1.0);
  cfg.dt = 0.01;
  cfg.t_end = 1.5;
  cfg.orlicz_p = 2.0;
  cfg.diag_lebesgue = {5.0};
  cfg.sample_stride = 5;
  cfg.norm_grid.points_2d = 161;

  SpectralField shape(2, 12);
  shape.set_coeff(MultiIndex::of(0, 0), 1.0);
  shape.set_coeff(MultiIndex::of(1, 0), 0.2);
  shape.set_coeff(MultiIndex::of(1, 1), 0.1);
  const auto grid = cfg.norm_grid.make(2);
  const double n0 = luxemburg_norm(inverse_transform(shape, grid),
                                   YoungFunction::exp_lp(cfg.orlicz_p))
                        .value;
  shape *= 1e-3 / n0;

  const auto traj = run(shape, cfg);
  REQUIRE(traj.verdict == RunVerdict::Completed);

  double prev_t = -1.0;
  for (const auto& s : traj.samples) {
    CHECK(s.t > prev_t);
    prev_t = s.t;
  }
  // Monotone decay after the first few samples.
  for (std::size_t i = 3; i < traj.samples.size(); ++i)
    CHECK(traj.samples[i].diag.exp_lp < traj.samples[i - 1].diag.exp_lp);

  const auto fit = decay_fit(traj, 5.0, 0.3, 1.5);
  CHECK(fit.sigma == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(std::isfinite(fit.sup_stat));
  CHECK(fit.sup_stat > 0.0);
  CHECK(fit.n_points >= 10);

  CHECK_THROWS_AS(decay_fit(traj, 5.0, 1.49, 1.5), ConfigError);  // too few samples
}

TEST_CASE("decay_fit control: scale 0 single mode has a closed form") {
  SolverConfig cfg;
  cfg.d = 2;
  cfg.N = 8;
  cfg.nonlinearity = NonlinearitySpec::mixed_power(3.0, 2.0, 1.0, 1, 0.0);
  cfg.dt = 0.01;
  cfg.t_end = 2.0;
  cfg.sample_stride = 4;
  cfg.diag_norms = false;
  cfg.norm_grid.points_2d = 161;

  SpectralField u0(2, 8);
  u0.set_coeff(MultiIndex::of(0, 0), 0.7);
  const auto traj = run(u0, cfg);
  REQUIRE(traj.verdict == RunVerdict::Completed);

  const double a = 5.0;
  const auto fit = decay_fit(traj, a, 0.2, 2.0);
  const double phi0_la =
      lq_norm(inverse_transform(SpectralField::unit(2, 8, MultiIndex::of(0, 0)),
                                cfg.norm_grid.make(2)),
              a)
          .value;
  double want = 0.0;
  for (const auto& s : traj.samples)
    if (s.t >= 0.2 && s.t <= 2.0)
      want = std::max(want, std::pow(s.t, fit.sigma) * 0.7 * std::exp(-2.0 * s.t) * phi0_la);
  CHECK(fit.sup_stat == doctest::Approx(want).epsilon(1e-9));

  // Zero trajectory: sup stat is zero.
  SpectralField z(2, 8);
  auto traj0 = run(z, cfg);
  const auto fit0 = decay_fit(traj0, a, 0.2, 2.0);
  CHECK(fit0.sup_stat == 0.0);
}

TEST_CASE("config validation catches the documented violations") {
  SolverConfig cfg;
  cfg.beta = 1.5;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.beta = 1.0;
  cfg.dt = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.dt = 1e-3;
  cfg.N = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.N = 500;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

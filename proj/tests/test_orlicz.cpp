#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hermheat/field_library.hpp"
#include "hermheat/orlicz.hpp"
#include "hermheat/special_functions.hpp"
#include "hermheat/transforms.hpp"

using namespace hermheat;

namespace {

const UniformGridSpec kGrid{};

PhysicalField phi0_field() {
  return sample_on_grid(kGrid.make(1), ground_state_fn(1));
}

PhysicalField scaled(const PhysicalField& f, double c) {
  auto vals = f.values();
  for (double& v : vals) v *= c;
  return PhysicalField(f.grid(), std::move(vals));
}

// Independent Gamma oracle: int_0^inf s^{x-1} e^{-s} ds with s = v^2, Simpson.
double gamma_integral_oracle(double x) {
  const int n = 200001;
  const double V = 9.0;  // e^{-81} tail
  const double h = V / (n - 1);
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = i * h;
    const double w = (i == 0 || i == n - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    s += w * 2.0 * std::pow(v, 2.0 * x - 1.0) * std::exp(-v * v);
  }
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("lq_norm closed forms on the ground state") {
  const auto f = phi0_field();
  CHECK(std::abs(lq_norm(f, 2.0).value - 1.0) < 1e-8);
  const double l1 = std::pow(std::numbers::pi, -0.25) * std::sqrt(2.0 * std::numbers::pi);
  CHECK(lq_norm(f, 1.0).value == doctest::Approx(l1).epsilon(1e-8));
  CHECK(lq_norm(f, std::numeric_limits<double>::infinity()).value ==
        doctest::Approx(std::pow(std::numbers::pi, -0.25)).epsilon(1e-9));

  const auto zero = PhysicalField(kGrid.make(1), std::vector<double>(kGrid.make(1).size(), 0.0));
  CHECK(lq_norm(zero, 3.0).value == 0.0);
  CHECK_THROWS_AS(lq_norm(f, 0.7), ConfigError);
}

TEST_CASE("luxemburg norm of the mollified indicator matches the sharp closed form") {
  for (double p : {1.0, 2.0, 3.0}) {
    for (auto [c, m] : {std::pair{1.0, 1.0}, std::pair{2.0, 0.5}}) {
      const auto f = sample_on_grid(kGrid.make(1), mollified_indicator_fn(c, m, 0.005));
      const double want = c / std::pow(std::log1p(1.0 / m), 1.0 / p);
      const double got = luxemburg_norm(f, YoungFunction::exp_lp(p)).value;
      CHECK(got == doctest::Approx(want).epsilon(0.01));
    }
  }
  // Mollification refinement drives the norm toward the sharp limit.
  const double want = 1.0 / std::sqrt(std::numbers::ln2);
  double prev_err = 1e9;
  for (double w : {0.05, 0.02, 0.005}) {
    const auto f = sample_on_grid(kGrid.make(1), mollified_indicator_fn(1.0, 1.0, w));
    const double err = std::abs(luxemburg_norm(f, YoungFunction::exp_lp(2.0)).value - want);
    CHECK(err < prev_err + 1e-12);
    prev_err = err;
  }
  CHECK(prev_err < 0.01 * want);
}

TEST_CASE("luxemburg norm is homogeneous and zero on zero") {
  const auto grid = kGrid.make(1);
  const auto zero = PhysicalField(grid, std::vector<double>(grid.size(), 0.0));
  CHECK(luxemburg_norm(zero, YoungFunction::exp_lp(2.0)).value == 0.0);

  const auto f = phi0_field();
  const double base = luxemburg_norm(f, YoungFunction::exp_lp(2.0)).value;
  CHECK(luxemburg_norm(scaled(f, 2.5), YoungFunction::exp_lp(2.0)).value ==
        doctest::Approx(2.5 * base).epsilon(1e-7));

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uc(0.1, 10.0);
  const auto fam = norm_test_family(1, kGrid, 17);
  for (const auto& phi : {YoungFunction::exp_lp(2.0), YoungFunction::exp_lp_reduced(1.5),
                          YoungFunction::power(3.0)}) {
    for (int rep = 0; rep < 3; ++rep) {
      const double c = uc(rng);
      const auto& g = fam[static_cast<std::size_t>(rep)].field;
      const double b = luxemburg_norm(g, phi).value;
      const double s = luxemburg_norm(scaled(g, c), phi).value;
      CHECK(s == doctest::Approx(c * b).epsilon(1e-7));
    }
  }
}

TEST_CASE("power-kind Luxemburg norm is the Lebesgue norm") {
  const auto fam = norm_test_family(1, kGrid, 23);
  for (double q : {1.0, 2.0, 3.5}) {
    for (const auto& nf : fam) {
      const double a = luxemburg_norm(nf.field, YoungFunction::power(q)).value;
      const double b = lq_norm(nf.field, q).value;
      CHECK(a == doctest::Approx(b).epsilon(1e-7));
    }
  }
}

TEST_CASE("luxemburg objective is strictly decreasing in lambda") {
  const auto fam = norm_test_family(1, kGrid, 31);
  for (const auto& nf : fam) {
    if (nf.field.max_abs() == 0.0) continue;
    const auto phi = YoungFunction::exp_lp(2.0);
    const double l0 = 0.5 * nf.field.max_abs();
    double prev = orlicz_modular(nf.field, phi, l0);
    for (double lam = l0 * 1.5; lam < l0 * 20.0; lam *= 1.5) {
      const double cur = orlicz_modular(nf.field, phi, lam);
      CHECK(cur < prev);
      prev = cur;
    }
  }
}

TEST_CASE("embedding L^q from exp L^p") {
  const auto f = phi0_field();
  // p = q: the constant is Gamma(2) = 1.
  const auto r0 = check_embedding_lq_from_explp(f, 2.0, 2.0);
  CHECK(r0.rhs == doctest::Approx(luxemburg_norm(f, YoungFunction::exp_lp(2.0)).value));
  CHECK(r0.pass);

  const auto r1 = check_embedding_lq_from_explp(f, 2.0, 4.0);
  CHECK(r1.pass);
  CHECK(r1.margin > 0.0);

  const auto grid = kGrid.make(1);
  const auto zero = PhysicalField(grid, std::vector<double>(grid.size(), 0.0));
  const auto rz = check_embedding_lq_from_explp(zero, 2.0, 4.0);
  CHECK(rz.lhs == 0.0);
  CHECK(rz.rhs == 0.0);
  CHECK(rz.pass);

  CHECK_THROWS_AS(check_embedding_lq_from_explp(f, 3.0, 2.0), ConfigError);
}

TEST_CASE("embedding exp L^p from L^q + L^inf") {
  const auto f = phi0_field();
  const auto r = check_embedding_explp_from_lq_linf(f, 2.0, 2.0);
  CHECK(r.pass);
  CHECK(r.margin > 0.0);

  const auto ind = sample_on_grid(kGrid.make(1), mollified_indicator_fn(1.0, 1.0, 0.005));
  const auto ri = check_embedding_explp_from_lq_linf(ind, 2.0, 1.0);
  CHECK(ri.lhs == doctest::Approx(1.0 / std::sqrt(std::numbers::ln2)).epsilon(0.01));
  CHECK(ri.rhs ==
        doctest::Approx((lq_norm(ind, 1).value + 1.0) / std::sqrt(std::numbers::ln2)).epsilon(0.01));
  CHECK(ri.pass);

  CHECK_THROWS_AS(check_embedding_explp_from_lq_linf(f, 2.0, 3.0), ConfigError);
}

TEST_CASE("embedding chain across the whole family") {
  const auto fam = norm_test_family(1, kGrid, 47);
  for (const auto& nf : fam) {
    for (auto [p, q] : {std::pair{1.0, 2.0}, std::pair{2.0, 4.0}, std::pair{2.0, 2.0}}) {
      CHECK(check_embedding_lq_from_explp(nf.field, p, q).pass);
    }
    for (auto [p, q] : {std::pair{2.0, 1.0}, std::pair{2.0, 2.0}, std::pair{3.0, 1.5}}) {
      CHECK(check_embedding_explp_from_lq_linf(nf.field, p, q).pass);
    }
  }
}

TEST_CASE("exponential moment bound of the product estimate") {
  const auto u = scaled(phi0_field(), 0.3);
  const double K = luxemburg_norm(u, YoungFunction::exp_lp(2.0)).value;
  const auto r = check_exp_moment_bound(u, 0.5, 2.0, 2.0, K);
  CHECK(r.pass);
  CHECK(r.lhs < r.rhs);

  // Boundary case lambda q K^p = 1: the bound is exactly 1.
  const double lam = 1.0 / (2.0 * K * K);
  const auto rb = check_exp_moment_bound(u, lam, 2.0, 2.0, K);
  CHECK(rb.rhs == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rb.pass);

  const auto grid = kGrid.make(1);
  const auto zero = PhysicalField(grid, std::vector<double>(grid.size(), 0.0));
  const auto rz = check_exp_moment_bound(zero, 0.5, 2.0, 2.0, 1.0);
  CHECK(rz.lhs == 0.0);
  CHECK(rz.pass);

  CHECK_THROWS_AS(check_exp_moment_bound(u, 10.0, 2.0, 2.0, K), ConfigError);
  CHECK_THROWS_AS(check_exp_moment_bound(u, 0.5, 2.0, 2.0, K * 0.5), ConfigError);
}

TEST_CASE("exp moment bound on random admissible draws") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> uamp(0.1, 1.2), ufrac(0.05, 1.0), uq(1.0, 4.0);
  const auto base = phi0_field();
  for (int draw = 0; draw < 20; ++draw) {
    const double p = 1.0 + (draw % 3);
    const auto u = scaled(base, uamp(rng));
    const double K = luxemburg_norm(u, YoungFunction::exp_lp(p)).value;
    const double q = uq(rng);
    const double lam = ufrac(rng) / (q * std::pow(K, p));
    const auto r = check_exp_moment_bound(u, lam, p, q, K);
    CHECK(r.pass);
  }
}

TEST_CASE("E3.2 equivalence ratio is homogeneous and banded") {
  const auto f = phi0_field();
  const auto r1 = equivalence_e32(f, 2.0);
  const auto r3 = equivalence_e32(scaled(f, 3.0), 2.0);
  CHECK(r1.ratio == doctest::Approx(r3.ratio).epsilon(1e-6));

  // Stability under grid refinement.
  const auto fr = sample_on_grid(kGrid.refined().make(1), ground_state_fn(1));
  CHECK(equivalence_e32(fr, 2.0).ratio == doctest::Approx(r1.ratio).epsilon(0.02));

  const auto fam = norm_test_family(1, kGrid, 47);
  double lo = 1e300, hi = 0.0;
  for (const auto& nf : fam) {
    const double ratio = equivalence_e32(nf.field, 2.0).ratio;
    CHECK(std::isfinite(ratio));
    CHECK(ratio > 0.0);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  CHECK(hi / lo <= 10.0);

  const auto grid = kGrid.make(1);
  const auto zero = PhysicalField(grid, std::vector<double>(grid.size(), 0.0));
  CHECK_THROWS_AS(equivalence_e32(zero, 2.0), ConfigError);
}

TEST_CASE("norms are stable under grid refinement") {
  const auto coarse = norm_test_family(1, kGrid, 51);
  const auto fine = norm_test_family(1, kGrid.refined(), 51);
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    for (double q : {1.0, 2.0, std::numeric_limits<double>::infinity()}) {
      const double a = lq_norm(coarse[i].field, q).value;
      const double b = lq_norm(fine[i].field, q).value;
      CHECK(std::abs(a - b) <= 0.005 * std::max(a, b));
    }
    const double la = luxemburg_norm(coarse[i].field, YoungFunction::exp_lp(2.0)).value;
    const double lb = luxemburg_norm(fine[i].field, YoungFunction::exp_lp(2.0)).value;
    CHECK(std::abs(la - lb) <= 0.005 * std::max(la, lb));
  }
}

TEST_CASE("kappa envelope: regime checks and integrability") {
  CHECK_THROWS_WITH_AS(kappa_envelope(1.0, 2.0, 3.0, 3, 1.0), doctest::Contains("d > 2*beta*p"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(kappa_envelope(1.0, 2.0, 2.0, 5, 1.0), doctest::Contains("r > d/(2*beta)"),
                       ConfigError);

  // Large t: the t^{-d/(2 beta)} branch wins and decays to zero.
  CHECK(kappa_envelope(1e6, 2.0, 3.0, 5, 1.0) < 1e-6);

  const auto integral = integrate_envelope(EnvelopeKind::Kappa, 2.0, 3.0, 5, 1.0);
  CHECK(std::isfinite(integral.value));
  CHECK(integral.value > 0.0);
  CHECK(integral.rel_change < 0.01);
}

TEST_CASE("zeta envelope: regime checks and integrability") {
  CHECK_THROWS_WITH_AS(zeta_envelope(1.0, 2.0, 3.0, 5, 1.0), doctest::Contains("d/(2*beta)"),
                       ConfigError);
  const auto integral = integrate_envelope(EnvelopeKind::Zeta, 2.0, 3.0, 4, 1.0);
  CHECK(std::isfinite(integral.value));
  CHECK(integral.value > 0.0);
  CHECK(integral.rel_change < 0.01);
}

TEST_CASE("gamma function against factorials and the defining integral") {
  CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(gamma_fn(2.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-13));
  CHECK(gamma_fn(2.5) ==
        doctest::Approx(1.5 * 0.5 * std::sqrt(std::numbers::pi)).epsilon(1e-13));
  for (double x : {0.5, 1.0, 1.7, 2.5, 3.7}) {
    CHECK(gamma_fn(x) == doctest::Approx(gamma_integral_oracle(x)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(gamma_fn(0.0), ConfigError);
  CHECK_THROWS_AS(gamma_fn(-1.0), ConfigError);
}

TEST_CASE("young function parameter validation") {
  CHECK_THROWS_AS(YoungFunction::exp_lp(0.5), ConfigError);
  CHECK_THROWS_AS(YoungFunction::exp_lp_reduced(1.0), ConfigError);
  CHECK_THROWS_AS(YoungFunction::power(0.0), ConfigError);
  CHECK(YoungFunction::exp_lp(2.0)(0.0) == 0.0);
  CHECK(YoungFunction::exp_lp_reduced(2.0)(0.0) == 0.0);
}

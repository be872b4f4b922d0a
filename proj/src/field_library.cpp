#include "hermheat/field_library.hpp"

#include <cmath>
#include <random>

#include "hermheat/transforms.hpp"

namespace hermheat {

ScalarFn ground_state_fn(int dim) {
  return [dim](std::span<const double> x) {
    double v = 1.0;
    for (int j = 0; j < dim; ++j) v *= hermite_function(0, x[static_cast<std::size_t>(j)]);
    return v;
  };
}

ScalarFn bump_fn(int dim, double radius, double amplitude) {
  if (!(radius > 0.0)) throw ConfigError("bump_fn: radius must be positive");
  return [dim, radius, amplitude](std::span<const double> x) {
    double r2 = 0.0;
    for (int j = 0; j < dim; ++j) r2 += x[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
    const double s = r2 / (radius * radius);
    if (s >= 1.0) return 0.0;
    return amplitude * std::exp(1.0 - 1.0 / (1.0 - s));
  };
}

ScalarFn mollified_indicator_fn(double height, double measure, double edge_width) {
  if (!(measure > 0.0) || !(edge_width > 0.0) || !(2.0 * edge_width < measure))
    throw ConfigError("mollified_indicator_fn: needs 0 < 2*edge_width < measure");
  const double half = 0.5 * measure;
  return [height, half, edge_width](std::span<const double> x) {
    const double u = (half - std::abs(x[0])) / edge_width;
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return height;
    return height * u * u * (3.0 - 2.0 * u);
  };
}

ScalarFn log_singular_fn(int dim, double alpha, double p) {
  if (!(p > 1.0)) throw ConfigError("log_singular_fn: requires p > 1");
  if (alpha < 0.0) throw ConfigError("log_singular_fn: requires alpha >= 0");
  return [dim, alpha, p](std::span<const double> x) {
    double r2 = 0.0;
    for (int j = 0; j < dim; ++j) r2 += x[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
    const double r = std::sqrt(r2);
    if (r >= 1.0 || alpha == 0.0) return 0.0;
    return alpha * std::pow(-std::log(r), 1.0 / p);
  };
}

SpectralField random_bandlimited(int dim, int max_degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  SpectralField f(dim, max_degree);
  auto& c = f.mutable_coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const int k = f.level_of_flat(i);
    c[i] = gauss(rng) * std::pow(1.0 + k, -2.0) * std::exp(-k / 8.0);
  }
  const double n = f.l2_norm();
  if (n > 0.0) f *= 1.0 / n;
  return f;
}

std::vector<NamedSpectralField> spectral_test_family(int dim, int max_degree,
                                                     std::uint64_t seed) {
  std::vector<NamedSpectralField> fam;
  const auto alpha_of_level = [dim](int k) {
    return dim == 1 ? MultiIndex::of(k) : MultiIndex::of(k / 2, k - k / 2);
  };

  fam.push_back({"phi0", SpectralField::unit(dim, max_degree, alpha_of_level(0))});
  fam.push_back({"phi_level2", SpectralField::unit(dim, max_degree, alpha_of_level(2))});

  SpectralField even_mix(dim, max_degree);
  even_mix.set_coeff(alpha_of_level(0), 1.0);
  even_mix.set_coeff(alpha_of_level(2), 0.3);
  even_mix.set_coeff(alpha_of_level(4), 0.1);
  fam.push_back({"even_mix", even_mix});

  SpectralField odd_mix(dim, max_degree);
  odd_mix.set_coeff(alpha_of_level(1), 1.0);
  odd_mix.set_coeff(alpha_of_level(3), 0.2);
  fam.push_back({"odd_mix", odd_mix});

  SpectralField tilt(dim, max_degree);
  tilt.set_coeff(alpha_of_level(0), 1.0);
  tilt.set_coeff(alpha_of_level(1), 0.5);
  fam.push_back({"tilted", tilt});

  for (int i = 0; i < 3; ++i)
    fam.push_back({"random" + std::to_string(i),
                   random_bandlimited(dim, max_degree, seed + static_cast<std::uint64_t>(i))});
  return fam;
}

std::vector<NamedPhysicalField> norm_test_family(int dim, const UniformGridSpec& spec,
                                                 std::uint64_t seed) {
  const TensorGrid grid = spec.make(dim);
  std::vector<NamedPhysicalField> fam;

  auto add = [&](const std::string& name, const ScalarFn& fn, bool smooth_compact) {
    PhysicalField f = sample_on_grid(grid, fn);
    f.set_smooth_compact_tag(smooth_compact);
    fam.push_back({name, std::move(f)});
  };

  add("phi0", ground_state_fn(dim), false);
  add("bump", bump_fn(dim), true);

  add("even_mix",
      [dim](std::span<const double> x) {
        double v = hermite_function(0, x[0]) + 0.5 * hermite_function(2, x[0]);
        if (dim == 2) v *= hermite_function(0, x[1]);
        return v;
      },
      false);

  add("offset_gaussian",
      [dim](std::span<const double> x) {
        double r2 = (x[0] - 1.0) * (x[0] - 1.0);
        if (dim == 2) r2 += x[1] * x[1];
        return std::exp(-0.5 * r2);
      },
      false);

  add("wide_gaussian",
      [dim](std::span<const double> x) {
        double r2 = 0.0;
        for (int j = 0; j < dim; ++j)
          r2 += x[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
        return std::exp(-r2 / 8.0);
      },
      false);

  if (dim == 1) {
    add("indicator", mollified_indicator_fn(1.0, 1.0, 0.005), true);
  } else {
    add("radial_bump", bump_fn(dim, 2.5, 0.8), true);
  }

  const SpectralField rnd1 = random_bandlimited(dim, dim == 1 ? 24 : 12, seed + 11);
  add("random_bandlimited",
      [&rnd1](std::span<const double> x) { return evaluate_spectral(rnd1, x); }, false);

  add("scaled_phi0",
      [dim](std::span<const double> x) {
        double v = 2.5;
        for (int j = 0; j < dim; ++j) v *= hermite_function(0, x[static_cast<std::size_t>(j)]);
        return v;
      },
      false);

  return fam;
}

}  // namespace hermheat

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hermheat/field.hpp"

namespace hermheat {

// Closed-form data used by experiments and tests.

// Ground state Phi_0 (d-fold product of h_0).
ScalarFn ground_state_fn(int dim);

// Smooth compactly supported bump: amplitude * exp(1 - 1/(1 - (|x|/radius)^2))
// inside |x| < radius, 0 outside.
ScalarFn bump_fn(int dim, double radius = 4.0, double amplitude = 1.0);

// d = 1 plateau of the given height on measure `measure`, smoothed over
// `edge_width` at each edge with a cubic smoothstep; support has measure
// `measure`, the flat plateau measure - 2 * edge_width.
ScalarFn mollified_indicator_fn(double height, double measure, double edge_width);

// Singular datum alpha * (-log |x|)^{1/p} on |x| < 1, 0 outside.
ScalarFn log_singular_fn(int dim, double alpha, double p);

// Bandlimited field with seeded Gaussian coefficients damped by
// (1 + k)^{-2} e^{-k/8}, normalized to unit l^2.
SpectralField random_bandlimited(int dim, int max_degree, std::uint64_t seed);

struct NamedSpectralField {
  std::string name;
  SpectralField field;
};

// The 8-field spectral family driving propagator/smoothing suites.
std::vector<NamedSpectralField> spectral_test_family(int dim, int max_degree, std::uint64_t seed);

struct NamedPhysicalField {
  std::string name;
  PhysicalField field;
};

// The 8-field family for norm/embedding audits, sampled on the uniform box.
std::vector<NamedPhysicalField> norm_test_family(int dim, const UniformGridSpec& spec,
                                                 std::uint64_t seed);

}  // namespace hermheat

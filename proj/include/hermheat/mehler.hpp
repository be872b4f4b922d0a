#pragma once

#include <limits>
#include <vector>

#include "hermheat/field.hpp"
#include "hermheat/propagator.hpp"

namespace hermheat {

// Quadrature policy for the Mehler integral. The kernel is a Gaussian in y of
// t-dependent width, so panels live on |y - x| <= window_factor * max(1,
// sqrt(sinh 2t)) per axis and are halved until successive values agree.
struct MehlerOptions {
  double window_factor = 12.0;
  double panel_tol = 1e-9;
  int gl_order = 16;
  int initial_panels = 8;
  int max_refine = 9;
  // Clip the integration window to |y_j| <= support_half_width when the
  // integrand is known to vanish outside (compact data).
  double support_half_width = std::numeric_limits<double>::infinity();
};

// e^{-tH} f at one point by adaptive tensor Gauss-Legendre quadrature against
// the closed-form kernel
//   K_t(x,y) = (2 pi sinh 2t)^{-d/2}
//              exp(-tanh(t) (|x|^2+|y|^2)/2 - |x-y|^2 / (2 sinh 2t)).
// Defined for beta = 1 only; t in [1e-4, inf). Below 1e-4 the spectral path
// must be used instead.
double mehler_apply_point(const ScalarFn& f, double t, std::span<const double> x,
                          const MehlerOptions& opt = {});

PhysicalField mehler_apply(const ScalarFn& f, double t, const TensorGrid& out_grid,
                           const MehlerOptions& opt = {});

// Convenience overload for bandlimited data given spectrally; beta must be 1.
PhysicalField mehler_apply(const SpectralField& f, double t, const TensorGrid& out_grid,
                           FractionalOrder beta = FractionalOrder(1.0),
                           const MehlerOptions& opt = {});

// Startup self-check pinning the kernel normalization C_d = (2 pi)^{-d/2}:
// verifies mehler(Phi_0, t) = e^{-t d} Phi_0 at a few points. Throws on
// failure; called once from the CLI and the test suites.
void mehler_normalization_self_check(int dim);

}  // namespace hermheat

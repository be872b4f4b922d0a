#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "hermheat/field.hpp"
#include "hermheat/transforms.hpp"

namespace hermheat {

// Fractional power of the Hermite operator H = -Delta + |x|^2. Any beta > 0
// defines the spectral semigroup; the solver additionally restricts to
// 0 < beta <= 1 at config level.
struct FractionalOrder {
  double beta = 1.0;
  explicit FractionalOrder(double b) : beta(b) {
    if (!(beta > 0.0)) throw ConfigError("FractionalOrder: beta must be positive");
  }
};

// Eigenvalue (2k + d)^beta of H^beta on eigenlevel k.
inline double eigenvalue_pow(int level, int dim, double beta) {
  return std::pow(2.0 * level + dim, beta);
}

// e^{-t H^beta}: scales every coefficient on eigenlevel k by
// e^{-t (2k+d)^beta}. Identity at t = 0; t < 0 is an error.
SpectralField apply_semigroup(const SpectralField& c, double t, FractionalOrder beta);

// Whether the two-branch smoothing estimate is asserted for (p, q, beta).
// All pairs are admissible when 0 < beta <= 1; for beta > 1 only the pairs
// listed in the source theorem are accepted.
bool smoothing_admissible(double p, double q, double beta);

// sigma_beta = (d / (2 beta)) |1/p - 1/q| with 1/inf = 0.
double sigma_beta(int dim, double beta, double p, double q);

struct SmoothingReport {
  double p = 0.0;
  double q = 0.0;
  double beta = 1.0;
  int dim = 1;
  double sigma = 0.0;
  double norm_p = 0.0;                 // ||g||_{L^p}
  std::vector<double> t_grid;
  std::vector<double> ratios;          // branch ratio at each t
  bool consistent() const;             // sigma recomputes exactly
};

// Ratios ||e^{-tH^beta} g||_{L^q} / (t^{-sigma} ||g||_{L^p}) for t <= 1 and
// ||.||_{L^q} / (e^{-t d^beta} ||g||_{L^p}) for t > 1, over the given grid.
SmoothingReport smoothing_ratio_sweep(const SpectralField& g, double p, double q,
                                      std::span<const double> t_grid, FractionalOrder beta,
                                      const UniformGridSpec& ngrid = {});

}  // namespace hermheat

#include "hermheat/propagator.hpp"

#include <cmath>

#include "hermheat/orlicz.hpp"

namespace hermheat {

SpectralField apply_semigroup(const SpectralField& c, double t, FractionalOrder beta) {
  if (t < 0.0) throw ConfigError("apply_semigroup: t must be >= 0");
  SpectralField out = c;
  if (t == 0.0) return out;
  const int N = c.max_degree();
  std::vector<double> mult(static_cast<std::size_t>(N + 1));
  for (int k = 0; k <= N; ++k)
    mult[static_cast<std::size_t>(k)] = std::exp(-t * eigenvalue_pow(k, c.dim(), beta.beta));
  auto& coeffs = out.mutable_coeffs();
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    coeffs[i] *= mult[static_cast<std::size_t>(out.level_of_flat(i))];
  return out;
}

bool smoothing_admissible(double p, double q, double beta) {
  if (!(p >= 1.0) || !(q >= 1.0)) return false;
  if (beta <= 1.0) return true;
  const bool p_interior = p > 1.0 && !std::isinf(p);
  const bool q_interior = q > 1.0 && !std::isinf(q);
  if (p_interior && q_interior) return true;
  if (p == 1.0 && std::isinf(q)) return true;
  if (p == 1.0 && q >= 2.0 && !std::isinf(q)) return true;
  if (p_interior && q == 1.0) return true;
  return false;
}

double sigma_beta(int dim, double beta, double p, double q) {
  const double ip = std::isinf(p) ? 0.0 : 1.0 / p;
  const double iq = std::isinf(q) ? 0.0 : 1.0 / q;
  return dim / (2.0 * beta) * std::abs(ip - iq);
}

bool SmoothingReport::consistent() const { return sigma == sigma_beta(dim, beta, p, q); }

SmoothingReport smoothing_ratio_sweep(const SpectralField& g, double p, double q,
                                      std::span<const double> t_grid, FractionalOrder beta,
                                      const UniformGridSpec& ngrid) {
  if (!smoothing_admissible(p, q, beta.beta))
    throw ConfigError("smoothing_ratio_sweep: (p,q) pair not admissible for beta > 1");
  SmoothingReport rep;
  rep.p = p;
  rep.q = q;
  rep.beta = beta.beta;
  rep.dim = g.dim();
  rep.sigma = sigma_beta(g.dim(), beta.beta, p, q);

  const TensorGrid grid = ngrid.make(g.dim());
  rep.norm_p = lq_norm(inverse_transform(g, grid), p).value;
  if (rep.norm_p == 0.0) throw ConfigError("smoothing_ratio_sweep: zero field");

  rep.t_grid.assign(t_grid.begin(), t_grid.end());
  rep.ratios.reserve(t_grid.size());
  const double dpow = std::pow(double(g.dim()), beta.beta);
  for (double t : t_grid) {
    if (!(t > 0.0)) throw ConfigError("smoothing_ratio_sweep: t values must be positive");
    const SpectralField ut = apply_semigroup(g, t, beta);
    const double nq = lq_norm(inverse_transform(ut, grid), q).value;
    const double denom =
        t <= 1.0 ? std::pow(t, -rep.sigma) * rep.norm_p : std::exp(-t * dpow) * rep.norm_p;
    rep.ratios.push_back(nq / denom);
  }
  return rep;
}

}  // namespace hermheat

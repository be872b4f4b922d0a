#pragma once

#include <span>
#include <vector>

#include "hermheat/field.hpp"
#include "hermheat/multi_index.hpp"

namespace hermheat {

// L^2(R)-normalized Hermite function h_k(x), carried in the e^{-x^2/2}-scaled
// form throughout: h_0 = pi^{-1/4} e^{-x^2/2},
// h_{k+1} = x sqrt(2/(k+1)) h_k - sqrt(k/(k+1)) h_{k-1}.
// Overflow-free for k <= 200, |x| <= 30.
double hermite_function(int k, double x);

// Tensor Hermite function Phi_alpha(x) = prod_j h_{alpha_j}(x_j).
double phi_alpha(const MultiIndex& alpha, std::span<const double> x);

// Row-major table vals[k * nodes.size() + i] = h_k(nodes[i]), k = 0..max_degree.
std::vector<double> hermite_value_table(int max_degree, std::span<const double> nodes);

// Forward spectral transform: c_alpha = <f, Phi_alpha> by Gauss-Hermite
// quadrature with the Gaussian weight factored out. Requires a Gauss-Hermite
// grid of order M >= 2N+1 per axis.
SpectralField forward_transform(const PhysicalField& f, int max_degree);

// Pointwise synthesis  sum_{|alpha|_1 <= N} c_alpha Phi_alpha(x)  on a grid.
PhysicalField inverse_transform(const SpectralField& c, const TensorGrid& grid);

// Synthesis at one arbitrary point.
double evaluate_spectral(const SpectralField& c, std::span<const double> x);

// Quadrature L^2 norm of a field sampled on a Gauss-Hermite grid.
double l2_norm_quadrature(const PhysicalField& f);

}  // namespace hermheat

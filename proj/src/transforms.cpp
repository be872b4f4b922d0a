#include "hermheat/transforms.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace hermheat {

double hermite_function(int k, double x) {
  if (k < 0) throw ConfigError("hermite_function: k must be >= 0");
  double p0 = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  if (k == 0) return p0;
  double p1 = x * std::sqrt(2.0) * p0;
  for (int j = 1; j < k; ++j) {
    const double p2 = x * std::sqrt(2.0 / (j + 1)) * p1 - std::sqrt(double(j) / (j + 1)) * p0;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double phi_alpha(const MultiIndex& alpha, std::span<const double> x) {
  if (static_cast<std::size_t>(alpha.dim()) != x.size())
    throw ConfigError("phi_alpha: dimension mismatch between alpha and point");
  double v = 1.0;
  for (int j = 0; j < alpha.dim(); ++j)
    v *= hermite_function(alpha[j], x[static_cast<std::size_t>(j)]);
  return v;
}

std::vector<double> hermite_value_table(int max_degree, std::span<const double> nodes) {
  const std::size_t m = nodes.size();
  std::vector<double> vals(static_cast<std::size_t>(max_degree + 1) * m);
  const double c0 = std::pow(std::numbers::pi, -0.25);
  for (std::size_t i = 0; i < m; ++i) {
    const double x = nodes[i];
    double p0 = c0 * std::exp(-0.5 * x * x);
    vals[i] = p0;
    if (max_degree == 0) continue;
    double p1 = x * std::sqrt(2.0) * p0;
    vals[m + i] = p1;
    for (int k = 1; k < max_degree; ++k) {
      const double p2 = x * std::sqrt(2.0 / (k + 1)) * p1 - std::sqrt(double(k) / (k + 1)) * p0;
      vals[static_cast<std::size_t>(k + 1) * m + i] = p2;
      p0 = p1;
      p1 = p2;
    }
  }
  return vals;
}

SpectralField forward_transform(const PhysicalField& f, int max_degree) {
  const TensorGrid& g = f.grid();
  if (g.kind() != GridKind::GaussHermite)
    throw ConfigError("forward_transform: field must live on a Gauss-Hermite grid");
  const int N = max_degree;
  for (int ax = 0; ax < g.dim(); ++ax)
    if (g.axis_size(ax) < 2 * N + 1)
      throw ConfigError("forward_transform: grid order M < 2N+1 (under-resolved)");

  SpectralField c(g.dim(), N);
  if (g.dim() == 1) {
    const auto& x = g.axis(0);
    const auto& sw = g.axis_weights(0);
    const std::size_t m = x.size();
    const auto table = hermite_value_table(N, x);
    for (int k = 0; k <= N; ++k) {
      double s = 0.0;
      const double* hk = table.data() + static_cast<std::size_t>(k) * m;
      for (std::size_t i = 0; i < m; ++i) s += sw[i] * f.values()[i] * hk[i];
      c.mutable_coeffs()[static_cast<std::size_t>(k)] = s;
    }
    return c;
  }

  // d = 2: contract axis 1 first, then axis 0 (fixed summation order).
  const auto& x0 = g.axis(0);
  const auto& x1 = g.axis(1);
  const auto& w0 = g.axis_weights(0);
  const auto& w1 = g.axis_weights(1);
  const std::size_t m0 = x0.size(), m1 = x1.size();
  const auto t0 = hermite_value_table(N, x0);
  const auto t1 = hermite_value_table(N, x1);

  // partial[i0 * (N+1) + k1] = sum_j w1[j] f(i0, j) h_{k1}(x1[j])
  std::vector<double> partial(m0 * static_cast<std::size_t>(N + 1), 0.0);
  for (std::size_t i0 = 0; i0 < m0; ++i0) {
    const double* row = f.values().data() + i0 * m1;
    for (int k1 = 0; k1 <= N; ++k1) {
      const double* hk = t1.data() + static_cast<std::size_t>(k1) * m1;
      double s = 0.0;
      for (std::size_t j = 0; j < m1; ++j) s += w1[j] * row[j] * hk[j];
      partial[i0 * static_cast<std::size_t>(N + 1) + static_cast<std::size_t>(k1)] = s;
    }
  }
  auto& out = c.mutable_coeffs();
  const auto indices = enumerate_multi_indices(2, N);
  for (std::size_t idx = 0; idx < indices.size(); ++idx) {
    const int k0 = indices[idx][0];
    const int k1 = indices[idx][1];
    const double* hk = t0.data() + static_cast<std::size_t>(k0) * m0;
    double s = 0.0;
    for (std::size_t i0 = 0; i0 < m0; ++i0)
      s += w0[i0] * hk[i0] * partial[i0 * static_cast<std::size_t>(N + 1) + static_cast<std::size_t>(k1)];
    out[idx] = s;
  }
  return c;
}

PhysicalField inverse_transform(const SpectralField& c, const TensorGrid& grid) {
  const int N = c.max_degree();
  if (grid.dim() != c.dim()) throw ConfigError("inverse_transform: grid/field dimension mismatch");

  if (grid.dim() == 1) {
    const auto& x = grid.axis(0);
    const std::size_t m = x.size();
    const auto table = hermite_value_table(N, x);
    std::vector<double> vals(m, 0.0);
    for (int k = 0; k <= N; ++k) {
      const double ck = c.coeffs()[static_cast<std::size_t>(k)];
      if (ck == 0.0) continue;
      const double* hk = table.data() + static_cast<std::size_t>(k) * m;
      for (std::size_t i = 0; i < m; ++i) vals[i] += ck * hk[i];
    }
    return PhysicalField(grid, std::move(vals));
  }

  const auto& x0 = grid.axis(0);
  const auto& x1 = grid.axis(1);
  const std::size_t m0 = x0.size(), m1 = x1.size();
  const auto t0 = hermite_value_table(N, x0);
  const auto t1 = hermite_value_table(N, x1);

  // inner[k0 * m1 + j] = sum_{k1 <= N - k0} c_{(k0,k1)} h_{k1}(x1[j])
  std::vector<double> inner(static_cast<std::size_t>(N + 1) * m1, 0.0);
  const auto indices = enumerate_multi_indices(2, N);
  for (std::size_t idx = 0; idx < indices.size(); ++idx) {
    const double ck = c.coeffs()[idx];
    if (ck == 0.0) continue;
    const int k0 = indices[idx][0];
    const int k1 = indices[idx][1];
    const double* hk = t1.data() + static_cast<std::size_t>(k1) * m1;
    double* dst = inner.data() + static_cast<std::size_t>(k0) * m1;
    for (std::size_t j = 0; j < m1; ++j) dst[j] += ck * hk[j];
  }
  std::vector<double> vals(m0 * m1, 0.0);
  for (std::size_t i0 = 0; i0 < m0; ++i0) {
    for (int k0 = 0; k0 <= N; ++k0) {
      const double h0 = t0[static_cast<std::size_t>(k0) * m0 + i0];
      if (h0 == 0.0) continue;
      const double* src = inner.data() + static_cast<std::size_t>(k0) * m1;
      double* dst = vals.data() + i0 * m1;
      for (std::size_t j = 0; j < m1; ++j) dst[j] += h0 * src[j];
    }
  }
  return PhysicalField(grid, std::move(vals));
}

namespace {

// h_0..h_N at a single abscissa, written into a caller-owned buffer.
void hermite_column(int N, double x, double* h) {
  h[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  if (N == 0) return;
  h[1] = x * std::sqrt(2.0) * h[0];
  for (int k = 1; k < N; ++k)
    h[k + 1] = x * std::sqrt(2.0 / (k + 1)) * h[k] - std::sqrt(double(k) / (k + 1)) * h[k - 1];
}

}  // namespace

double evaluate_spectral(const SpectralField& c, std::span<const double> x) {
  if (static_cast<std::size_t>(c.dim()) != x.size())
    throw ConfigError("evaluate_spectral: point dimension mismatch");
  const int N = c.max_degree();
  std::array<double, 513> h0;
  hermite_column(N, x[0], h0.data());
  if (c.dim() == 1) {
    double s = 0.0;
    for (int k = 0; k <= N; ++k) s += c.coeffs()[static_cast<std::size_t>(k)] * h0[static_cast<std::size_t>(k)];
    return s;
  }
  std::array<double, 513> h1;
  hermite_column(N, x[1], h1.data());
  double s = 0.0;
  std::size_t idx = 0;
  for (int k = 0; k <= N; ++k)
    for (int a0 = 0; a0 <= k; ++a0, ++idx)
      s += c.coeffs()[idx] * h0[static_cast<std::size_t>(a0)] * h1[static_cast<std::size_t>(k - a0)];
  return s;
}

double l2_norm_quadrature(const PhysicalField& f) {
  if (f.grid().kind() != GridKind::GaussHermite)
    throw ConfigError("l2_norm_quadrature: requires a Gauss-Hermite grid");
  double s = 0.0;
  for (std::size_t i = 0; i < f.values().size(); ++i)
    s += f.grid().point_weight(i) * f.values()[i] * f.values()[i];
  return std::sqrt(std::max(0.0, s));
}

}  // namespace hermheat

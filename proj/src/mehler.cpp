#include "hermheat/mehler.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "hermheat/quadrature.hpp"
#include "hermheat/transforms.hpp"

namespace hermheat {

namespace {

constexpr double kMinMehlerTime = 1e-4;

struct KernelParams {
  double tanh_t;
  double inv_2sinh2t;
  double axis_prefactor;  // (2 pi sinh 2t)^{-1/2}
  double width;           // sqrt(sinh 2t), Gaussian y-scale of the kernel
};

KernelParams kernel_params(double t) {
  const double s2t = std::sinh(2.0 * t);
  KernelParams kp;
  kp.tanh_t = std::tanh(t);
  kp.inv_2sinh2t = 0.5 / s2t;
  kp.axis_prefactor = 1.0 / std::sqrt(2.0 * std::numbers::pi * s2t);
  kp.width = std::sqrt(s2t);
  return kp;
}

// One-axis kernel factor K(x,y). Both exponent terms are nonpositive, so the
// split form is cancellation-free for every t.
inline double kernel_1d(const KernelParams& kp, double x, double y) {
  const double dxy = x - y;
  return kp.axis_prefactor *
         std::exp(-0.5 * kp.tanh_t * (x * x + y * y) - kp.inv_2sinh2t * dxy * dxy);
}

// Panel edges for one axis: n panels on [a,b], with an extra edge at 0 when
// the origin lies strictly inside (keeps Gauss nodes off singular data at 0).
std::vector<double> panel_edges(double a, double b, int n) {
  std::vector<double> edges;
  edges.reserve(static_cast<std::size_t>(n) + 2);
  const double h = (b - a) / n;
  for (int i = 0; i <= n; ++i) edges.push_back(a + h * i);
  if (a < 0.0 && b > 0.0) {
    edges.push_back(0.0);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }
  return edges;
}

struct AxisNodes {
  std::vector<double> y;
  std::vector<double> wk;  // quadrature weight times kernel factor
};

AxisNodes axis_nodes(const KernelParams& kp, double x, double a, double b, int panels,
                     const QuadratureRule& gl) {
  AxisNodes out;
  const auto edges = panel_edges(a, b, panels);
  out.y.reserve((edges.size() - 1) * gl.nodes.size());
  out.wk.reserve(out.y.capacity());
  for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
    const double c = 0.5 * (edges[e] + edges[e + 1]);
    const double hw = 0.5 * (edges[e + 1] - edges[e]);
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double y = c + hw * gl.nodes[i];
      out.y.push_back(y);
      out.wk.push_back(hw * gl.weights[i] * kernel_1d(kp, x, y));
    }
  }
  return out;
}

double tensor_integral(const ScalarFn& f, const KernelParams& kp, std::span<const double> x,
                       const std::array<std::pair<double, double>, 2>& bounds, int panels,
                       const QuadratureRule& gl) {
  const int dim = static_cast<int>(x.size());
  const AxisNodes a0 = axis_nodes(kp, x[0], bounds[0].first, bounds[0].second, panels, gl);
  if (dim == 1) {
    double s = 0.0;
    double pt[1];
    for (std::size_t i = 0; i < a0.y.size(); ++i) {
      pt[0] = a0.y[i];
      s += a0.wk[i] * f(std::span<const double>(pt, 1));
    }
    return s;
  }
  const AxisNodes a1 = axis_nodes(kp, x[1], bounds[1].first, bounds[1].second, panels, gl);
  double s = 0.0;
  double pt[2];
  for (std::size_t i = 0; i < a0.y.size(); ++i) {
    pt[0] = a0.y[i];
    double row = 0.0;
    for (std::size_t j = 0; j < a1.y.size(); ++j) {
      pt[1] = a1.y[j];
      row += a1.wk[j] * f(std::span<const double>(pt, 2));
    }
    s += a0.wk[i] * row;
  }
  return s;
}

}  // namespace

double mehler_apply_point(const ScalarFn& f, double t, std::span<const double> x,
                          const MehlerOptions& opt) {
  if (!(t > 0.0)) throw ConfigError("mehler_apply: t must be positive");
  if (t < kMinMehlerTime)
    throw UnsupportedPath("mehler_apply: t below 1e-4; use the spectral path");
  const int dim = static_cast<int>(x.size());
  if (dim < 1 || dim > 2) throw ConfigError("mehler_apply: dim must be 1 or 2");

  const KernelParams kp = kernel_params(t);
  const double R = opt.window_factor * std::max(1.0, kp.width);

  std::array<std::pair<double, double>, 2> bounds{};
  for (int j = 0; j < dim; ++j) {
    const double xs = x[static_cast<std::size_t>(j)];
    double a = std::max(xs - R, -opt.support_half_width);
    double b = std::min(xs + R, opt.support_half_width);
    if (!(a < b)) return 0.0;  // window misses the integrand's support
    bounds[static_cast<std::size_t>(j)] = {a, b};
  }

  // Narrow kernels need panels no wider than the kernel scale before the
  // halving loop has any meaningful error signal.
  double max_span = 0.0;
  for (int j = 0; j < dim; ++j)
    max_span = std::max(max_span, bounds[static_cast<std::size_t>(j)].second -
                                      bounds[static_cast<std::size_t>(j)].first);
  int panels = std::max(opt.initial_panels, static_cast<int>(std::ceil(max_span / kp.width)));
  panels = std::min(panels, 4096);

  const QuadratureRule gl = gauss_legendre_rule(opt.gl_order);
  double prev = tensor_integral(f, kp, x, bounds, panels, gl);
  for (int r = 0; r < opt.max_refine; ++r) {
    panels *= 2;
    const double cur = tensor_integral(f, kp, x, bounds, panels, gl);
    const double diff = std::abs(cur - prev);
    prev = cur;
    if (diff < opt.panel_tol * std::max(1.0, std::abs(cur))) break;
  }
  return prev;
}

PhysicalField mehler_apply(const ScalarFn& f, double t, const TensorGrid& out_grid,
                           const MehlerOptions& opt) {
  std::vector<double> vals(out_grid.size());
  double pt[2];
  for (std::size_t i = 0; i < vals.size(); ++i) {
    out_grid.point(i, pt);
    vals[i] = mehler_apply_point(
        f, t, std::span<const double>(pt, static_cast<std::size_t>(out_grid.dim())), opt);
  }
  return PhysicalField(out_grid, std::move(vals));
}

PhysicalField mehler_apply(const SpectralField& f, double t, const TensorGrid& out_grid,
                           FractionalOrder beta, const MehlerOptions& opt) {
  if (beta.beta != 1.0)
    throw UnsupportedPath("mehler_apply: kernel path defined for beta = 1 only");
  if (out_grid.dim() != f.dim()) throw ConfigError("mehler_apply: grid dimension mismatch");
  ScalarFn fn = [&f](std::span<const double> y) { return evaluate_spectral(f, y); };
  return mehler_apply(fn, t, out_grid, opt);
}

void mehler_normalization_self_check(int dim) {
  // Ground state Phi_0 is an eigenfunction with eigenvalue d; this pins
  // C_d = (2 pi)^{-d/2} in the kernel.
  const double t = 0.4;
  const double decay = std::exp(-t * dim);
  ScalarFn phi0 = [dim](std::span<const double> y) {
    double v = 1.0;
    for (int j = 0; j < dim; ++j) v *= hermite_function(0, y[static_cast<std::size_t>(j)]);
    return v;
  };
  const std::array<double, 2> probe{0.3, -0.7};
  for (int reps = 0; reps < 2; ++reps) {
    std::array<double, 2> x{probe[static_cast<std::size_t>(reps)], 0.5};
    const auto xs = std::span<const double>(x.data(), static_cast<std::size_t>(dim));
    const double got = mehler_apply_point(phi0, t, xs);
    const double want = decay * phi0(xs);
    if (std::abs(got - want) > 1e-8)
      throw std::runtime_error("mehler normalization self-check failed");
  }
}

}  // namespace hermheat

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "hermheat/errors.hpp"
#include "hermheat/multi_index.hpp"
#include "hermheat/quadrature.hpp"

namespace hermheat {

using ScalarFn = std::function<double(std::span<const double>)>;

enum class GridKind { GaussHermite, Uniform };

// Tensor-product grid over R^d, d in {1,2}. Gauss-Hermite grids carry the
// scaled quadrature weights of their rule (plain-dx integration); uniform
// grids carry composite-Simpson weights over [-half_width, half_width]^d.
class TensorGrid {
 public:
  static TensorGrid gauss_hermite(int dim, const QuadratureRule& rule);
  static TensorGrid uniform(int dim, double half_width, int points_per_axis);

  GridKind kind() const { return kind_; }
  int dim() const { return dim_; }
  double half_width() const { return half_width_; }
  int axis_size(int i) const { return static_cast<int>(axes_[static_cast<std::size_t>(i)].size()); }
  const std::vector<double>& axis(int i) const { return axes_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& axis_weights(int i) const {
    return axis_weights_[static_cast<std::size_t>(i)];
  }
  // True Gauss-Hermite weights (against e^{-x^2}); empty on uniform grids.
  const std::vector<double>& axis_gh_weights(int i) const {
    return gh_weights_[static_cast<std::size_t>(i)];
  }

  std::size_t size() const {
    std::size_t n = 1;
    for (int i = 0; i < dim_; ++i) n *= axes_[static_cast<std::size_t>(i)].size();
    return n;
  }

  // Lexicographic point coordinates (axis 0 major).
  void point(std::size_t flat, double* out) const {
    if (dim_ == 1) {
      out[0] = axes_[0][flat];
    } else {
      const std::size_t n1 = axes_[1].size();
      out[0] = axes_[0][flat / n1];
      out[1] = axes_[1][flat % n1];
    }
  }

  // Plain-dx integration weight of a flat grid point.
  double point_weight(std::size_t flat) const {
    if (dim_ == 1) return axis_weights_[0][flat];
    const std::size_t n1 = axes_[1].size();
    return axis_weights_[0][flat / n1] * axis_weights_[1][flat % n1];
  }

  bool same_layout(const TensorGrid& o) const;

 private:
  TensorGrid() = default;
  GridKind kind_ = GridKind::Uniform;
  int dim_ = 1;
  double half_width_ = 0.0;
  std::vector<std::vector<double>> axes_;
  std::vector<std::vector<double>> axis_weights_;
  std::vector<std::vector<double>> gh_weights_;
};

// Sampled values over a tensor grid. Construction rejects non-finite values.
class PhysicalField {
 public:
  PhysicalField(TensorGrid grid, std::vector<double> values);

  const TensorGrid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& mutable_values() { return values_; }
  int dim() const { return grid_.dim(); }

  // Tag set by synthesis helpers for smooth/compactly generated data;
  // membership in exp L^p_0 is metadata, never inferred from samples.
  bool smooth_compact_tag() const { return smooth_compact_; }
  void set_smooth_compact_tag(bool v) { smooth_compact_ = v; }

  double max_abs() const;
  // Plain integral  int f dx  using the grid's weights.
  double integral() const;

 private:
  TensorGrid grid_;
  std::vector<double> values_;
  bool smooth_compact_ = false;
};

PhysicalField sample_on_grid(const TensorGrid& grid, const ScalarFn& fn);

// Policy for the uniform evaluation box used by Lebesgue/Orlicz norms.
// Field tails carry the Gaussian factor e^{-|x|^2/2}, so the default
// half-width 14 leaves truncation far below every tolerance in play.
struct UniformGridSpec {
  double half_width = 14.0;
  int points_1d = 5601;
  int points_2d = 281;
  int points_for(int dim) const { return dim == 1 ? points_1d : points_2d; }
  TensorGrid make(int dim) const {
    return TensorGrid::uniform(dim, half_width, points_for(dim));
  }
  UniformGridSpec refined() const {
    UniformGridSpec r = *this;
    r.points_1d = 2 * points_1d - 1;
    r.points_2d = 2 * points_2d - 1;
    return r;
  }
};

// Coefficients over the total-degree-truncated Hermite basis, stored in the
// graded enumeration order of enumerate_multi_indices(dim, max_degree).
class SpectralField {
 public:
  SpectralField(int dim, int max_degree);

  int dim() const { return dim_; }
  int max_degree() const { return max_degree_; }
  std::size_t size() const { return coeffs_.size(); }

  double coeff(const MultiIndex& alpha) const;
  void set_coeff(const MultiIndex& alpha, double v);
  const std::vector<double>& coeffs() const { return coeffs_; }
  std::vector<double>& mutable_coeffs() { return coeffs_; }

  int level_of_flat(std::size_t flat) const;

  double l2_norm() const;
  // Energy fraction carried by eigenlevels >= level.
  double tail_energy_fraction(int level) const;

  SpectralField& operator*=(double c);
  SpectralField& add_scaled(const SpectralField& other, double c);

  static SpectralField unit(int dim, int max_degree, const MultiIndex& alpha);

 private:
  int dim_;
  int max_degree_;
  std::vector<double> coeffs_;
};

}  // namespace hermheat

#include "hermheat/field.hpp"

#include <cmath>

namespace hermheat {

TensorGrid TensorGrid::gauss_hermite(int dim, const QuadratureRule& rule) {
  if (dim < 1 || dim > 2) throw ConfigError("TensorGrid: dim must be 1 or 2");
  TensorGrid g;
  g.kind_ = GridKind::GaussHermite;
  g.dim_ = dim;
  g.half_width_ = rule.nodes.empty() ? 0.0 : rule.nodes.back();
  for (int i = 0; i < dim; ++i) {
    g.axes_.push_back(rule.nodes);
    g.axis_weights_.push_back(rule.scaled_weights);
    g.gh_weights_.push_back(rule.weights);
  }
  return g;
}

TensorGrid TensorGrid::uniform(int dim, double half_width, int points_per_axis) {
  if (dim < 1 || dim > 2) throw ConfigError("TensorGrid: dim must be 1 or 2");
  if (half_width <= 0.0) throw ConfigError("TensorGrid: half_width must be positive");
  if (points_per_axis < 3 || points_per_axis % 2 == 0)
    throw ConfigError("TensorGrid: uniform grid needs an odd point count >= 3 (Simpson)");
  TensorGrid g;
  g.kind_ = GridKind::Uniform;
  g.dim_ = dim;
  g.half_width_ = half_width;
  const int n = points_per_axis;
  const double h = 2.0 * half_width / (n - 1);
  std::vector<double> nodes(static_cast<std::size_t>(n));
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    nodes[static_cast<std::size_t>(i)] = -half_width + h * i;
    double c = (i == 0 || i == n - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    w[static_cast<std::size_t>(i)] = c * h / 3.0;
  }
  for (int i = 0; i < dim; ++i) {
    g.axes_.push_back(nodes);
    g.axis_weights_.push_back(w);
    g.gh_weights_.emplace_back();
  }
  return g;
}

bool TensorGrid::same_layout(const TensorGrid& o) const {
  if (dim_ != o.dim_ || kind_ != o.kind_) return false;
  for (int i = 0; i < dim_; ++i) {
    const auto& a = axes_[static_cast<std::size_t>(i)];
    const auto& b = o.axes_[static_cast<std::size_t>(i)];
    if (a.size() != b.size()) return false;
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a[j] != b[j]) return false;
  }
  return true;
}

PhysicalField::PhysicalField(TensorGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw ConfigError("PhysicalField: value count does not match grid cardinality");
  for (double v : values_)
    if (!std::isfinite(v)) throw ConfigError("PhysicalField: non-finite value rejected");
}

double PhysicalField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double PhysicalField::integral() const {
  double s = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) s += grid_.point_weight(i) * values_[i];
  return s;
}

PhysicalField sample_on_grid(const TensorGrid& grid, const ScalarFn& fn) {
  std::vector<double> vals(grid.size());
  double pt[2];
  for (std::size_t i = 0; i < vals.size(); ++i) {
    grid.point(i, pt);
    vals[i] = fn(std::span<const double>(pt, static_cast<std::size_t>(grid.dim())));
  }
  return PhysicalField(grid, std::move(vals));
}

SpectralField::SpectralField(int dim, int max_degree) : dim_(dim), max_degree_(max_degree) {
  if (dim < 1 || dim > 2) throw ConfigError("SpectralField: dim must be 1 or 2");
  if (max_degree < 0 || max_degree > 512)
    throw ConfigError("SpectralField: max_degree out of range");
  coeffs_.assign(basis_size(dim, max_degree), 0.0);
}

double SpectralField::coeff(const MultiIndex& alpha) const {
  if (alpha.dim() != dim_) throw ConfigError("SpectralField: dimension mismatch");
  if (alpha.total_degree() > max_degree_) return 0.0;
  return coeffs_[flat_index(alpha)];
}

void SpectralField::set_coeff(const MultiIndex& alpha, double v) {
  if (alpha.dim() != dim_) throw ConfigError("SpectralField: dimension mismatch");
  if (alpha.total_degree() > max_degree_)
    throw ConfigError("SpectralField: |alpha|_1 exceeds max_degree");
  coeffs_[flat_index(alpha)] = v;
}

int SpectralField::level_of_flat(std::size_t flat) const {
  if (dim_ == 1) return static_cast<int>(flat);
  // Invert the triangular offset k(k+1)/2 <= flat.
  int k = static_cast<int>((std::sqrt(8.0 * static_cast<double>(flat) + 1.0) - 1.0) / 2.0);
  while (level_offset(2, k + 1) <= flat) ++k;
  while (k > 0 && level_offset(2, k) > flat) --k;
  return k;
}

double SpectralField::l2_norm() const {
  double s = 0.0;
  for (double c : coeffs_) s += c * c;
  return std::sqrt(s);
}

double SpectralField::tail_energy_fraction(int level) const {
  double total = 0.0, tail = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const double e = coeffs_[i] * coeffs_[i];
    total += e;
    if (level_of_flat(i) >= level) tail += e;
  }
  return total > 0.0 ? tail / total : 0.0;
}

SpectralField& SpectralField::operator*=(double c) {
  for (double& v : coeffs_) v *= c;
  return *this;
}

SpectralField& SpectralField::add_scaled(const SpectralField& other, double c) {
  if (other.dim_ != dim_ || other.max_degree_ != max_degree_)
    throw ConfigError("SpectralField: shape mismatch in add_scaled");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += c * other.coeffs_[i];
  return *this;
}

SpectralField SpectralField::unit(int dim, int max_degree, const MultiIndex& alpha) {
  SpectralField f(dim, max_degree);
  f.set_coeff(alpha, 1.0);
  return f;
}

}  // namespace hermheat

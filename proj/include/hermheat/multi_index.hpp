#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "hermheat/errors.hpp"

namespace hermheat {

// Multi-index alpha in N^d, d in {1,2}. The total degree |alpha|_1 selects the
// eigenlevel of the Hermite operator: H Phi_alpha = (2|alpha|_1 + d) Phi_alpha.
class MultiIndex {
 public:
  MultiIndex(int dim, std::array<int, 2> entries) : dim_(dim), a_(entries) {
    if (dim_ < 1 || dim_ > 2) throw ConfigError("MultiIndex: dim must be 1 or 2");
    for (int i = 0; i < dim_; ++i)
      if (a_[static_cast<std::size_t>(i)] < 0)
        throw ConfigError("MultiIndex: entries must be nonnegative");
  }

  static MultiIndex of(int a0) { return MultiIndex(1, {a0, 0}); }
  static MultiIndex of(int a0, int a1) { return MultiIndex(2, {a0, a1}); }

  int dim() const { return dim_; }
  int operator[](int i) const { return a_[static_cast<std::size_t>(i)]; }
  int total_degree() const {
    int s = 0;
    for (int i = 0; i < dim_; ++i) s += a_[static_cast<std::size_t>(i)];
    return s;
  }

  bool operator==(const MultiIndex& o) const {
    if (dim_ != o.dim_) return false;
    for (int i = 0; i < dim_; ++i)
      if (a_[static_cast<std::size_t>(i)] != o.a_[static_cast<std::size_t>(i)]) return false;
    return true;
  }

  std::string to_string() const {
    std::string s = "(" + std::to_string(a_[0]);
    if (dim_ == 2) s += "," + std::to_string(a_[1]);
    return s + ")";
  }

 private:
  int dim_;
  std::array<int, 2> a_;
};

// Number of multi-indices with |alpha|_1 <= N.
inline std::size_t basis_size(int dim, int max_degree) {
  const auto n = static_cast<std::size_t>(max_degree);
  return dim == 1 ? n + 1 : (n + 1) * (n + 2) / 2;
}

// First flat position of eigenlevel k in the graded enumeration.
inline std::size_t level_offset(int dim, int level) {
  const auto k = static_cast<std::size_t>(level);
  return dim == 1 ? k : k * (k + 1) / 2;
}

// Graded enumeration: levels k = 0..N; within a level, first component
// ascending. This is the canonical coefficient order everywhere.
inline std::vector<MultiIndex> enumerate_multi_indices(int dim, int max_degree) {
  std::vector<MultiIndex> out;
  out.reserve(basis_size(dim, max_degree));
  for (int k = 0; k <= max_degree; ++k) {
    if (dim == 1) {
      out.push_back(MultiIndex::of(k));
    } else {
      for (int a0 = 0; a0 <= k; ++a0) out.push_back(MultiIndex::of(a0, k - a0));
    }
  }
  return out;
}

inline std::size_t flat_index(const MultiIndex& alpha) {
  const int k = alpha.total_degree();
  if (alpha.dim() == 1) return static_cast<std::size_t>(k);
  return level_offset(2, k) + static_cast<std::size_t>(alpha[0]);
}

}  // namespace hermheat

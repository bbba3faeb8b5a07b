#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace qi {

/// Integer frequency vector.
using Index = std::vector<std::int64_t>;

/// Index sets above this size are not materialized; use SpectralIndexSet::for_each.
inline constexpr std::int64_t kMaterializeLimit = std::int64_t{1} << 20;

/// Diagonal integer dilation matrix M = diag(m_1, ..., m_d), |m_i| >= 2.
class DilationLattice {
 public:
  explicit DilationLattice(std::vector<int> diag);

  static DilationLattice isotropic(int lambda, int dim);

  int dim() const { return static_cast<int>(diag_.size()); }
  std::span<const int> diag() const { return diag_; }

  /// m = |det M|.
  std::int64_t det() const;

  /// |m_axis|^level, the number of level-`level` frequencies along `axis`.
  std::int64_t extent(int axis, int level) const;

  /// m_axis^level with sign; alias arithmetic works modulo this value.
  std::int64_t signed_power(int axis, int level) const;

  /// m^level = |det M^level|.
  std::int64_t cardinality(int level) const;

  bool is_isotropic() const;

  /// M^{-level} k.
  std::vector<double> scaled(std::span<const std::int64_t> k, int level) const;

 private:
  std::vector<int> diag_;
};

/// The box rho * M^j [-1/2, 1/2)^d intersected with Z^d.
///
/// Enumeration order is row-major with the last axis varying fastest; the
/// same order is used for sample grids and for sample vectors handed to
/// analyze_samples.
class SpectralIndexSet {
 public:
  SpectralIndexSet(int level, std::vector<std::int64_t> lower,
                   std::vector<std::int64_t> counts);

  int level() const { return level_; }
  int dim() const { return static_cast<int>(lower_.size()); }
  std::int64_t size() const { return size_; }
  std::span<const std::int64_t> lower() const { return lower_; }
  std::span<const std::int64_t> counts() const { return counts_; }

  Index at(std::int64_t flat) const;
  bool contains(std::span<const std::int64_t> k) const;
  /// Position of k in enumeration order, or -1 when k is not a member.
  std::int64_t flat_of(std::span<const std::int64_t> k) const;

  bool materialized() const { return !indices_.empty() || size_ == 0; }
  /// Throws std::logic_error when the set is too large to be materialized.
  const std::vector<Index>& indices() const;

  template <class Fn>
  void for_each(Fn&& fn) const {
    if (size_ == 0) return;
    Index k(lower_.begin(), lower_.end());
    for (std::int64_t flat = 0; flat < size_; ++flat) {
      fn(static_cast<const Index&>(k));
      for (int axis = dim() - 1; axis >= 0; --axis) {
        if (++k[axis] < lower_[axis] + counts_[axis]) break;
        k[axis] = lower_[axis];
      }
    }
  }

 private:
  int level_;
  std::vector<std::int64_t> lower_;
  std::vector<std::int64_t> counts_;
  std::int64_t size_;
  std::vector<Index> indices_;
};

/// D(rho M^j). Rejects level <= 0 and rho outside (0, 1].
SpectralIndexSet spectral_index_set(const DilationLattice& lattice, int level,
                                    double rho = 1.0);

/// k in D(rho M^j), without building the set.
bool contains_frequency(const DilationLattice& lattice, int level,
                        std::span<const std::int64_t> k, double rho = 1.0);

/// The unique l in D(M^j) with nu = l (mod M^j Z^d).
Index alias_representative(std::span<const std::int64_t> nu,
                           const DilationLattice& lattice, int level);

/// Nodes M^{-j} k mod 1 for k in D(M^j), in index-set order.
std::vector<std::vector<double>> sample_grid(const DilationLattice& lattice,
                                             int level);

}  // namespace qi

#include "qi/lattice.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

namespace qi {

namespace {

std::int64_t checked_power(std::int64_t base, int level) {
  if (level < 0) throw std::invalid_argument("negative level");
  std::int64_t result = 1;
  for (int i = 0; i < level; ++i) {
    if (std::abs(result) > std::numeric_limits<std::int64_t>::max() / std::abs(base)) {
      throw std::overflow_error("dilation power overflows int64");
    }
    result *= base;
  }
  return result;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

}  // namespace

DilationLattice::DilationLattice(std::vector<int> diag) : diag_(std::move(diag)) {
  if (diag_.empty()) throw std::invalid_argument("dilation matrix needs at least one axis");
  for (int m : diag_) {
    if (std::abs(m) < 2) {
      throw std::invalid_argument("dilation entries must satisfy |m_i| >= 2, got " +
                                  std::to_string(m));
    }
  }
}

DilationLattice DilationLattice::isotropic(int lambda, int dim) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  return DilationLattice(std::vector<int>(static_cast<std::size_t>(dim), lambda));
}

std::int64_t DilationLattice::det() const {
  std::int64_t m = 1;
  for (int v : diag_) m *= std::abs(v);
  return m;
}

std::int64_t DilationLattice::extent(int axis, int level) const {
  return checked_power(std::abs(diag_.at(static_cast<std::size_t>(axis))), level);
}

std::int64_t DilationLattice::signed_power(int axis, int level) const {
  return checked_power(diag_.at(static_cast<std::size_t>(axis)), level);
}

std::int64_t DilationLattice::cardinality(int level) const {
  std::int64_t total = 1;
  for (int axis = 0; axis < dim(); ++axis) {
    const std::int64_t e = extent(axis, level);
    if (total > std::numeric_limits<std::int64_t>::max() / e) {
      throw std::overflow_error("lattice cardinality overflows int64");
    }
    total *= e;
  }
  return total;
}

bool DilationLattice::is_isotropic() const {
  for (int v : diag_) {
    if (v != diag_.front()) return false;
  }
  return true;
}

std::vector<double> DilationLattice::scaled(std::span<const std::int64_t> k,
                                            int level) const {
  if (static_cast<int>(k.size()) != dim()) throw std::invalid_argument("dimension mismatch");
  std::vector<double> xi(k.size());
  for (int axis = 0; axis < dim(); ++axis) {
    xi[axis] = static_cast<double>(k[axis]) / static_cast<double>(signed_power(axis, level));
  }
  return xi;
}

SpectralIndexSet::SpectralIndexSet(int level, std::vector<std::int64_t> lower,
                                   std::vector<std::int64_t> counts)
    : level_(level), lower_(std::move(lower)), counts_(std::move(counts)), size_(1) {
  if (lower_.size() != counts_.size()) throw std::invalid_argument("dimension mismatch");
  for (std::int64_t c : counts_) {
    if (c < 0) throw std::invalid_argument("negative count");
    size_ *= c;
  }
  if (size_ > 0 && size_ <= kMaterializeLimit) {
    indices_.reserve(static_cast<std::size_t>(size_));
    for_each([this](const Index& k) { indices_.push_back(k); });
  }
}

Index SpectralIndexSet::at(std::int64_t flat) const {
  if (flat < 0 || flat >= size_) throw std::out_of_range("index set position");
  Index k(lower_.size());
  for (int axis = dim() - 1; axis >= 0; --axis) {
    k[axis] = lower_[axis] + flat % counts_[axis];
    flat /= counts_[axis];
  }
  return k;
}

bool SpectralIndexSet::contains(std::span<const std::int64_t> k) const {
  return flat_of(k) >= 0;
}

std::int64_t SpectralIndexSet::flat_of(std::span<const std::int64_t> k) const {
  if (static_cast<int>(k.size()) != dim()) return -1;
  std::int64_t flat = 0;
  for (int axis = 0; axis < dim(); ++axis) {
    const std::int64_t offset = k[axis] - lower_[axis];
    if (offset < 0 || offset >= counts_[axis]) return -1;
    flat = flat * counts_[axis] + offset;
  }
  return flat;
}

const std::vector<Index>& SpectralIndexSet::indices() const {
  if (!materialized()) {
    throw std::logic_error("index set with " + std::to_string(size_) +
                           " entries is streamed only; use for_each");
  }
  return indices_;
}

SpectralIndexSet spectral_index_set(const DilationLattice& lattice, int level, double rho) {
  if (level <= 0) throw std::invalid_argument("level must be positive");
  if (!(rho > 0.0 && rho <= 1.0)) throw std::invalid_argument("rho must lie in (0, 1]");
  std::vector<std::int64_t> lower(static_cast<std::size_t>(lattice.dim()));
  std::vector<std::int64_t> counts(lower.size());
  for (int axis = 0; axis < lattice.dim(); ++axis) {
    // integers k with -h <= k < h, h = rho |m_i|^j / 2
    const long double half =
        static_cast<long double>(rho) * static_cast<long double>(lattice.extent(axis, level)) / 2.0L;
    const auto lo = static_cast<std::int64_t>(std::ceil(-half));
    const auto hi = static_cast<std::int64_t>(std::ceil(half)) - 1;
    lower[axis] = lo;
    counts[axis] = hi >= lo ? hi - lo + 1 : 0;
  }
  return SpectralIndexSet(level, std::move(lower), std::move(counts));
}

bool contains_frequency(const DilationLattice& lattice, int level,
                        std::span<const std::int64_t> k, double rho) {
  if (static_cast<int>(k.size()) != lattice.dim()) return false;
  for (int axis = 0; axis < lattice.dim(); ++axis) {
    const long double half =
        static_cast<long double>(rho) * static_cast<long double>(lattice.extent(axis, level)) / 2.0L;
    const auto v = static_cast<long double>(k[axis]);
    if (v < -half || v >= half) return false;
  }
  return true;
}

Index alias_representative(std::span<const std::int64_t> nu, const DilationLattice& lattice,
                           int level) {
  if (static_cast<int>(nu.size()) != lattice.dim()) {
    throw std::invalid_argument("dimension mismatch");
  }
  Index rep(nu.size());
  for (int axis = 0; axis < lattice.dim(); ++axis) {
    // classes modulo m_i^j and |m_i|^j coincide
    const std::int64_t e = lattice.extent(axis, level);
    const std::int64_t lo = -(e / 2);
    rep[axis] = floor_mod(nu[axis] - lo, e) + lo;
  }
  return rep;
}

std::vector<std::vector<double>> sample_grid(const DilationLattice& lattice, int level) {
  const SpectralIndexSet set = spectral_index_set(lattice, level);
  std::vector<std::vector<double>> nodes;
  nodes.reserve(static_cast<std::size_t>(set.size()));
  set.for_each([&](const Index& k) {
    std::vector<double> x(k.size());
    for (int axis = 0; axis < lattice.dim(); ++axis) {
      const std::int64_t mp = lattice.signed_power(axis, level);
      const std::int64_t e = std::abs(mp);
      // exact residue first, then scale: k/m^j mod 1 = ((sign * k) mod e) / e
      const std::int64_t signed_k = mp < 0 ? -k[axis] : k[axis];
      x[axis] = static_cast<double>(floor_mod(signed_k, e)) / static_cast<double>(e);
    }
    nodes.push_back(std::move(x));
  });
  return nodes;
}

}  // namespace qi

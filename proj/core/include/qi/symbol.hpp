#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>

#include "qi/lattice.hpp"

namespace qi {

using Complex = std::complex<double>;

/// Raised when a symbol has no value at a requested frequency.
class SymbolDomainError : public std::domain_error {
 public:
  SymbolDomainError(const std::string& what, Index k, int level);
  const Index& frequency() const { return k_; }
  int level() const { return level_; }

 private:
  Index k_;
  int level_;
};

/// A rule (j, l) -> complex on Z^d, one sequence per level j >= 1.
///
/// Kernel symbols, sampling-functional symbols, the reproduction defect,
/// smooth windows and quotient symbols are all carried by this type.
class SymbolFamily {
 public:
  using Rule = std::function<Complex(int level, std::span<const std::int64_t> k)>;

  SymbolFamily(Rule rule, std::string label);

  Complex operator()(int level, std::span<const std::int64_t> k) const { return rule_(level, k); }
  const std::string& label() const { return label_; }

  static SymbolFamily constant(Complex value, std::string label = "const");

  /// Pointwise product.
  friend SymbolFamily operator*(const SymbolFamily& a, const SymbolFamily& b);

 private:
  Rule rule_;
  std::string label_;
};

/// Profile Lambda(xi) of a symbol written as Lambda(M^{-j} k).
using Profile = std::function<Complex(std::span<const double> xi)>;

/// Rule (j, k) -> profile(M^{-j} k).
SymbolFamily scaled_profile(const DilationLattice& lattice, Profile profile, std::string label);

/// Rule (j, k) -> v(M^{-j} k / delta).
SymbolFamily lattice_window(const DilationLattice& lattice, double delta);

}  // namespace qi

#include "qi/symbol.hpp"

#include <vector>

#include "qi/window.hpp"

namespace qi {

SymbolDomainError::SymbolDomainError(const std::string& what, Index k, int level)
    : std::domain_error(what), k_(std::move(k)), level_(level) {}

SymbolFamily::SymbolFamily(Rule rule, std::string label)
    : rule_(std::move(rule)), label_(std::move(label)) {}

SymbolFamily SymbolFamily::constant(Complex value, std::string label) {
  return SymbolFamily([value](int, std::span<const std::int64_t>) { return value; },
                      std::move(label));
}

SymbolFamily operator*(const SymbolFamily& a, const SymbolFamily& b) {
  return SymbolFamily(
      [ra = a.rule_, rb = b.rule_](int level, std::span<const std::int64_t> k) {
        return ra(level, k) * rb(level, k);
      },
      a.label_ + "*" + b.label_);
}

SymbolFamily scaled_profile(const DilationLattice& lattice, Profile profile, std::string label) {
  return SymbolFamily(
      [lattice, profile = std::move(profile)](int level, std::span<const std::int64_t> k) {
        const std::vector<double> xi = lattice.scaled(k, level);
        return profile(xi);
      },
      std::move(label));
}

SymbolFamily lattice_window(const DilationLattice& lattice, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("window scale must be positive");
  return scaled_profile(
      lattice,
      [delta](std::span<const double> xi) {
        std::vector<double> t(xi.begin(), xi.end());
        for (double& v : t) v /= delta;
        return Complex(window_value(t), 0.0);
      },
      "v_" + std::to_string(delta));
}

}  // namespace qi

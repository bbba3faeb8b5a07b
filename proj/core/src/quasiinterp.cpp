#include "qi/quasiinterp.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace qi {

QuasiInterpOperator::QuasiInterpOperator(KernelSpec kernel, FunctionalSpec functional,
                                         DilationLattice lattice, int level)
    : kernel_(std::move(kernel)),
      functional_(std::move(functional)),
      lattice_(std::move(lattice)),
      level_(level),
      kernel_symbol_(qi::kernel_symbol(kernel_, lattice_)),
      functional_symbol_(qi::functional_symbol(functional_, lattice_)) {
  if (level < 1) throw std::invalid_argument("level must be positive");
}

QuasiInterpOperator QuasiInterpOperator::at_level(int level) const {
  return QuasiInterpOperator(kernel_, functional_, lattice_, level);
}

namespace {

void check_dim(const QuasiInterpOperator& op, const SpectralFunction& f) {
  if (f.dim() != op.lattice().dim()) throw std::invalid_argument("dimension mismatch");
}

}  // namespace

SpectralFunction apply_spatial(const QuasiInterpOperator& op, const SpectralFunction& f) {
  check_dim(op, f);
  const int j = op.level();
  const SpectralFunction smoothed = convolve_functional(op.functional_symbol(), j, f);
  const std::vector<Complex> samples = sample_values(smoothed, op.lattice(), j);
  const SpectralFunction discrete = analyze_samples(samples, op.lattice(), j);
  return apply_multiplier(op.kernel_symbol(), j, discrete);
}

SpectralFunction apply_spectral(const QuasiInterpOperator& op, const SpectralFunction& f) {
  check_dim(op, f);
  const int j = op.level();
  std::map<Index, Complex> folded;
  for (const auto& [nu, c] : f.coeffs()) {
    const Complex w = op.functional_symbol()(j, nu) * c;
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
      throw SymbolDomainError("functional symbol is undefined at a support frequency", nu, j);
    }
    folded[alias_representative(nu, op.lattice(), j)] += w;
  }
  SpectralFunction out(f.dim());
  for (const auto& [l, c] : folded) out.set(l, op.kernel_symbol()(j, l) * c);
  return out;
}

double approximation_error(const QuasiInterpOperator& op, const SpectralFunction& f, double p,
                           int oversample) {
  const SpectralFunction residual = f - apply_spectral(op, f);
  if (p == 2.0) return std::sqrt(residual.energy());
  return lp_norm(residual, p, oversample);
}

double operator_norm_bound(const KernelSpec& kernel, const DilationLattice& lattice, int level,
                           double p, int oversample) {
  if (!(p >= 1.0)) throw std::invalid_argument("L_p exponent must satisfy p >= 1");
  const SymbolFamily symbol = kernel_symbol(kernel, lattice);
  if (p == 2.0) {
    double sup = 0.0;
    spectral_index_set(lattice, level).for_each(
        [&](const Index& l) { sup = std::max(sup, std::abs(symbol(level, l))); });
    return sup;
  }
  return multiplier_l1_bound(symbol, lattice, level, oversample);
}

double kappa_reference(int dim, int level, double p) {
  if (p > 1.0 && !std::isinf(p)) return 1.0;
  return std::pow(static_cast<double>(level), dim);
}

}  // namespace qi

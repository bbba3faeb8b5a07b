#pragma once

#include "qi/kernels.hpp"
#include "qi/lattice.hpp"
#include "qi/spectrum.hpp"

namespace qi {

/// Q_j f = m^{-j} sum_{k in D(M^j)} (phi~_j * f)(M^{-j} k) phi_j(. - M^{-j} k).
class QuasiInterpOperator {
 public:
  QuasiInterpOperator(KernelSpec kernel, FunctionalSpec functional, DilationLattice lattice,
                      int level);

  const KernelSpec& kernel() const { return kernel_; }
  const FunctionalSpec& functional() const { return functional_; }
  const DilationLattice& lattice() const { return lattice_; }
  int level() const { return level_; }

  const SymbolFamily& kernel_symbol() const { return kernel_symbol_; }
  const SymbolFamily& functional_symbol() const { return functional_symbol_; }

  /// The same pairing at another level.
  QuasiInterpOperator at_level(int level) const;

 private:
  KernelSpec kernel_;
  FunctionalSpec functional_;
  DilationLattice lattice_;
  int level_;
  SymbolFamily kernel_symbol_;
  SymbolFamily functional_symbol_;
};

/// Node-sum route: samples of phi~ * f at the grid, discrete analysis, kernel weights.
SpectralFunction apply_spatial(const QuasiInterpOperator& op, const SpectralFunction& f);

/// Alias-fold route: Q^(l) = phi^(l) sum_{nu = l mod M^j} phi~^(nu) f^(nu).
SpectralFunction apply_spectral(const QuasiInterpOperator& op, const SpectralFunction& f);

/// ||f - Q_j f||_p; Parseval for p = 2, rectangle rule otherwise.
double approximation_error(const QuasiInterpOperator& op, const SpectralFunction& f, double p,
                           int oversample = 16);

/// Upper bound for sup_{||f||_p <= 1} ||phi_j * f||_p: the exact sup of
/// |phi^| for p = 2, the L1 norm of the kernel otherwise.
double operator_norm_bound(const KernelSpec& kernel, const DilationLattice& lattice, int level,
                           double p, int oversample = 8);

/// Reference growth of the Dirichlet-kernel operator norm: 1 for 1 < p < inf, j^d otherwise.
double kappa_reference(int dim, int level, double p);

}  // namespace qi

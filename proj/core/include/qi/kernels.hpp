#pragma once

#include <string>
#include <variant>
#include <vector>

#include "qi/lattice.hpp"
#include "qi/symbol.hpp"

namespace qi {

// Sampling functionals, all given by their symbols.

struct Delta {};

/// Cell average over sigma M^{-j} [-1/2, 1/2)^d; symbol prod_i sinc(pi sigma xi_i).
struct Average {
  double sigma = 1.0;
};

/// sum_r w_r f(x + M^{-j-1} tau_r).
struct DiscreteWeights {
  std::vector<double> weights;
  std::vector<Index> shifts;
};

struct DifferentialTerm {
  std::vector<int> beta;
  Complex coeff;
};

/// sum_beta c_beta (2 pi i xi)^beta with xi = M^{-j} l.
struct DifferentialSymbol {
  std::vector<DifferentialTerm> terms;
};

using FunctionalSpec = std::variant<Delta, Average, DiscreteWeights, DifferentialSymbol>;

// Kernels, all supported on D(M^j).

struct Dirichlet {};

/// Dirichlet coefficients weighted by prod_i (pi sigma xi_i) / sin(pi sigma xi_i).
struct CorrectedDirichlet {
  double sigma = 1.0;
};

/// Coefficients v(M^{-j} l).
struct ValleePoussin {};

/// Coefficients (1 - |c_d M^{-j} l|^s)_+^gamma, c_d = 4 sqrt(d).
struct Riesz {
  double s = 1.0;
  double gamma = 1.0;
};

/// Coefficients 1 / (functional symbol) on D(M^j); strictly compatible with
/// `functional` whenever that symbol has no zeros on D(M^j).
struct DualDirichlet {
  FunctionalSpec functional;
};

using KernelSpec = std::variant<Dirichlet, CorrectedDirichlet, ValleePoussin, Riesz, DualDirichlet>;

/// Throws std::invalid_argument when parameters are out of range for dimension `dim`.
void validate(const KernelSpec& spec, int dim);
void validate(const FunctionalSpec& spec, int dim);

std::string label(const KernelSpec& spec);
std::string label(const FunctionalSpec& spec);

/// sin(x) / x with the removable singularity filled in.
double sinc(double x);

/// Symbol as a function of xi = M^{-j} l, without the D(M^j) cutoff.
Profile kernel_profile(const KernelSpec& spec, const DilationLattice& lattice);
Profile functional_profile(const FunctionalSpec& spec, const DilationLattice& lattice);

/// Kernel coefficients; zero outside D(M^j).
SymbolFamily kernel_symbol(const KernelSpec& spec, const DilationLattice& lattice);
SymbolFamily functional_symbol(const FunctionalSpec& spec, const DilationLattice& lattice);

/// psi_j(l) = 1 - kernel(l) * functional(l).
SymbolFamily defect_symbol(const KernelSpec& kernel, const FunctionalSpec& functional,
                           const DilationLattice& lattice);

/// Rule (j, k) -> v(M^{-j} k / delta).
SymbolFamily smooth_window(const DilationLattice& lattice, double delta);

/// prod_i cos^2(2 pi l_i / m_i^{j+1}), the alternative closed form for the
/// three-point weights (1/4, 1/2, 1/4). Diagnostic only; the implemented
/// DiscreteWeights symbol is computed from the shift sum.
SymbolFamily three_point_alternative_symbol(const DilationLattice& lattice);

/// Largest rho in {1, 7/8, ..., 1/8} with |kernel * functional - 1| <= tol on D(rho M^j), else 0.
double compat_radius(const KernelSpec& kernel, const FunctionalSpec& functional,
                     const DilationLattice& lattice, int level, double tol = 1e-10);

/// max over k in D(delta M^j) \ {0} of |psi_j(k)| / |M^{-j} k|^s for one level
/// (0 when the punctured set is empty).
double compat_order_at(const KernelSpec& kernel, const FunctionalSpec& functional,
                       const DilationLattice& lattice, int level, double delta, double s);

/// compat_order_at for each level in `levels`.
std::vector<double> compat_order_profile(const KernelSpec& kernel, const FunctionalSpec& functional,
                                         const DilationLattice& lattice,
                                         const std::vector<int>& levels, double delta, double s);

/// Supremum of compat_order_profile.
double compat_order(const KernelSpec& kernel, const FunctionalSpec& functional,
                    const DilationLattice& lattice, const std::vector<int>& levels, double delta,
                    double s);

enum class QuotientDirection { Upper, Lower };

/// Upper: psi_j(k) / |M^{-j} k|^s * v(M^{-j} k / delta).
/// Lower: |M^{-j} k|^s / psi_j(k) * v(delta M^{-j} k).
/// The value at k = 0 is the limit along the diagonal. Lower throws
/// SymbolDomainError for k with psi_j(k) = 0 inside the window.
SymbolFamily fractional_condition_symbols(const KernelSpec& kernel, const FunctionalSpec& functional,
                                          const DilationLattice& lattice, double s, double delta,
                                          QuotientDirection direction);

/// Limit at xi -> 0 of the quotient profile used by fractional_condition_symbols.
double quotient_limit_at_zero(const KernelSpec& kernel, const FunctionalSpec& functional,
                              const DilationLattice& lattice, double s, QuotientDirection direction);

/// ||phi~_j||_{L_{q,j}} for the cell-average density, by the midpoint rule on
/// one grid cell with 8 * oversample points per axis.
double functional_Lqj_norm(const FunctionalSpec& spec, double q, const DilationLattice& lattice,
                           int level, int oversample = 8);

}  // namespace qi

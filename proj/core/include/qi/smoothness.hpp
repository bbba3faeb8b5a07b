#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qi/kernels.hpp"
#include "qi/lattice.hpp"
#include "qi/spectrum.hpp"

namespace qi {

/// How a reported approximation quantity was obtained.
enum class Method { Exact, NearBestS, NearBestV, GridRealized };

std::string method_tag(Method method);

struct TaggedValue {
  double value = 0.0;
  Method method = Method::Exact;
};

/// E_{M^j}(f)_p: Parseval tail for p = 2, ||f - S f||_p for 1 < p < inf, and
/// for p in {1, inf} the smaller of ||f - V f||_p and ||f - S f||_p (0 on T_{M^j}).
TaggedValue best_approx(const SpectralFunction& f, const DilationLattice& lattice, int level,
                        double p, int oversample = 16);

/// Feasible envelope t <= f <= T around V_{M^j} f.
struct OneSidedPair {
  SpectralFunction lower;
  SpectralFunction upper;
  /// Uniform shift; an upper bound for sup |f - V f|.
  double epsilon = 0.0;
  /// ||T - t||_p = 2 epsilon.
  double gap = 0.0;
};

/// epsilon is the smaller of the coefficient l1 norm of f - V f and its grid
/// maximum inflated by the Bernstein factor 1 / (1 - pi sum_i K_i / N_i), so
/// the pair is feasible at every point, not only on the grid.
OneSidedPair one_sided_upper(const SpectralFunction& f, const DilationLattice& lattice, int level,
                             double p, int oversample = 16);

/// sum over alpha in {0,1}^d \ {0} of lambda^{-j [alpha]} E_{M^j}(D^alpha f)_p; M = lambda I.
double sobolev_onesided_bound(const SpectralFunction& f, const DilationLattice& lattice, int level,
                              double p);

/// Grid realization of the averaged local modulus tau_s(f, u)_p for d <= 2.
///
/// Points t and steps h live on a grid of `resolution` points per axis;
/// differences use a grid s times finer, so t + l h stays on it. The local
/// modulus at x is the largest |Delta_h^s f(t)| with t and t + s h in the cube
/// of side s u centred at x. The result is a lower bound of the continuum value.
TaggedValue tau_modulus(const SpectralFunction& f, int s, double u, double p, int resolution = 128);

enum class ModulusFlavor { Total, Mixed, Fractional };

struct ModulusRequest {
  ModulusFlavor flavor = ModulusFlavor::Total;
  /// Difference order for Total (integer) and Fractional.
  double order = 2.0;
  /// Per-axis orders for Mixed.
  std::vector<int> beta;
  double p = 2.0;
  /// lambda in Omega_s(f, lambda M^{-j}).
  double scale = 1.0;

  static ModulusRequest total(int s, double p, double scale = 1.0);
  static ModulusRequest mixed(std::vector<int> beta, double p, double scale = 1.0);
  static ModulusRequest fractional(double s, double p, double scale = 1.0);
};

/// Finite sample set standing in for the continuum of steps.
struct SampleSpec {
  int directions = 32;
  int magnitudes = 64;
  std::uint64_t seed = 7;
};

/// Total: sup over sampled delta with |M^j delta| < scale of ||Delta_delta^s f||_p.
/// Mixed: sup over |delta_i| < scale |m_i|^{-j} of the iterated axis differences.
/// Fractional: sup over |h| <= scale lambda^{-j} (d = 1 or M = lambda I).
/// Axis directions and the boundary magnitude 1 - 1e-6 are always sampled.
double modulus(const SpectralFunction& f, const ModulusRequest& request,
               const DilationLattice& lattice, int level, const SampleSpec& samples = {},
               int oversample = 16);

/// All beta in Z_+^d with [beta] = s.
std::vector<std::vector<int>> multi_indices(int dim, int s);

/// Multiplier |M^{-j} k|^s, without a 2 pi factor.
SpectralFunction fractional_laplacian(const SpectralFunction& f, double s,
                                      const DilationLattice& lattice, int level);

struct KFunctionalValue {
  double value = 0.0;
  /// Level nu of the minimizing V_{M^nu} f; 0 when g = 0 wins.
  int level = 0;
  Method method = Method::NearBestV;
};

/// inf over g in {0} U {V_{M^nu} f : nu >= 1} of ||f - g||_p + ||(-Delta_{M^{-j}})^{s/2} g||_p.
/// nu runs until V_{M^nu} f = f.
KFunctionalValue k_functional(const SpectralFunction& f, double s, const DilationLattice& lattice,
                              int level, double p, int oversample = 16);

/// Smallest nu >= 1 with best_approx(f, nu, p) = 0 (at most 30).
int exact_level(const SpectralFunction& f, const DilationLattice& lattice, double p);

/// ||f||_p + (sum_{nu=1}^{nu_max} m^{(s/d) q nu} E_{M^nu}(f)_p^q)^{1/q};
/// nu_max <= 0 selects exact_level.
double besov_norm(const SpectralFunction& f, const DilationLattice& lattice, double s, double p,
                  double q, int nu_max = 0, int oversample = 16);

/// max over nu and trials of ||phi~_j * T_nu||_p / (m^{(N/d)(nu - j)} ||T_nu||_p)
/// for random T_nu in T_{M^nu}.
double class_Dnjp_ratio(const FunctionalSpec& functional, double order, double p,
                        const DilationLattice& lattice, int level, const std::vector<int>& nu_range,
                        int trials, std::uint64_t seed = 11, int oversample = 16);

struct NsrPair {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// lhs = ||T^{(s)}||_p, rhs = (pi n / sin(pi n delta))^s ||Delta_delta^s T||_p with n the degree of T.
/// Requires d = 1 and 0 < delta <= 1/(2n).
NsrPair nsr_check(const SpectralFunction& t, int s, double delta, double p, int oversample = 16);

/// best_approx / sum_i modulus(mixed(s e_i)).
double jackson_defect(const SpectralFunction& f, const DilationLattice& lattice, int level, int s,
                      double p, const SampleSpec& samples = {}, int oversample = 16);

}  // namespace qi

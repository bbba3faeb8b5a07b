#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <vector>

#include "qi/lattice.hpp"
#include "qi/symbol.hpp"

namespace qi {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Finitely supported Fourier series f(x) = sum_k c_k e^{2 pi i (k, x)} on T^d.
class SpectralFunction {
 public:
  using Map = std::map<Index, Complex>;

  explicit SpectralFunction(int dim = 1);

  static SpectralFunction constant(int dim, Complex value);
  static SpectralFunction exponential(Index k, Complex amplitude = 1.0);
  /// cos(2 pi (k, x)).
  static SpectralFunction cosine(Index k, double amplitude = 1.0);

  int dim() const { return dim_; }
  std::size_t size() const { return coeffs_.size(); }
  bool empty() const { return coeffs_.empty(); }
  const Map& coeffs() const { return coeffs_; }

  Complex coeff(std::span<const std::int64_t> k) const;
  /// Assigning zero removes the frequency from the support.
  void set(const Index& k, Complex value);
  void add(const Index& k, Complex value);

  /// coeff(-k) == conj(coeff(k)) for all k, up to `tol`.
  bool is_real(double tol = 1e-12) const;

  /// max |k_i| over the support, per axis (zeros for the empty function).
  std::vector<std::int64_t> max_abs_frequency() const;

  /// sum |c_k|^2, the squared L2 norm.
  double energy() const;

  Complex operator()(std::span<const double> x) const;

  SpectralFunction& operator+=(const SpectralFunction& other);
  SpectralFunction& operator-=(const SpectralFunction& other);
  SpectralFunction& operator*=(Complex scalar);

  friend SpectralFunction operator+(SpectralFunction a, const SpectralFunction& b) { return a += b; }
  friend SpectralFunction operator-(SpectralFunction a, const SpectralFunction& b) { return a -= b; }
  friend SpectralFunction operator*(Complex s, SpectralFunction a) { return a *= s; }

 private:
  void check_dim(std::span<const std::int64_t> k) const;

  int dim_;
  Map coeffs_;
};

/// max_k |a_k - b_k| over the union of supports.
double max_coeff_diff(const SpectralFunction& a, const SpectralFunction& b);

Complex evaluate(const SpectralFunction& f, std::span<const double> x);

/// Uniform samples on prod_i {n / N_i}, row-major with the last axis fastest.
struct GridSignal {
  std::vector<std::int64_t> sizes;
  std::vector<Complex> values;

  GridSignal(std::vector<std::int64_t> sizes, std::vector<Complex> values);
};

/// Values of f on the uniform grid of the given sizes (FFT synthesis).
/// Frequencies alias modulo N_i when the grid is too coarse.
GridSignal synthesize(const SpectralFunction& f, std::span<const std::int64_t> sizes);

/// Power-of-two grid with N_i >= oversample * (2 max|k_i| + 1).
std::vector<std::int64_t> quadrature_sizes(const SpectralFunction& f, int oversample);

/// Rectangle-rule L_p norm of grid values (grid maximum for p = inf).
double lp_norm(const GridSignal& g, double p);

/// ||f||_p by the rectangle rule on quadrature_sizes(f, oversample).
/// Exact for p = 2 whenever oversample >= 2.
double lp_norm(const SpectralFunction& f, double p, int oversample = 16);

/// (m^{-j} sum_k |a_k|^p)^{1/p} over k in D(M^j); sup for p = inf.
double sequence_norm(std::span<const Complex> a, double p, const DilationLattice& lattice,
                     int level);

/// f(M^{-j} k) for k in D(M^j), evaluated pointwise from the series.
std::vector<Complex> sample_values(const SpectralFunction& f, const DilationLattice& lattice,
                                   int level);

/// Discrete coefficients m^{-j} sum_k g_k e^{-2 pi i (l, M^{-j} k)}, l in D(M^j).
/// `values` must hold m^j samples in index-set order.
SpectralFunction analyze_samples(std::span<const Complex> values, const DilationLattice& lattice,
                                 int level);

/// Coefficients Lambda(j, k) f^(k). Zero products are dropped from the support.
SpectralFunction apply_multiplier(const SymbolFamily& symbol, int level, const SpectralFunction& f);

/// phi~ * f for a sampling functional given by its symbol.
SpectralFunction convolve_functional(const SymbolFamily& functional, int level,
                                     const SpectralFunction& f);

/// S_{M^j} f: restriction of the coefficients to D(M^j).
SpectralFunction partial_sum(const SpectralFunction& f, const DilationLattice& lattice, int level);

/// V_{M^j} f: coefficients weighted by v(M^{-j} k).
SpectralFunction vallee_poussin(const SpectralFunction& f, const DilationLattice& lattice,
                                int level);

/// D^alpha f, multiplier prod_i (2 pi i k_i)^{alpha_i}.
SpectralFunction derivative(const SpectralFunction& f, std::span<const int> alpha);

/// (1 - e^{2 pi i t})^s on the principal branch; exact powers for integer s.
Complex difference_symbol(double t, double s);

/// Delta_h^s f = sum_l (-1)^l binom(s, l) f(. + l h), via the multiplier
/// (1 - e^{2 pi i (k, h)})^s.
SpectralFunction fractional_difference(const SpectralFunction& f, std::span<const double> h,
                                       double s);

/// L1 norm of the kernel sum_{l in D(M^j)} Lambda(j, l) e^{2 pi i (l, x)},
/// computed on a grid refined `oversample` times per axis. Bounds the norm of
/// the multiplier on every L_p, 1 <= p <= inf.
double multiplier_l1_bound(const SymbolFamily& symbol, const DilationLattice& lattice, int level,
                           int oversample = 8);

}  // namespace qi

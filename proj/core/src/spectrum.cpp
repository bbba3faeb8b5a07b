#include "qi/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

#include "qi/fft.hpp"
#include "qi/window.hpp"

namespace qi {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::int64_t floor_mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

void check_p(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("L_p exponent must satisfy p >= 1");
}

std::int64_t flat_position(std::span<const std::int64_t> k, std::span<const std::int64_t> sizes) {
  std::int64_t flat = 0;
  for (std::size_t axis = 0; axis < sizes.size(); ++axis) {
    flat = flat * sizes[axis] + floor_mod(k[axis], sizes[axis]);
  }
  return flat;
}

}  // namespace

SpectralFunction::SpectralFunction(int dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
}

SpectralFunction SpectralFunction::constant(int dim, Complex value) {
  SpectralFunction f(dim);
  f.set(Index(static_cast<std::size_t>(dim), 0), value);
  return f;
}

SpectralFunction SpectralFunction::exponential(Index k, Complex amplitude) {
  SpectralFunction f(static_cast<int>(k.size()));
  f.set(k, amplitude);
  return f;
}

SpectralFunction SpectralFunction::cosine(Index k, double amplitude) {
  SpectralFunction f(static_cast<int>(k.size()));
  Index neg = k;
  for (auto& v : neg) v = -v;
  f.add(k, amplitude / 2.0);
  f.add(neg, amplitude / 2.0);
  return f;
}

void SpectralFunction::check_dim(std::span<const std::int64_t> k) const {
  if (static_cast<int>(k.size()) != dim_) throw std::invalid_argument("frequency dimension mismatch");
}

Complex SpectralFunction::coeff(std::span<const std::int64_t> k) const {
  check_dim(k);
  auto it = coeffs_.find(Index(k.begin(), k.end()));
  return it == coeffs_.end() ? Complex{} : it->second;
}

void SpectralFunction::set(const Index& k, Complex value) {
  check_dim(k);
  if (value == Complex{}) {
    coeffs_.erase(k);
  } else {
    coeffs_[k] = value;
  }
}

void SpectralFunction::add(const Index& k, Complex value) {
  check_dim(k);
  auto [it, inserted] = coeffs_.try_emplace(k, value);
  if (!inserted) {
    it->second += value;
    if (it->second == Complex{}) coeffs_.erase(it);
  }
}

bool SpectralFunction::is_real(double tol) const {
  Index neg(static_cast<std::size_t>(dim_));
  for (const auto& [k, c] : coeffs_) {
    for (int i = 0; i < dim_; ++i) neg[i] = -k[i];
    if (std::abs(coeff(neg) - std::conj(c)) > tol) return false;
  }
  return true;
}

std::vector<std::int64_t> SpectralFunction::max_abs_frequency() const {
  std::vector<std::int64_t> m(static_cast<std::size_t>(dim_), 0);
  for (const auto& [k, c] : coeffs_) {
    for (int i = 0; i < dim_; ++i) m[i] = std::max(m[i], std::abs(k[i]));
  }
  return m;
}

double SpectralFunction::energy() const {
  long double e = 0.0L;
  for (const auto& [k, c] : coeffs_) e += std::norm(c);
  return static_cast<double>(e);
}

Complex SpectralFunction::operator()(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) throw std::invalid_argument("point dimension mismatch");
  Complex sum{};
  for (const auto& [k, c] : coeffs_) {
    double phase = 0.0;
    for (int i = 0; i < dim_; ++i) {
      // reduce per axis to keep the argument small
      const double t = static_cast<double>(k[i]) * x[i];
      phase += t - std::round(t);
    }
    sum += c * std::polar(1.0, kTwoPi * phase);
  }
  return sum;
}

SpectralFunction& SpectralFunction::operator+=(const SpectralFunction& other) {
  if (other.dim_ != dim_) throw std::invalid_argument("dimension mismatch");
  for (const auto& [k, c] : other.coeffs_) add(k, c);
  return *this;
}

SpectralFunction& SpectralFunction::operator-=(const SpectralFunction& other) {
  if (other.dim_ != dim_) throw std::invalid_argument("dimension mismatch");
  for (const auto& [k, c] : other.coeffs_) add(k, -c);
  return *this;
}

SpectralFunction& SpectralFunction::operator*=(Complex scalar) {
  if (scalar == Complex{}) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [k, c] : coeffs_) c *= scalar;
  return *this;
}

double max_coeff_diff(const SpectralFunction& a, const SpectralFunction& b) {
  double worst = 0.0;
  for (const auto& [k, c] : a.coeffs()) worst = std::max(worst, std::abs(c - b.coeff(k)));
  for (const auto& [k, c] : b.coeffs()) worst = std::max(worst, std::abs(c - a.coeff(k)));
  return worst;
}

Complex evaluate(const SpectralFunction& f, std::span<const double> x) { return f(x); }

GridSignal::GridSignal(std::vector<std::int64_t> s, std::vector<Complex> v)
    : sizes(std::move(s)), values(std::move(v)) {
  std::int64_t total = 1;
  for (std::int64_t n : sizes) total *= n;
  if (total != static_cast<std::int64_t>(values.size())) {
    throw std::invalid_argument("grid value count does not match sizes");
  }
}

GridSignal synthesize(const SpectralFunction& f, std::span<const std::int64_t> sizes) {
  if (static_cast<int>(sizes.size()) != f.dim()) throw std::invalid_argument("dimension mismatch");
  std::int64_t total = 1;
  for (std::int64_t n : sizes) total *= n;
  std::vector<Complex> buf(static_cast<std::size_t>(total));
  for (const auto& [k, c] : f.coeffs()) buf[static_cast<std::size_t>(flat_position(k, sizes))] += c;
  dft_inplace(buf, sizes, FftSign::Backward);
  return GridSignal(std::vector<std::int64_t>(sizes.begin(), sizes.end()), std::move(buf));
}

std::vector<std::int64_t> quadrature_sizes(const SpectralFunction& f, int oversample) {
  if (oversample < 1) throw std::invalid_argument("oversample must be positive");
  std::vector<std::int64_t> sizes;
  for (std::int64_t m : f.max_abs_frequency()) {
    sizes.push_back(std::max<std::int64_t>(2, next_pow2(oversample * (2 * m + 1))));
  }
  return sizes;
}

double lp_norm(const GridSignal& g, double p) {
  check_p(p);
  if (g.values.empty()) return 0.0;
  if (std::isinf(p)) {
    double m = 0.0;
    for (const Complex& v : g.values) m = std::max(m, std::abs(v));
    return m;
  }
  long double acc = 0.0L;
  if (p == 2.0) {
    for (const Complex& v : g.values) acc += std::norm(v);
  } else if (p == 1.0) {
    for (const Complex& v : g.values) acc += std::abs(v);
  } else {
    for (const Complex& v : g.values) acc += std::pow(std::abs(v), p);
  }
  const double mean = static_cast<double>(acc / static_cast<long double>(g.values.size()));
  return std::pow(mean, 1.0 / p);
}

double lp_norm(const SpectralFunction& f, double p, int oversample) {
  check_p(p);
  if (f.empty()) return 0.0;
  const auto sizes = quadrature_sizes(f, oversample);
  return lp_norm(synthesize(f, sizes), p);
}

double sequence_norm(std::span<const Complex> a, double p, const DilationLattice& lattice,
                     int level) {
  check_p(p);
  const std::int64_t m = lattice.cardinality(level);
  if (static_cast<std::int64_t>(a.size()) != m) {
    throw std::invalid_argument("sequence length must equal m^j");
  }
  if (std::isinf(p)) {
    double s = 0.0;
    for (const Complex& v : a) s = std::max(s, std::abs(v));
    return s;
  }
  long double acc = 0.0L;
  for (const Complex& v : a) acc += std::pow(std::abs(v), p);
  return std::pow(static_cast<double>(acc / static_cast<long double>(m)), 1.0 / p);
}

std::vector<Complex> sample_values(const SpectralFunction& f, const DilationLattice& lattice,
                                   int level) {
  if (f.dim() != lattice.dim()) throw std::invalid_argument("dimension mismatch");
  const auto nodes = sample_grid(lattice, level);
  std::vector<Complex> out;
  out.reserve(nodes.size());
  for (const auto& x : nodes) out.push_back(f(x));
  return out;
}

SpectralFunction analyze_samples(std::span<const Complex> values, const DilationLattice& lattice,
                                 int level) {
  const SpectralIndexSet set = spectral_index_set(lattice, level);
  if (static_cast<std::int64_t>(values.size()) != set.size()) {
    throw std::invalid_argument("analyze_samples expects exactly m^j values, got " +
                                std::to_string(values.size()));
  }
  const int d = lattice.dim();
  std::vector<std::int64_t> sizes(static_cast<std::size_t>(d));
  std::vector<int> flip(static_cast<std::size_t>(d));
  for (int axis = 0; axis < d; ++axis) {
    sizes[axis] = lattice.extent(axis, level);
    flip[axis] = lattice.signed_power(axis, level) < 0 ? 1 : 0;
  }
  std::vector<Complex> buf(values.size());
  std::int64_t flat = 0;
  Index node(static_cast<std::size_t>(d));
  set.for_each([&](const Index& k) {
    // node M^{-j} k sits at grid position (sign(m_i^j) k_i mod |m_i|^j)
    for (int axis = 0; axis < d; ++axis) node[axis] = flip[axis] ? -k[axis] : k[axis];
    buf[static_cast<std::size_t>(flat_position(node, sizes))] = values[static_cast<std::size_t>(flat)];
    ++flat;
  });
  dft_inplace(buf, sizes, FftSign::Forward);
  const double scale = 1.0 / static_cast<double>(set.size());
  SpectralFunction out(d);
  set.for_each([&](const Index& l) {
    out.set(l, buf[static_cast<std::size_t>(flat_position(l, sizes))] * scale);
  });
  return out;
}

SpectralFunction apply_multiplier(const SymbolFamily& symbol, int level, const SpectralFunction& f) {
  SpectralFunction out(f.dim());
  for (const auto& [k, c] : f.coeffs()) {
    const Complex lambda = symbol(level, k);
    if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag())) {
      throw SymbolDomainError("symbol '" + symbol.label() + "' is undefined at a support frequency",
                              k, level);
    }
    out.set(k, lambda * c);
  }
  return out;
}

SpectralFunction convolve_functional(const SymbolFamily& functional, int level,
                                     const SpectralFunction& f) {
  return apply_multiplier(functional, level, f);
}

SpectralFunction partial_sum(const SpectralFunction& f, const DilationLattice& lattice, int level) {
  if (level <= 0) throw std::invalid_argument("level must be positive");
  SpectralFunction out(f.dim());
  for (const auto& [k, c] : f.coeffs()) {
    if (contains_frequency(lattice, level, k)) out.set(k, c);
  }
  return out;
}

SpectralFunction vallee_poussin(const SpectralFunction& f, const DilationLattice& lattice,
                                int level) {
  SpectralFunction out(f.dim());
  for (const auto& [k, c] : f.coeffs()) {
    const double w = window_value(lattice.scaled(k, level));
    if (w != 0.0) out.set(k, w * c);
  }
  return out;
}

SpectralFunction derivative(const SpectralFunction& f, std::span<const int> alpha) {
  if (static_cast<int>(alpha.size()) != f.dim()) throw std::invalid_argument("dimension mismatch");
  SpectralFunction out(f.dim());
  for (const auto& [k, c] : f.coeffs()) {
    Complex factor = 1.0;
    for (int i = 0; i < f.dim(); ++i) {
      for (int r = 0; r < alpha[i]; ++r) factor *= Complex(0.0, kTwoPi * static_cast<double>(k[i]));
    }
    out.set(k, factor * c);
  }
  return out;
}

Complex difference_symbol(double t, double s) {
  const double frac = t - std::round(t);
  if (frac == 0.0) return s == 0.0 ? Complex(1.0) : Complex{};
  const double half = std::numbers::pi * frac;
  // 1 - e^{i theta} = 2 sin^2(theta/2) - i sin(theta)
  const Complex z(2.0 * std::sin(half) * std::sin(half), -std::sin(2.0 * half));
  const double rounded = std::round(s);
  if (rounded == s && s >= 0.0 && s <= 64.0) {
    Complex r = 1.0;
    for (int i = 0; i < static_cast<int>(rounded); ++i) r *= z;
    return r;
  }
  return std::pow(z, s);
}

SpectralFunction fractional_difference(const SpectralFunction& f, std::span<const double> h,
                                       double s) {
  if (!(s > 0.0)) throw std::invalid_argument("difference order must be positive");
  if (static_cast<int>(h.size()) != f.dim()) throw std::invalid_argument("dimension mismatch");
  SpectralFunction out(f.dim());
  for (const auto& [k, c] : f.coeffs()) {
    double t = 0.0;
    for (int i = 0; i < f.dim(); ++i) {
      const double term = static_cast<double>(k[i]) * h[i];
      t += term - std::round(term);
    }
    out.set(k, difference_symbol(t, s) * c);
  }
  return out;
}

double multiplier_l1_bound(const SymbolFamily& symbol, const DilationLattice& lattice, int level,
                           int oversample) {
  if (oversample < 1) throw std::invalid_argument("oversample must be positive");
  const SpectralIndexSet set = spectral_index_set(lattice, level);
  std::vector<std::int64_t> sizes;
  std::int64_t total = 1;
  for (int axis = 0; axis < lattice.dim(); ++axis) {
    sizes.push_back(lattice.extent(axis, level) * oversample);
    total *= sizes.back();
  }
  std::vector<Complex> buf(static_cast<std::size_t>(total));
  set.for_each([&](const Index& l) {
    buf[static_cast<std::size_t>(flat_position(l, sizes))] += symbol(level, l);
  });
  dft_inplace(buf, sizes, FftSign::Backward);
  return lp_norm(GridSignal(std::move(sizes), std::move(buf)), 1.0);
}

}  // namespace qi

#include "qi/smoothness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "qi/window.hpp"

namespace qi {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxLevel = 30;

void check_p(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("L_p exponent must satisfy p >= 1");
}

double norm_of(const SpectralFunction& f, double p, int oversample) {
  if (p == 2.0) return std::sqrt(f.energy());
  return lp_norm(f, p, oversample);
}

bool is_endpoint(double p) { return p == 1.0 || std::isinf(p); }

bool inside_window_one(const SpectralFunction& f, const DilationLattice& lattice, int level) {
  for (const auto& [k, c] : f.coeffs()) {
    if (window_value(lattice.scaled(k, level)) != 1.0) return false;
  }
  return true;
}

bool inside_level(const SpectralFunction& f, const DilationLattice& lattice, int level) {
  for (const auto& [k, c] : f.coeffs()) {
    if (!contains_frequency(lattice, level, k)) return false;
  }
  return true;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<std::vector<double>> sample_directions(int dim, const SampleSpec& samples) {
  std::vector<std::vector<double>> dirs;
  for (int axis = 0; axis < dim; ++axis) {
    std::vector<double> e(static_cast<std::size_t>(dim), 0.0);
    e[axis] = 1.0;
    dirs.push_back(std::move(e));
  }
  if (dim == 1) return dirs;
  std::mt19937_64 rng(samples.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int n = 0; n < samples.directions; ++n) {
    std::vector<double> u(static_cast<std::size_t>(dim));
    double len = 0.0;
    for (double& v : u) {
      v = normal(rng);
      len += v * v;
    }
    len = std::sqrt(len);
    if (len == 0.0) continue;
    for (double& v : u) v /= len;
    dirs.push_back(std::move(u));
  }
  return dirs;
}

/// Fractions of the admissible step length; `closed` includes the endpoint itself.
std::vector<double> sample_magnitudes(const SampleSpec& samples, bool closed) {
  if (samples.magnitudes < 1) throw std::invalid_argument("need at least one magnitude sample");
  std::vector<double> r;
  for (int i = 1; i < samples.magnitudes; ++i) r.push_back(static_cast<double>(i) / samples.magnitudes);
  r.push_back(closed ? 1.0 : 1.0 - 1e-6);
  return r;
}

}  // namespace

std::string method_tag(Method method) {
  switch (method) {
    case Method::Exact:
      return "exact";
    case Method::NearBestS:
      return "near-best-S";
    case Method::NearBestV:
      return "near-best-V";
    case Method::GridRealized:
      return "grid-realized";
  }
  return "unknown";
}

TaggedValue best_approx(const SpectralFunction& f, const DilationLattice& lattice, int level,
                        double p, int oversample) {
  check_p(p);
  if (level < 1) throw std::invalid_argument("level must be positive");
  if (p == 2.0) {
    long double tail = 0.0L;
    for (const auto& [k, c] : f.coeffs()) {
      if (!contains_frequency(lattice, level, k)) tail += std::norm(c);
    }
    return {std::sqrt(static_cast<double>(tail)), Method::Exact};
  }
  if (!is_endpoint(p)) {
    return {lp_norm(f - partial_sum(f, lattice, level), p, oversample), Method::NearBestS};
  }
  // S f and V f both lie in T_{M^j}; the smaller residual is the tighter bound
  if (inside_level(f, lattice, level)) return {0.0, Method::Exact};
  const double via_v = lp_norm(f - vallee_poussin(f, lattice, level), p, oversample);
  const double via_s = lp_norm(f - partial_sum(f, lattice, level), p, oversample);
  if (via_s < via_v) return {via_s, Method::NearBestS};
  return {via_v, Method::NearBestV};
}

OneSidedPair one_sided_upper(const SpectralFunction& f, const DilationLattice& lattice, int level,
                             double p, int oversample) {
  check_p(p);
  if (!f.is_real()) throw std::invalid_argument("one-sided approximation needs a real-valued f");
  const SpectralFunction centre = vallee_poussin(f, lattice, level);
  const SpectralFunction residual = f - centre;
  double eps = 0.0;
  if (!residual.empty()) {
    double l1 = 0.0;
    for (const auto& [k, c] : residual.coeffs()) l1 += std::abs(c);
    const auto sizes = quadrature_sizes(residual, oversample);
    const auto degree = residual.max_abs_frequency();
    double spread = 0.0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      spread += kPi * static_cast<double>(degree[i]) / static_cast<double>(sizes[i]);
    }
    const double grid_max = lp_norm(synthesize(residual, sizes), kInf);
    const double certified = spread < 1.0 ? grid_max / (1.0 - spread) : kInf;
    eps = std::min(l1, certified);
  }
  const Index zero(static_cast<std::size_t>(f.dim()), 0);
  OneSidedPair pair{centre, centre, eps, 2.0 * eps};
  pair.upper.add(zero, eps);
  pair.lower.add(zero, -eps);
  return pair;
}

double sobolev_onesided_bound(const SpectralFunction& f, const DilationLattice& lattice, int level,
                              double p) {
  if (!lattice.is_isotropic()) throw std::invalid_argument("Sobolev bound needs M = lambda I");
  const int d = lattice.dim();
  const double lambda = std::abs(lattice.diag()[0]);
  double total = 0.0;
  for (int mask = 1; mask < (1 << d); ++mask) {
    std::vector<int> alpha(static_cast<std::size_t>(d));
    int order = 0;
    for (int i = 0; i < d; ++i) {
      alpha[i] = (mask >> i) & 1;
      order += alpha[i];
    }
    const double e = best_approx(derivative(f, alpha), lattice, level, p).value;
    total += std::pow(lambda, -static_cast<double>(level * order)) * e;
  }
  return total;
}

TaggedValue tau_modulus(const SpectralFunction& f, int s, double u, double p, int resolution) {
  check_p(p);
  const int d = f.dim();
  if (d > 2) throw std::invalid_argument("tau modulus is limited to d <= 2");
  if (s < 1) throw std::invalid_argument("difference order must be at least 1");
  if (!(u > 0.0)) throw std::invalid_argument("ball size must be positive");
  if (resolution < 2) throw std::invalid_argument("resolution must be at least 2");

  // a one-dimensional f is handled as a two-dimensional one with a trivial second axis
  const std::int64_t n0 = resolution;
  const std::int64_t n1 = d == 2 ? resolution : 1;
  const std::int64_t fine0 = s * n0;
  const std::int64_t fine1 = d == 2 ? s * n1 : 1;
  std::vector<std::int64_t> fine_sizes{fine0};
  if (d == 2) fine_sizes.push_back(fine1);
  const GridSignal values = synthesize(f, fine_sizes);
  auto at = [&](std::int64_t i0, std::int64_t i1) {
    i0 = ((i0 % fine0) + fine0) % fine0;
    i1 = ((i1 % fine1) + fine1) % fine1;
    return values.values[static_cast<std::size_t>(i0 * fine1 + i1)];
  };
  const auto radius = [&](std::int64_t n) {
    return std::min<std::int64_t>(n, static_cast<std::int64_t>(std::floor(s * u / 2.0 * n + 1e-9)));
  };
  const std::int64_t r0 = radius(n0);
  const std::int64_t r1 = d == 2 ? radius(n1) : 0;

  std::vector<double> weights(static_cast<std::size_t>(s + 1));
  for (int l = 0; l <= s; ++l) weights[l] = ((s - l) % 2 ? -1.0 : 1.0) * binomial(s, l);

  // difference table over start points a and steps b, |b_i| <= 2 r_i
  const std::int64_t w0 = 4 * r0 + 1;
  const std::int64_t w1 = 4 * r1 + 1;
  std::vector<double> table(static_cast<std::size_t>(n0 * n1 * w0 * w1));
  for (std::int64_t a0 = 0; a0 < n0; ++a0) {
    for (std::int64_t a1 = 0; a1 < n1; ++a1) {
      for (std::int64_t b0 = -2 * r0; b0 <= 2 * r0; ++b0) {
        for (std::int64_t b1 = -2 * r1; b1 <= 2 * r1; ++b1) {
          Complex sum{};
          for (int l = 0; l <= s; ++l) sum += weights[l] * at(s * a0 + l * b0, s * a1 + l * b1);
          const std::size_t idx =
              static_cast<std::size_t>(((a0 * n1 + a1) * w0 + (b0 + 2 * r0)) * w1 + (b1 + 2 * r1));
          table[idx] = std::abs(sum);
        }
      }
    }
  }

  std::vector<Complex> local(static_cast<std::size_t>(n0 * n1));
  for (std::int64_t x0 = 0; x0 < n0; ++x0) {
    for (std::int64_t x1 = 0; x1 < n1; ++x1) {
      double best = 0.0;
      for (std::int64_t a0 = x0 - r0; a0 <= x0 + r0; ++a0) {
        for (std::int64_t a1 = x1 - r1; a1 <= x1 + r1; ++a1) {
          const std::int64_t m0 = ((a0 % n0) + n0) % n0;
          const std::int64_t m1 = ((a1 % n1) + n1) % n1;
          // endpoint a + b must stay in the cube around x
          for (std::int64_t b0 = x0 - r0 - a0; b0 <= x0 + r0 - a0; ++b0) {
            for (std::int64_t b1 = x1 - r1 - a1; b1 <= x1 + r1 - a1; ++b1) {
              const std::size_t idx = static_cast<std::size_t>(
                  ((m0 * n1 + m1) * w0 + (b0 + 2 * r0)) * w1 + (b1 + 2 * r1));
              best = std::max(best, table[idx]);
            }
          }
        }
      }
      local[static_cast<std::size_t>(x0 * n1 + x1)] = best;
    }
  }
  std::vector<std::int64_t> coarse{n0};
  if (d == 2) coarse.push_back(n1);
  return {lp_norm(GridSignal(coarse, std::move(local)), p), Method::GridRealized};
}

ModulusRequest ModulusRequest::total(int s, double p, double scale) {
  ModulusRequest r;
  r.flavor = ModulusFlavor::Total;
  r.order = s;
  r.p = p;
  r.scale = scale;
  return r;
}

ModulusRequest ModulusRequest::mixed(std::vector<int> beta, double p, double scale) {
  ModulusRequest r;
  r.flavor = ModulusFlavor::Mixed;
  r.beta = std::move(beta);
  r.p = p;
  r.scale = scale;
  return r;
}

ModulusRequest ModulusRequest::fractional(double s, double p, double scale) {
  ModulusRequest r;
  r.flavor = ModulusFlavor::Fractional;
  r.order = s;
  r.p = p;
  r.scale = scale;
  return r;
}

double modulus(const SpectralFunction& f, const ModulusRequest& request,
               const DilationLattice& lattice, int level, const SampleSpec& samples,
               int oversample) {
  check_p(request.p);
  if (f.dim() != lattice.dim()) throw std::invalid_argument("dimension mismatch");
  if (!(request.scale > 0.0)) throw std::invalid_argument("modulus scale must be positive");
  const int d = lattice.dim();
  std::vector<double> extent(static_cast<std::size_t>(d));
  for (int axis = 0; axis < d; ++axis) extent[axis] = static_cast<double>(lattice.extent(axis, level));
  double sup = 0.0;

  if (request.flavor == ModulusFlavor::Mixed) {
    if (static_cast<int>(request.beta.size()) != d) throw std::invalid_argument("beta has wrong dimension");
    std::vector<int> active;
    for (int axis = 0; axis < d; ++axis) {
      if (request.beta[axis] < 0) throw std::invalid_argument("negative beta entry");
      if (request.beta[axis] > 0) active.push_back(axis);
    }
    if (active.empty()) return norm_of(f, request.p, oversample);
    const auto mags = sample_magnitudes(samples, false);
    std::vector<std::size_t> pick(active.size(), 0);
    std::vector<double> step(static_cast<std::size_t>(d), 0.0);
    while (true) {
      for (std::size_t a = 0; a < active.size(); ++a) {
        step[active[a]] = request.scale * mags[pick[a]] / extent[active[a]];
      }
      SpectralFunction g(d);
      for (const auto& [k, c] : f.coeffs()) {
        Complex factor = 1.0;
        for (int axis : active) {
          factor *= difference_symbol(static_cast<double>(k[axis]) * step[axis], request.beta[axis]);
        }
        g.set(k, factor * c);
      }
      sup = std::max(sup, norm_of(g, request.p, oversample));
      std::size_t a = 0;
      while (a < active.size() && ++pick[a] == mags.size()) pick[a++] = 0;
      if (a == active.size()) break;
    }
    return sup;
  }

  const bool fractional = request.flavor == ModulusFlavor::Fractional;
  if (!(request.order > 0.0)) throw std::invalid_argument("difference order must be positive");
  if (!fractional && request.order != std::round(request.order)) {
    throw std::invalid_argument("total modulus needs an integer order");
  }
  if (fractional && d > 1 && !lattice.is_isotropic()) {
    throw std::invalid_argument("fractional modulus needs d = 1 or M = lambda I");
  }
  const auto dirs = sample_directions(d, samples);
  const auto mags = sample_magnitudes(samples, fractional);
  std::vector<double> h(static_cast<std::size_t>(d));
  for (const auto& dir : dirs) {
    for (double r : mags) {
      // |M^j delta| = scale * r for total; |h| = scale * r * lambda^{-j} for fractional
      for (int axis = 0; axis < d; ++axis) h[axis] = request.scale * r * dir[axis] / extent[axis];
      sup = std::max(sup, norm_of(fractional_difference(f, h, request.order), request.p, oversample));
    }
  }
  return sup;
}

std::vector<std::vector<int>> multi_indices(int dim, int s) {
  if (dim < 1 || s < 0) throw std::invalid_argument("invalid multi-index request");
  std::vector<std::vector<int>> out;
  std::vector<int> beta(static_cast<std::size_t>(dim), 0);
  auto rec = [&](auto&& self, int axis, int left) -> void {
    if (axis == dim - 1) {
      beta[axis] = left;
      out.push_back(beta);
      return;
    }
    for (int v = left; v >= 0; --v) {
      beta[axis] = v;
      self(self, axis + 1, left - v);
    }
  };
  rec(rec, 0, s);
  return out;
}

SpectralFunction fractional_laplacian(const SpectralFunction& f, double s,
                                      const DilationLattice& lattice, int level) {
  if (!(s >= 0.0)) throw std::invalid_argument("order must be non-negative");
  if (s == 0.0) return f;
  SpectralFunction out(f.dim());
  for (const auto& [k, c] : f.coeffs()) {
    double r2 = 0.0;
    for (double v : lattice.scaled(k, level)) r2 += v * v;
    if (r2 > 0.0) out.set(k, std::pow(std::sqrt(r2), s) * c);
  }
  return out;
}

int exact_level(const SpectralFunction& f, const DilationLattice& lattice, double p) {
  check_p(p);
  for (int nu = 1; nu <= kMaxLevel; ++nu) {
    const bool done =
        p == 2.0 || !is_endpoint(p) ? inside_level(f, lattice, nu) : inside_window_one(f, lattice, nu);
    if (done) return nu;
  }
  throw std::invalid_argument("function support exceeds the largest supported level");
}

KFunctionalValue k_functional(const SpectralFunction& f, double s, const DilationLattice& lattice,
                              int level, double p, int oversample) {
  check_p(p);
  if (!(s > 0.0)) throw std::invalid_argument("order must be positive");
  KFunctionalValue best{norm_of(f, p, oversample), 0, Method::NearBestV};
  if (f.empty()) return best;
  const int top = exact_level(f, lattice, kInf);
  for (int nu = 1; nu <= top; ++nu) {
    const SpectralFunction g = vallee_poussin(f, lattice, nu);
    const double value = norm_of(f - g, p, oversample) +
                         norm_of(fractional_laplacian(g, s, lattice, level), p, oversample);
    if (value < best.value) best = {value, nu, Method::NearBestV};
  }
  return best;
}

double besov_norm(const SpectralFunction& f, const DilationLattice& lattice, double s, double p,
                  double q, int nu_max, int oversample) {
  check_p(p);
  if (!(q >= 1.0)) throw std::invalid_argument("q must satisfy q >= 1");
  if (!(s > 0.0)) throw std::invalid_argument("smoothness must be positive");
  const double base = norm_of(f, p, oversample);
  if (f.empty()) return 0.0;
  const int top = nu_max > 0 ? nu_max : exact_level(f, lattice, p);
  const double m = static_cast<double>(lattice.det());
  const double d = lattice.dim();
  double acc = 0.0;
  for (int nu = 1; nu <= top; ++nu) {
    const double e = best_approx(f, lattice, nu, p, oversample).value;
    if (e == 0.0) continue;
    const double weighted = std::pow(m, s / d * nu) * e;
    acc = std::isinf(q) ? std::max(acc, weighted) : acc + std::pow(weighted, q);
  }
  return base + (std::isinf(q) ? acc : std::pow(acc, 1.0 / q));
}

double class_Dnjp_ratio(const FunctionalSpec& functional, double order, double p,
                        const DilationLattice& lattice, int level, const std::vector<int>& nu_range,
                        int trials, std::uint64_t seed, int oversample) {
  check_p(p);
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  const SymbolFamily symbol = functional_symbol(functional, lattice);
  const double m = static_cast<double>(lattice.det());
  const int d = lattice.dim();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  double worst = 0.0;
  for (int nu : nu_range) {
    if (nu < level) throw std::invalid_argument("class ratio needs nu >= j");
    const SpectralIndexSet set = spectral_index_set(lattice, nu);
    const double scale = std::pow(m, order / d * (nu - level));
    for (int t = 0; t < trials; ++t) {
      SpectralFunction poly(d);
      if (set.size() <= 1024) {
        set.for_each([&](const Index& k) { poly.set(k, Complex(normal(rng), normal(rng))); });
      } else {
        std::vector<std::uniform_int_distribution<std::int64_t>> axis_pick;
        for (int axis = 0; axis < d; ++axis) {
          axis_pick.emplace_back(set.lower()[axis], set.lower()[axis] + set.counts()[axis] - 1);
        }
        for (int n = 0; n < 256; ++n) {
          Index k(static_cast<std::size_t>(d));
          for (int axis = 0; axis < d; ++axis) k[axis] = axis_pick[axis](rng);
          poly.set(k, Complex(normal(rng), normal(rng)));
        }
      }
      const double denom = scale * norm_of(poly, p, oversample);
      if (denom == 0.0) continue;
      worst = std::max(worst, norm_of(apply_multiplier(symbol, level, poly), p, oversample) / denom);
    }
  }
  return worst;
}

NsrPair nsr_check(const SpectralFunction& t, int s, double delta, double p, int oversample) {
  check_p(p);
  if (t.dim() != 1) throw std::invalid_argument("Nikolskii-Stechkin-Riesz check is one-dimensional");
  if (s < 1) throw std::invalid_argument("derivative order must be at least 1");
  const std::int64_t n = t.max_abs_frequency()[0];
  if (!(delta > 0.0) || (n > 0 && delta > 1.0 / (2.0 * static_cast<double>(n)) * (1.0 + 1e-12))) {
    throw std::invalid_argument("step must lie in (0, 1/(2n)]");
  }
  const std::vector<int> alpha{s};
  const double lhs = norm_of(derivative(t, alpha), p, oversample);
  if (n == 0) return {lhs, 0.0};
  const double nd = static_cast<double>(n);
  const std::vector<double> h{delta};
  const double factor = std::pow(kPi * nd / std::sin(kPi * nd * delta), s);
  return {lhs, factor * norm_of(fractional_difference(t, h, s), p, oversample)};
}

double jackson_defect(const SpectralFunction& f, const DilationLattice& lattice, int level, int s,
                      double p, const SampleSpec& samples, int oversample) {
  const double e = best_approx(f, lattice, level, p, oversample).value;
  if (e == 0.0) return 0.0;
  double denom = 0.0;
  for (int axis = 0; axis < lattice.dim(); ++axis) {
    std::vector<int> beta(static_cast<std::size_t>(lattice.dim()), 0);
    beta[axis] = s;
    denom += modulus(f, ModulusRequest::mixed(beta, p), lattice, level, samples, oversample);
  }
  return denom == 0.0 ? kInf : e / denom;
}

}  // namespace qi

#include "qi/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qi/window.hpp"

namespace qi {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTaylorSwitch = 1e-4;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

double euclidean(std::span<const double> xi) {
  double sum = 0.0;
  for (double v : xi) sum += v * v;
  return std::sqrt(sum);
}

/// x / sin(x) with the removable singularity filled in.
double inverse_sinc(double x) {
  if (std::abs(x) < kTaylorSwitch) {
    const double x2 = x * x;
    return 1.0 + x2 / 6.0 + 7.0 * x2 * x2 / 360.0 + 31.0 * x2 * x2 * x2 / 15120.0;
  }
  return x / std::sin(x);
}

Complex ipow(Complex z, int n) {
  Complex r = 1.0;
  for (int i = 0; i < n; ++i) r *= z;
  return r;
}

}  // namespace

double sinc(double x) {
  if (std::abs(x) < kTaylorSwitch) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0 - x2 * x2 * x2 / 5040.0;
  }
  return std::sin(x) / x;
}

void validate(const FunctionalSpec& spec, int dim) {
  std::visit(Overloaded{
                 [](const Delta&) {},
                 [](const Average& a) {
                   if (!(a.sigma > 0.0 && a.sigma <= 1.0)) {
                     throw std::invalid_argument("Average sigma must lie in (0, 1]");
                   }
                 },
                 [dim](const DiscreteWeights& w) {
                   if (w.weights.empty() || w.weights.size() != w.shifts.size()) {
                     throw std::invalid_argument("DiscreteWeights needs one shift per weight");
                   }
                   const double total = std::accumulate(w.weights.begin(), w.weights.end(), 0.0);
                   if (std::abs(total - 1.0) > 1e-12) {
                     throw std::invalid_argument("DiscreteWeights weights must sum to 1");
                   }
                   for (const auto& tau : w.shifts) {
                     if (static_cast<int>(tau.size()) != dim) {
                       throw std::invalid_argument("DiscreteWeights shift has wrong dimension");
                     }
                   }
                 },
                 [dim](const DifferentialSymbol& ds) {
                   if (ds.terms.empty()) throw std::invalid_argument("DifferentialSymbol has no terms");
                   for (const auto& t : ds.terms) {
                     if (static_cast<int>(t.beta.size()) != dim) {
                       throw std::invalid_argument("DifferentialSymbol multi-index has wrong dimension");
                     }
                     for (int b : t.beta) {
                       if (b < 0) throw std::invalid_argument("negative multi-index entry");
                     }
                   }
                 },
             },
             spec);
}

void validate(const KernelSpec& spec, int dim) {
  std::visit(Overloaded{
                 [](const Dirichlet&) {},
                 [](const ValleePoussin&) {},
                 [](const CorrectedDirichlet& c) {
                   if (!(c.sigma > 0.0 && c.sigma <= 1.0)) {
                     throw std::invalid_argument("CorrectedDirichlet sigma must lie in (0, 1]");
                   }
                 },
                 [dim](const Riesz& r) {
                   if (!(r.s > 0.0)) throw std::invalid_argument("Riesz s must be positive");
                   if (!(r.gamma > (dim - 1) / 2.0)) {
                     throw std::invalid_argument("Riesz gamma must exceed (d - 1) / 2");
                   }
                 },
                 [dim](const DualDirichlet& dd) { validate(dd.functional, dim); },
             },
             spec);
}

std::string label(const FunctionalSpec& spec) {
  return std::visit(
      Overloaded{
          [](const Delta&) -> std::string { return "Delta"; },
          [](const Average& a) -> std::string { return "Average(" + fmt(a.sigma) + ")"; },
          [](const DiscreteWeights& w) -> std::string {
            std::string out = "DiscreteWeights(";
            for (std::size_t i = 0; i < w.weights.size(); ++i) {
              out += (i ? "," : "") + fmt(w.weights[i]);
            }
            return out + ")";
          },
          [](const DifferentialSymbol& ds) -> std::string {
            return "DifferentialSymbol(" + std::to_string(ds.terms.size()) + " terms)";
          },
      },
      spec);
}

std::string label(const KernelSpec& spec) {
  return std::visit(
      Overloaded{
          [](const Dirichlet&) -> std::string { return "Dirichlet"; },
          [](const ValleePoussin&) -> std::string { return "ValleePoussin"; },
          [](const CorrectedDirichlet& c) -> std::string {
            return "CorrectedDirichlet(" + fmt(c.sigma) + ")";
          },
          [](const Riesz& r) -> std::string {
            return "Riesz(" + fmt(r.s) + "," + fmt(r.gamma) + ")";
          },
          [](const DualDirichlet& dd) -> std::string {
            return "DualDirichlet(" + label(dd.functional) + ")";
          },
      },
      spec);
}

Profile functional_profile(const FunctionalSpec& spec, const DilationLattice& lattice) {
  validate(spec, lattice.dim());
  return std::visit(
      Overloaded{
          [](const Delta&) -> Profile {
            return [](std::span<const double>) { return Complex(1.0); };
          },
          [](const Average& a) -> Profile {
            return [sigma = a.sigma](std::span<const double> xi) {
              double r = 1.0;
              for (double v : xi) r *= sinc(kPi * sigma * v);
              return Complex(r);
            };
          },
          [&lattice](const DiscreteWeights& w) -> Profile {
            std::vector<int> m(lattice.diag().begin(), lattice.diag().end());
            return [w, m](std::span<const double> xi) {
              // (l, M^{-j-1} tau) = sum_i xi_i tau_i / m_i
              Complex sum{};
              for (std::size_t r = 0; r < w.weights.size(); ++r) {
                double phase = 0.0;
                for (std::size_t i = 0; i < xi.size(); ++i) {
                  phase += xi[i] * static_cast<double>(w.shifts[r][i]) / m[i];
                }
                sum += w.weights[r] * std::polar(1.0, 2.0 * kPi * phase);
              }
              return sum;
            };
          },
          [](const DifferentialSymbol& ds) -> Profile {
            return [ds](std::span<const double> xi) {
              Complex sum{};
              for (const auto& t : ds.terms) {
                Complex term = t.coeff;
                for (std::size_t i = 0; i < xi.size(); ++i) {
                  term *= ipow(Complex(0.0, 2.0 * kPi * xi[i]), t.beta[i]);
                }
                sum += term;
              }
              return sum;
            };
          },
      },
      spec);
}

Profile kernel_profile(const KernelSpec& spec, const DilationLattice& lattice) {
  validate(spec, lattice.dim());
  return std::visit(
      Overloaded{
          [](const Dirichlet&) -> Profile {
            return [](std::span<const double>) { return Complex(1.0); };
          },
          [](const ValleePoussin&) -> Profile {
            return [](std::span<const double> xi) { return Complex(window_value(xi)); };
          },
          [](const CorrectedDirichlet& c) -> Profile {
            return [sigma = c.sigma](std::span<const double> xi) {
              double r = 1.0;
              for (double v : xi) r *= inverse_sinc(kPi * sigma * v);
              return Complex(r);
            };
          },
          [&lattice](const Riesz& rz) -> Profile {
            const double cd = 4.0 * std::sqrt(static_cast<double>(lattice.dim()));
            return [rz, cd](std::span<const double> xi) {
              const double base = 1.0 - std::pow(cd * euclidean(xi), rz.s);
              return Complex(base > 0.0 ? std::pow(base, rz.gamma) : 0.0);
            };
          },
          [&lattice](const DualDirichlet& dd) -> Profile {
            return [inner = functional_profile(dd.functional, lattice)](std::span<const double> xi) {
              const Complex f = inner(xi);
              if (f == Complex{}) return Complex(std::numeric_limits<double>::quiet_NaN());
              return 1.0 / f;
            };
          },
      },
      spec);
}

SymbolFamily kernel_symbol(const KernelSpec& spec, const DilationLattice& lattice) {
  const std::string name = label(spec);
  return SymbolFamily(
      [lattice, profile = kernel_profile(spec, lattice), name](int level,
                                                               std::span<const std::int64_t> k) {
        if (!contains_frequency(lattice, level, k)) return Complex{};
        const Complex value = profile(lattice.scaled(k, level));
        if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
          throw SymbolDomainError("kernel " + name + " is undefined at a frequency",
                                  Index(k.begin(), k.end()), level);
        }
        return value;
      },
      name);
}

SymbolFamily functional_symbol(const FunctionalSpec& spec, const DilationLattice& lattice) {
  return scaled_profile(lattice, functional_profile(spec, lattice), label(spec));
}

SymbolFamily defect_symbol(const KernelSpec& kernel, const FunctionalSpec& functional,
                           const DilationLattice& lattice) {
  const SymbolFamily phi = kernel_symbol(kernel, lattice);
  const SymbolFamily dual = functional_symbol(functional, lattice);
  return SymbolFamily(
      [phi, dual](int level, std::span<const std::int64_t> k) {
        const Complex a = phi(level, k);
        return a == Complex{} ? Complex(1.0) : 1.0 - a * dual(level, k);
      },
      "1-" + phi.label() + "*" + dual.label());
}

SymbolFamily smooth_window(const DilationLattice& lattice, double delta) {
  return lattice_window(lattice, delta);
}

SymbolFamily three_point_alternative_symbol(const DilationLattice& lattice) {
  return SymbolFamily(
      [lattice](int level, std::span<const std::int64_t> k) {
        double r = 1.0;
        for (int axis = 0; axis < lattice.dim(); ++axis) {
          const double c = std::cos(2.0 * kPi * static_cast<double>(k[axis]) /
                                    static_cast<double>(lattice.signed_power(axis, level + 1)));
          r *= c * c;
        }
        return Complex(r);
      },
      "cos^2(2 pi l / m^{j+1})");
}

double compat_radius(const KernelSpec& kernel, const FunctionalSpec& functional,
                     const DilationLattice& lattice, int level, double tol) {
  const SymbolFamily phi = kernel_symbol(kernel, lattice);
  const SymbolFamily dual = functional_symbol(functional, lattice);
  for (int eighths = 8; eighths >= 1; --eighths) {
    const double rho = eighths / 8.0;
    bool ok = true;
    spectral_index_set(lattice, level, rho).for_each([&](const Index& k) {
      if (ok && std::abs(phi(level, k) * dual(level, k) - 1.0) > tol) ok = false;
    });
    if (ok) return rho;
  }
  return 0.0;
}

double compat_order_at(const KernelSpec& kernel, const FunctionalSpec& functional,
                       const DilationLattice& lattice, int level, double delta, double s) {
  if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must lie in (0, 1]");
  const SymbolFamily psi = defect_symbol(kernel, functional, lattice);
  double worst = 0.0;
  spectral_index_set(lattice, level, delta).for_each([&](const Index& k) {
    const double r = euclidean(lattice.scaled(k, level));
    if (r == 0.0) return;
    worst = std::max(worst, std::abs(psi(level, k)) / std::pow(r, s));
  });
  return worst;
}

std::vector<double> compat_order_profile(const KernelSpec& kernel, const FunctionalSpec& functional,
                                         const DilationLattice& lattice,
                                         const std::vector<int>& levels, double delta, double s) {
  std::vector<double> out;
  out.reserve(levels.size());
  for (int j : levels) out.push_back(compat_order_at(kernel, functional, lattice, j, delta, s));
  return out;
}

double compat_order(const KernelSpec& kernel, const FunctionalSpec& functional,
                    const DilationLattice& lattice, const std::vector<int>& levels, double delta,
                    double s) {
  const auto values = compat_order_profile(kernel, functional, lattice, levels, delta, s);
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

double quotient_limit_at_zero(const KernelSpec& kernel, const FunctionalSpec& functional,
                              const DilationLattice& lattice, double s, QuotientDirection direction) {
  const Profile phi = kernel_profile(kernel, lattice);
  const Profile dual = functional_profile(functional, lattice);
  const int d = lattice.dim();
  auto quotient = [&](double t) -> Complex {
    std::vector<double> xi(static_cast<std::size_t>(d), t / std::sqrt(static_cast<double>(d)));
    const Complex psi = 1.0 - phi(xi) * dual(xi);
    const double r = std::pow(t, s);
    if (direction == QuotientDirection::Upper) return psi / r;
    if (psi == Complex{}) {
      throw SymbolDomainError("lower quotient is undefined near the origin",
                              Index(static_cast<std::size_t>(d), 0), 0);
    }
    return r / psi;
  };
  const Complex q1 = quotient(1e-3);
  const Complex q2 = quotient(5e-4);
  const double a1 = std::abs(q1);
  const double a2 = std::abs(q2);
  if (a2 <= 0.75 * a1 || (a1 == 0.0 && a2 == 0.0)) return 0.0;
  if (a2 > 1.5 * a1) {
    throw SymbolDomainError("quotient symbol is unbounded at the origin",
                            Index(static_cast<std::size_t>(d), 0), 0);
  }
  // O(t^2) corrections cancel under Richardson extrapolation
  return ((4.0 * q2 - q1) / 3.0).real();
}

SymbolFamily fractional_condition_symbols(const KernelSpec& kernel, const FunctionalSpec& functional,
                                          const DilationLattice& lattice, double s, double delta,
                                          QuotientDirection direction) {
  if (!(delta > 0.0)) throw std::invalid_argument("window scale must be positive");
  if (!(s > 0.0)) throw std::invalid_argument("quotient order must be positive");
  const SymbolFamily psi = defect_symbol(kernel, functional, lattice);
  const double at_zero = quotient_limit_at_zero(kernel, functional, lattice, s, direction);
  const bool upper = direction == QuotientDirection::Upper;
  return SymbolFamily(
      [lattice, psi, at_zero, upper, s, delta](int level, std::span<const std::int64_t> k) {
        std::vector<double> xi = lattice.scaled(k, level);
        const double r = euclidean(xi);
        for (double& v : xi) v = upper ? v / delta : v * delta;
        const double w = window_value(xi);
        if (r == 0.0) return Complex(at_zero * w);
        if (w == 0.0) return Complex{};
        const Complex defect = psi(level, k);
        if (upper) return defect / std::pow(r, s) * w;
        if (defect == Complex{}) {
          throw SymbolDomainError("defect symbol vanishes inside the window",
                                  Index(k.begin(), k.end()), level);
        }
        return std::pow(r, s) / defect * w;
      },
      std::string(upper ? "upper" : "lower") + "(" + psi.label() + ")");
}

double functional_Lqj_norm(const FunctionalSpec& spec, double q, const DilationLattice& lattice,
                           int level, int oversample) {
  const auto* avg = std::get_if<Average>(&spec);
  if (avg == nullptr) {
    throw std::invalid_argument("L_{q,j} norm needs a functional with a spatial density (Average)");
  }
  validate(spec, lattice.dim());
  if (!(q >= 1.0)) throw std::invalid_argument("q must satisfy q >= 1");
  if (oversample < 1) throw std::invalid_argument("oversample must be positive");
  const int d = lattice.dim();
  const double sigma = avg->sigma;
  const double height = static_cast<double>(lattice.cardinality(level)) / std::pow(sigma, d);
  const auto nodes = sample_grid(lattice, level);
  std::vector<double> half_width(static_cast<std::size_t>(d));
  std::vector<double> cell(static_cast<std::size_t>(d));
  for (int axis = 0; axis < d; ++axis) {
    cell[axis] = 1.0 / static_cast<double>(lattice.extent(axis, level));
    half_width[axis] = sigma * cell[axis] / 2.0;
  }
  // 8 | N keeps the density's jump points off the midpoints for sigma in eighths
  const std::int64_t n = 8 * static_cast<std::int64_t>(oversample);
  std::int64_t total = 1;
  for (int axis = 0; axis < d; ++axis) total *= n;

  const double inv_m = 1.0 / static_cast<double>(nodes.size());
  long double acc = 0.0L;
  double sup = 0.0;
  std::vector<double> x(static_cast<std::size_t>(d));
  for (std::int64_t flat = 0; flat < total; ++flat) {
    std::int64_t rest = flat;
    for (int axis = d - 1; axis >= 0; --axis) {
      x[axis] = (static_cast<double>(rest % n) + 0.5) / static_cast<double>(n) * cell[axis];
      rest /= n;
    }
    double sum = 0.0;
    for (const auto& node : nodes) {
      bool inside = true;
      for (int axis = 0; axis < d && inside; ++axis) {
        double y = x[axis] - node[axis];
        y -= std::floor(y + 0.5);
        inside = y >= -half_width[axis] && y < half_width[axis];
      }
      if (inside) sum += height;
    }
    const double g = sum * inv_m;
    sup = std::max(sup, g);
    if (!std::isinf(q)) acc += std::pow(g, q);
  }
  if (std::isinf(q)) return sup;
  return std::pow(static_cast<double>(acc / static_cast<long double>(total)), 1.0 / q);
}

}  // namespace qi

#include "qi/window.hpp"

#include <cmath>

namespace qi {

namespace {

double bump(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }

}  // namespace

double window_factor(double t) {
  const double a = std::abs(t);
  if (a <= 0.25) return 1.0;
  if (a >= 0.375) return 0.0;
  const double u = (0.375 - a) / 0.125;
  const double g = bump(u);
  const double h = bump(1.0 - u);
  return g / (g + h);
}

double window_value(std::span<const double> xi) {
  double v = 1.0;
  for (double t : xi) {
    v *= window_factor(t);
    if (v == 0.0) break;
  }
  return v;
}

}  // namespace qi

#pragma once

#include <span>

namespace qi {

/// One-dimensional factor of the smooth window: 1 on |t| <= 1/4, 0 on
/// |t| >= 3/8, and g(u) / (g(u) + g(1-u)) in between, where
/// u = (3/8 - |t|) / (1/8) and g(u) = exp(-1/u) for u > 0.
double window_factor(double t);

/// v(xi) = prod_i window_factor(xi_i).
double window_value(std::span<const double> xi);

}  // namespace qi

#pragma once

#include <span>

namespace solvq::molint {

/// Fills out[n] = F_n(t) = \int_0^1 u^{2n} exp(-t u^2) du for n = 0..out.size()-1.
///
/// Small t: power series for the highest order, then downward recursion.
/// Large t: F_0 from erf, then upward recursion (stable once t >> n).
void boys(double t, std::span<double> out);

double boys(int n, double t);

}  // namespace solvq::molint

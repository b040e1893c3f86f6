#include "solvq/molint/boys.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace solvq::molint {

namespace {
constexpr double kSeriesLimit = 35.0;
}

void boys(double t, std::span<double> out) {
  if (out.empty()) return;
  const int n_max = static_cast<int>(out.size()) - 1;
  const double et = std::exp(-t);
  if (t < kSeriesLimit) {
    double term = 1.0 / (2 * n_max + 1);
    double sum = term;
    for (int k = 1; k < 400; ++k) {
      term *= 2.0 * t / (2 * n_max + 2 * k + 1);
      sum += term;
      if (term < 1e-17 * sum) break;
    }
    out[static_cast<std::size_t>(n_max)] = et * sum;
    for (int n = n_max - 1; n >= 0; --n) {
      out[static_cast<std::size_t>(n)] = (2.0 * t * out[static_cast<std::size_t>(n + 1)] + et) / (2 * n + 1);
    }
    return;
  }
  out[0] = 0.5 * std::sqrt(std::numbers::pi / t) * std::erf(std::sqrt(t));
  for (int n = 0; n < n_max; ++n) {
    out[static_cast<std::size_t>(n + 1)] = ((2 * n + 1) * out[static_cast<std::size_t>(n)] - et) / (2.0 * t);
  }
}

double boys(int n, double t) {
  std::vector<double> f(static_cast<std::size_t>(n) + 1);
  boys(t, f);
  return f.back();
}

}  // namespace solvq::molint

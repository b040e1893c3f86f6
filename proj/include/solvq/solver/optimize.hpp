#pragma once

#include "solvq/solver/free_energy.hpp"

#include <limits>

namespace solvq::solver {

enum class OptimizerKind { gradient_descent, rotosolve, bfgs };

std::string to_string(OptimizerKind k);
OptimizerKind optimizer_from_string(const std::string& name);

struct OptimizerOptions {
  OptimizerKind kind = OptimizerKind::gradient_descent;
  /// Gradient-descent step; also the first line-search step of BFGS.
  double step = 0.2;
  /// Halve the step and reject on an increase, grow it by 1.2 on success.
  bool adaptive_step = true;
  int max_iterations = 500;
  /// Converged once |dG| < tolerance for `window` consecutive iterations.
  double tolerance = 1e-8;
  int window = 3;
  /// Gradient-based methods also stop when |grad| drops below this.
  double gradient_tolerance = 1e-7;
  GradientMethod gradient = GradientMethod::adjoint;
  double fd_step = 1e-5;
};

struct TraceRow {
  int iteration = 0;
  double value = 0.0;
  double grad_norm = std::numeric_limits<double>::quiet_NaN();
};

struct OptimizationResult {
  Vec theta;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  std::vector<TraceRow> trace;
};

/// Gradient descent, quasi-Newton BFGS (GSL's bfgs2 with its line search),
/// or a sequential single-parameter sinusoidal fit.
/// Shot-mode evaluations draw seeds seed, seed+1, ... in call order.
OptimizationResult minimize(const FreeEnergy& cost, Vec theta0, const OptimizerOptions& options,
                            std::uint64_t seed = 0);

}  // namespace solvq::solver

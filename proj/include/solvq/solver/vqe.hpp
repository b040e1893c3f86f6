#pragma once

#include "solvq/solver/excitations.hpp"
#include "solvq/solver/report.hpp"

namespace solvq::solver {

struct VqeConfig {
  qsim::AnsatzKind ansatz = qsim::AnsatzKind::givens;
  /// Repetitions of the excitation list, each with its own parameters.
  int layers = 1;
  SelectionOptions selection;
  /// Explicit excitation list; overrides `selection` when set.
  std::optional<std::vector<qsim::Excitation>> excitations;
  OptimizerOptions optimizer;
  ShotSettings shots;
  std::uint64_t seed = 0;
  /// Initial parameters: zero (the reference state) or uniform in
  /// [-init_scale, init_scale] drawn from `seed`.
  bool random_init = false;
  double init_scale = 0.05;
  std::optional<Vec> initial_theta;
};

/// Gas-phase VQE on <H0>.
SolvationReport run_vqe(const VqeConfig& config, const Problem& problem);

/// VQE on the free energy in solution, charges refreshed every evaluation.
SolvationReport run_pcm_vqe(const VqeConfig& config, const Problem& problem);

}  // namespace solvq::solver

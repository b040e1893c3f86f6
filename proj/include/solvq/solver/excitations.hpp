#pragma once

#include "solvq/qsim/ansatz.hpp"
#include "solvq/solver/problem.hpp"

namespace solvq::solver {

/// Every spin-conserving single and double excitation out of the closed-shell
/// reference: doubles (alpha-alpha, beta-beta, alpha-beta) first, then singles.
std::vector<qsim::Excitation> all_excitations(int n_orbitals, int n_alpha, int n_beta);

struct SelectionOptions {
  bool adaptive = true;
  double threshold = 1e-6;
  /// Screen with the solvated free energy instead of the gas-phase energy.
  bool use_solvent = false;
};

/// Adaptive mode keeps excitations whose gradient at theta = 0 satisfies
/// |dG/dtheta_k| >= threshold. Other gates are the identity at theta = 0, so
/// this equals screening each gate on its own. An empty selection warns and
/// falls back to the full list.
std::vector<qsim::Excitation> select_excitations(const Problem& problem, const SelectionOptions& options,
                                                 qsim::AnsatzKind kind = qsim::AnsatzKind::givens);

}  // namespace solvq::solver

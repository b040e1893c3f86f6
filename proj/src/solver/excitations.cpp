#include "solvq/solver/excitations.hpp"

#include "solvq/solver/free_energy.hpp"

namespace solvq::solver {

std::vector<qsim::Excitation> all_excitations(int m, int n_alpha, int n_beta) {
  if (n_alpha > m || n_beta > m || n_alpha < 0 || n_beta < 0) throw InputError("occupation exceeds the orbital count");
  std::vector<int> occ_a, vir_a, occ_b, vir_b;
  for (int p = 0; p < m; ++p) {
    (p < n_alpha ? occ_a : vir_a).push_back(p);
    (p < n_beta ? occ_b : vir_b).push_back(p + m);
  }
  std::vector<qsim::Excitation> out;
  auto same_spin = [&](const std::vector<int>& occ, const std::vector<int>& vir) {
    for (std::size_t i = 0; i < occ.size(); ++i)
      for (std::size_t j = i + 1; j < occ.size(); ++j)
        for (std::size_t a = 0; a < vir.size(); ++a)
          for (std::size_t b = a + 1; b < vir.size(); ++b) out.push_back({{occ[i], occ[j]}, {vir[a], vir[b]}});
  };
  same_spin(occ_a, vir_a);
  same_spin(occ_b, vir_b);
  for (int i : occ_a)
    for (int j : occ_b)
      for (int a : vir_a)
        for (int b : vir_b) out.push_back({{i, j}, {a, b}});
  for (int i : occ_a)
    for (int a : vir_a) out.push_back({{i}, {a}});
  for (int i : occ_b)
    for (int a : vir_b) out.push_back({{i}, {a}});
  return out;
}

std::vector<qsim::Excitation> select_excitations(const Problem& problem, const SelectionOptions& options,
                                                 qsim::AnsatzKind kind) {
  if (options.threshold < 0.0) throw InputError("excitation threshold must be >= 0");
  auto all = all_excitations(problem.n_orbitals(), problem.n_alpha(), problem.n_beta());
  if (!options.adaptive || all.empty()) return all;
  if (options.use_solvent && !problem.solvated()) throw InputError("solvent screening requested for a gas-phase problem");
  const FreeEnergy cost(problem, qsim::build_circuit(all, problem.n_qubits(), kind), options.use_solvent);
  const Vec g = cost.gradient(Vec::Zero(cost.n_params()), GradientMethod::adjoint);
  std::vector<qsim::Excitation> kept;
  for (std::size_t k = 0; k < all.size(); ++k) {
    if (std::abs(g(static_cast<Eigen::Index>(k))) >= options.threshold) kept.push_back(all[k]);
  }
  if (kept.empty()) {
    warn("adaptive selection kept no excitations; using the full list");
    return all;
  }
  return kept;
}

}  // namespace solvq::solver

#pragma once

#include "solvq/qsim/ansatz.hpp"
#include "solvq/qsim/pauli_apply.hpp"
#include "solvq/qsim/rdm.hpp"
#include "solvq/solver/problem.hpp"

#include <optional>

namespace solvq::solver {

enum class GradientMethod { adjoint, parameter_shift, finite_difference };

std::string to_string(GradientMethod m);
GradientMethod gradient_method_from_string(const std::string& name);

struct ShotSettings {
  bool enabled = false;
  std::size_t n_shots = 8192;
  double depolarizing = 0.0;
};

struct Evaluation {
  double value = 0.0;    // G (solvated) or E (gas phase)
  double energy = 0.0;   // <H0>
  double solvent = 0.0;  // 1/2 V^T Q V
  Mat d;                 // active 1-RDM
  Vec charges;           // q = Q V(d), empty in gas phase
  qsim::Statevector state;
  std::optional<qsim::RdmPair> rdm;
};

/// The cost of the variational loop. Each evaluation prepares the state,
/// measures the 1-RDM, refreshes the apparent charges and returns
/// G = <H0> + 1/2 V(d)^T Q V(d).
class FreeEnergy {
 public:
  FreeEnergy(const Problem& problem, qsim::AnsatzCircuit circuit, bool solvated, ShotSettings shots = {});

  const qsim::AnsatzCircuit& circuit() const { return circuit_; }
  const Problem& problem() const { return *problem_; }
  bool solvated() const { return tables_ != nullptr; }
  const ShotSettings& shots() const { return shots_; }
  int n_params() const { return circuit_.n_params; }

  qsim::Statevector prepare(const Vec& theta) const;
  Evaluation evaluate(const Vec& theta, std::uint64_t seed = 0, bool full_rdm = false) const;
  double operator()(const Vec& theta, std::uint64_t seed = 0) const { return evaluate(theta, seed).value; }

  /// Adjoint and parameter-shift differentiate <H0 + sum F_pq(d) E_pq> with
  /// d frozen at its current value, which equals the total derivative of G.
  /// Shot mode only allows finite differences (same seed on both sides).
  Vec gradient(const Vec& theta, GradientMethod method, double fd_step = 1e-5, std::uint64_t seed = 0) const;

 private:
  qsim::CVec effective_apply(const qsim::CVec& psi, const Mat& f) const;
  double effective_expectation(const qsim::CVec& psi, const Mat& f) const;

  const Problem* problem_;
  qsim::AnsatzCircuit circuit_;
  const f2q::InteractionTables* tables_ = nullptr;
  ShotSettings shots_;
  qsim::Statevector reference_;
  qsim::CompiledOperator h0_;
};

}  // namespace solvq::solver

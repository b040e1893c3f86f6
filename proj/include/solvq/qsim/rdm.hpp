#pragma once

#include "solvq/f2q/pauli.hpp"
#include "solvq/qsim/statevector.hpp"

#include <optional>

namespace solvq::qsim {

/// Spin-summed orbital RDMs: d_pq = <E_pq>, D_pqrs = <E_pq E_rs - delta_qr E_ps>.
struct RdmPair {
  Mat d;
  Tensor4 D2;
  bool exact = true;
  std::size_t n_shots = 0;
  std::uint64_t seed = 0;
  /// Shots mode: binomial standard error of each d entry before renormalization.
  Mat d_stderr;
};

struct ShotOptions {
  std::size_t n_shots = 8192;
  std::uint64_t seed = 0;
  /// Global depolarizing strength; every non-identity Pauli expectation is
  /// scaled by (1 - p).
  double depolarizing = 0.0;
  /// Skip the 2-RDM (enough for solvent-only observables).
  bool one_body_only = false;
};

/// psi <- E_pq psi on 2m qubits (blocked spin ordering).
CVec apply_excitation(const CVec& psi, int p, int q, int n_orbitals);

RdmPair measure_rdms_exact(const Statevector& state, int n_orbitals);

/// Exact 1-RDM only.
Mat one_rdm_exact(const CVec& psi, int n_orbitals);

/// Qubit-wise commuting measurement groups, built greedily in input order.
std::vector<std::vector<f2q::PauliString>> group_qubitwise(const std::vector<f2q::PauliString>& strings);

/// Shot estimate of every string's expectation. Each group is measured with
/// n_shots samples after rotating X/Y qubits to the Z basis. Also returns
/// per-string standard errors.
struct PauliEstimates {
  std::vector<f2q::PauliString> strings;
  std::vector<double> values;
  std::vector<double> stderrs;
  std::size_t n_groups = 0;
};
PauliEstimates estimate_paulis(const Statevector& state, const std::vector<f2q::PauliString>& strings,
                               const ShotOptions& options);

/// Shot-sampled RDMs; the 1-RDM is rescaled to trace n_electrons.
RdmPair measure_rdms_shots(const Statevector& state, int n_orbitals, int n_electrons, const ShotOptions& options);

/// Gas-phase energy from RDMs: constant + sum h d + 1/2 sum g D.
double energy_from_rdms(const Mat& h, const Tensor4& g, double constant, const RdmPair& rdm);

}  // namespace solvq::qsim

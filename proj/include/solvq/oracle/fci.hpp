#pragma once

#include "solvq/f2q/interaction.hpp"
#include "solvq/f2q/pauli.hpp"
#include "solvq/qsim/rdm.hpp"
#include "solvq/qsim/statevector.hpp"
#include "solvq/scf/active_space.hpp"

namespace solvq::oracle {

struct FciResult {
  double energy = 0.0;          // <H0> of the ground vector
  double free_energy = 0.0;     // PCM: <H0> + 1/2 V^T Q V; gas phase: equals energy
  double solvent_energy = 0.0;  // PCM only
  std::vector<std::uint64_t> determinants;  // occupation bit masks (bit k = spin orbital k)
  Vec vector;                   // CI coefficients over `determinants`
  int n_qubits = 0;
  qsim::RdmPair rdm;
  double residual = 0.0;        // |H psi - E psi| for the last diagonalized Hamiltonian
  int n_iterations = 0;         // PCM fixed-point iterations
  std::vector<double> trace;    // PCM: G per iteration

  qsim::Statevector to_statevector() const;
};

struct FciOptions {
  /// Sector dimensions above this use Lanczos instead of a dense eigensolve.
  int dense_limit = 4096;
  int max_qubits = 16;
};

/// Ground state in the (n_alpha, n_beta) sector from active-space integrals,
/// built with explicit determinant algebra.
FciResult fci(const Mat& h, const Tensor4& g, double constant, int n_alpha, int n_beta, const FciOptions& options = {});
FciResult fci(const scf::ActiveSpace& active, const FciOptions& options = {});

/// Ground state of a qubit Hamiltonian restricted to the sector with n_alpha
/// ones in the low half of the register and n_beta in the high half.
FciResult fci(const f2q::QubitOperator& hamiltonian, int n_alpha, int n_beta, const FciOptions& options = {});

/// Sector Hamiltonian matrix over the returned determinant list.
Mat fci_matrix(const Mat& h, const Tensor4& g, double constant, const std::vector<std::uint64_t>& determinants);

/// All determinants with n_alpha/n_beta electrons in m orbitals (blocked order), ascending.
std::vector<std::uint64_t> sector_determinants(int n_orbitals, int n_alpha, int n_beta);

struct PcmFciOptions {
  double mixing = 0.8;  // d <- (1 - mixing) d + mixing d_new
  double tolerance = 1e-10;
  int max_iterations = 200;
  FciOptions fci;
};

/// Self-consistent ground state of H0 + sum_pq F_pq(d) E_pq with
/// F = dU/dd, iterated to |dG| < tolerance. Throws NumericalError with the
/// G trace when the fixed point does not converge.
FciResult pcm_fci(const scf::ActiveSpace& active, const f2q::InteractionTables& tables,
                  const PcmFciOptions& options = {});

}  // namespace solvq::oracle

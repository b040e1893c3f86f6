#pragma once

#include "solvq/f2q/pauli.hpp"
#include "solvq/scf/active_space.hpp"

namespace solvq::f2q {

/// Spin orbitals are blocked: alpha orbital p -> qubit p, beta orbital p -> qubit m + p.
inline int spin_orbital(int orbital, int spin, int n_orbitals) { return orbital + spin * n_orbitals; }

/// a_j (annihilate = false) or a_j^dagger under Jordan-Wigner.
PauliSum ladder(int mode, bool create, int n_qubits);

/// Product of ladder operators, left to right; each entry is (mode, create).
PauliSum ladder_product(const std::vector<std::pair<int, bool>>& ops, int n_qubits);

/// Gas-phase Hamiltonian on 2m qubits; the identity coefficient holds
/// e_nuc + core_energy.
QubitOperator build_h0(const scf::ActiveSpace& active);

/// Same Hamiltonian from raw integrals (h_pq, (pq|rs), constant).
QubitOperator build_h0(const Mat& h, const Tensor4& g, double constant);

/// sum_pq M_pq E_pq with E_pq = a+_{p alpha} a_{q alpha} + a+_{p beta} a_{q beta}.
/// M must be symmetric.
QubitOperator jw_map(const Mat& one_body);

/// Hermitian part of E_pq, i.e. (E_pq + E_qp)/2, on 2m qubits.
QubitOperator excitation_operator(int p, int q, int n_orbitals);

/// Hermitian part of E_pq E_rs - delta_qr E_ps.
QubitOperator two_body_rdm_operator(int p, int q, int r, int s, int n_orbitals);

QubitOperator number_operator(int n_qubits);
/// S_z = (N_alpha - N_beta)/2 under the blocked ordering.
QubitOperator sz_operator(int n_orbitals);

}  // namespace solvq::f2q

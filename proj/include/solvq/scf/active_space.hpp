#pragma once

#include "solvq/scf/rhf.hpp"

#include <filesystem>

namespace solvq::scf {

/// Active-space integrals in the MO basis with the frozen core folded in.
struct ActiveSpace {
  int n_frozen_core = 0;
  std::vector<int> active;  // MO indices
  int n_active_electrons = 0;
  Mat h_eff;                // m x m
  Tensor4 g_active;         // (pq|rs), chemists' notation
  double core_energy = 0.0; // frozen-core electronic energy
  double e_nuc = 0.0;
  Mat core_density_ao;      // AO density of the frozen orbitals (2 electrons each)
  Mat mo_active;            // n_basis x m coefficients

  int n_orbitals() const { return static_cast<int>(active.size()); }
  int n_qubits() const { return 2 * n_orbitals(); }
  /// e_nuc + core_energy.
  double constant() const { return e_nuc + core_energy; }
};

ActiveSpace to_mo_and_freeze(const molint::IntegralSet& integrals, const ScfResult& scf, int n_frozen_core);

/// Active-space integrals for an arbitrary orthonormal orbital set.
ActiveSpace to_mo_and_freeze(const molint::IntegralSet& integrals, const Mat& mo_coefficients,
                             int n_frozen_core);

/// FCIDUMP export (1-based indices, (ij|kl) with i>=j, k>=l, ij>=kl).
void write_fcidump(const ActiveSpace& active, const std::filesystem::path& path);

}  // namespace solvq::scf

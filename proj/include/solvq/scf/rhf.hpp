#pragma once

#include "solvq/cavity/pcm.hpp"
#include "solvq/molint/integrals.hpp"

namespace solvq::scf {

struct ScfOptions {
  int max_iterations = 200;
  double density_tol = 1e-8;  // RMS change of the AO density
  double energy_tol = 1e-10;
  int diis_size = 8;
};

struct ScfResult {
  Mat mo_coefficients;
  Vec orbital_energies;
  Mat density;  // AO density, trace(P S) = N
  /// Gas phase: electronic + nuclear energy. PCM: free energy G.
  double total_energy = 0.0;
  bool converged = false;
  int n_iterations = 0;
  int n_occupied = 0;
  /// PCM only: solvent part of G, 1/2 V^T Q V including the nuclear term.
  double solvent_energy = 0.0;
  /// PCM only: apparent charges of the converged density.
  Vec charges;
};

class ScfConvergenceError : public NumericalError {
 public:
  ScfConvergenceError(const std::string& what, double last_energy)
      : NumericalError(what), last_energy_(last_energy) {}
  double last_energy() const { return last_energy_; }

 private:
  double last_energy_;
};

/// Closed-shell Hartree-Fock with DIIS from a core-Hamiltonian guess.
ScfResult rhf(const molint::IntegralSet& integrals, const ScfOptions& options = {});

/// Hartree-Fock coupled to the PCM reaction field. Requires surface potentials
/// on `integrals`. The Fock matrix carries sum_i v_i (Q_s V)_i with
/// Q_s = (Q + Q^T)/2; the reported energy is E_gas(P) + 1/2 V^T Q V.
ScfResult pcm_rhf(const molint::IntegralSet& integrals, const cavity::SolventResponse& response,
                  const ScfOptions& options = {});

/// Molecular electrostatic potential on the tesserae for AO density P:
/// V_i = (v_N)_i + sum_pq P_pq (v_pq)_i.
Vec surface_potential(const molint::IntegralSet& integrals, const Mat& density);

/// Closed-shell energy of an AO density (no solvent), including e_nuc.
double rhf_energy(const molint::IntegralSet& integrals, const Mat& density);

/// Two-electron part G(P) = J(P) - K(P)/2.
Mat two_electron_fock(const molint::IntegralSet& integrals, const Mat& density);

}  // namespace solvq::scf

#pragma once

#include "solvq/cavity/pcm.hpp"
#include "solvq/f2q/interaction.hpp"
#include "solvq/f2q/pauli.hpp"
#include "solvq/molint/integrals.hpp"
#include "solvq/scf/active_space.hpp"

#include <optional>

namespace solvq::solver {

struct SolventOptions {
  double epsilon = 46.7;
  cavity::CavityOptions mesh{cavity::default_radii()};
  bool symmetrize = false;
};

struct ProblemOptions {
  std::string basis = "STO-3G";
  /// Parsed basis file; replaces the built-in table named by `basis`.
  std::optional<molint::BasisLibrary> basis_library;
  int n_frozen_core = 0;
  /// Build the cavity, response and interaction tables.
  std::optional<SolventOptions> solvent;
  /// Use PCM-HF instead of gas-phase HF orbitals for the active space.
  bool pcm_orbitals = false;
};

/// Everything the variational drivers need for one molecule.
struct Problem {
  molint::Molecule molecule;
  molint::BasisSet basis;
  molint::IntegralSet integrals;
  scf::ScfResult scf_gas;
  std::optional<scf::ScfResult> scf_pcm;
  scf::ActiveSpace active;
  f2q::QubitOperator h0;
  std::optional<cavity::Cavity> mesh;
  std::optional<cavity::SolventResponse> response;
  std::optional<f2q::InteractionTables> tables;

  int n_alpha() const { return active.n_active_electrons / 2; }
  int n_beta() const { return active.n_active_electrons - n_alpha(); }
  int n_qubits() const { return active.n_qubits(); }
  int n_orbitals() const { return active.n_orbitals(); }
  bool solvated() const { return tables.has_value(); }
};

Problem build_problem(const molint::Molecule& molecule, const ProblemOptions& options);

}  // namespace solvq::solver

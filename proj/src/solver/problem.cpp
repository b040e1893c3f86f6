#include "solvq/solver/problem.hpp"

#include "solvq/f2q/jordan_wigner.hpp"

namespace solvq::solver {

Problem build_problem(const molint::Molecule& molecule, const ProblemOptions& options) {
  molecule.validate();
  Problem p;
  p.molecule = molecule;
  p.basis = options.basis_library ? molint::build_basis(molecule, *options.basis_library, options.basis)
                                  : molint::build_basis(molecule, options.basis);
  p.integrals = molint::compute_integrals(molecule, p.basis);
  p.scf_gas = scf::rhf(p.integrals);
  if (options.solvent) {
    const auto& sv = *options.solvent;
    p.mesh = cavity::build_cavity(molecule, sv.mesh);
    p.response = cavity::build_response(*p.mesh, sv.epsilon, sv.symmetrize);
    molint::attach_surface(p.integrals, molecule, p.basis, p.mesh->points());
    p.scf_pcm = scf::pcm_rhf(p.integrals, *p.response);
  } else if (options.pcm_orbitals) {
    throw InputError("PCM orbitals requested without a solvent block");
  }
  const auto& orbitals = options.pcm_orbitals ? *p.scf_pcm : p.scf_gas;
  p.active = scf::to_mo_and_freeze(p.integrals, orbitals, options.n_frozen_core);
  p.h0 = f2q::build_h0(p.active);
  if (options.solvent) p.tables = f2q::build_interaction_tables(p.active, p.integrals, *p.response);
  return p;
}

}  // namespace solvq::solver

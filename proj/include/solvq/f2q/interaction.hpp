#pragma once

#include "solvq/cavity/pcm.hpp"
#include "solvq/molint/integrals.hpp"
#include "solvq/scf/active_space.hpp"

namespace solvq::f2q {

/// Solute-solvent coupling in the active space. Electrons enter V through
/// v_pq (which already carries the electron's negative charge); nuclei and
/// frozen-core electrons form the fixed part V_fixed.
struct InteractionTables {
  int n_orbitals = 0;
  int n_active_electrons = 0;
  double epsilon = 1.0;
  Mat Q;                          // solvent response used throughout
  std::vector<Mat> v_mo;          // per tessera, m x m
  Mat v_flat;                     // N_tess x m^2, column p + q*m holds (v_pq)_i
  Vec v_nuclear;                  // (v_N)_i
  Vec core_potential_tess;        // frozen-core electron potential
  Vec v_fixed;                    // v_nuclear + core_potential_tess
  Vec q_nuclear;                  // Q v_fixed
  Mat j;                          // j_pq = v_pq^T Q v_fixed
  Mat y;                          // y_pq = v_fixed^T Q v_pq
  Mat K;                          // m^2 x m^2, K[(pq),(rs)] = v_pq^T Q v_rs
  double u_fixed = 0.0;           // 1/2 v_fixed^T Q v_fixed

  std::size_t n_tesserae() const { return static_cast<std::size_t>(Q.rows()); }
};

InteractionTables build_interaction_tables(const scf::ActiveSpace& active, const molint::IntegralSet& integrals,
                                           const cavity::SolventResponse& response);

/// x_pq = v_pq^T Q sum_rs d_rs v_rs. Warns (does not throw) when trace(d)
/// is off the active electron count by more than 1e-3.
Mat x_matrix(const InteractionTables& tables, const Mat& d);

/// Same contraction with Q^T; equals x_matrix when Q is symmetric.
Mat x_tilde_matrix(const InteractionTables& tables, const Mat& d);

/// MEP on the tesserae for active 1-RDM d: v_fixed + sum_pq d_pq v_pq.
Vec surface_potential(const InteractionTables& tables, const Mat& d);

/// q = Q V(d).
Vec apparent_charges(const InteractionTables& tables, const Mat& d);

/// 1/2 V^T Q V = u_fixed + 1/2 (j + y).d + 1/2 x(d).d
double solvent_energy(const InteractionTables& tables, const Mat& d);

/// Derivative of solvent_energy with respect to d:
/// 1/2 (j + y) + 1/2 (x + x_tilde).
Mat effective_one_body(const InteractionTables& tables, const Mat& d);

}  // namespace solvq::f2q

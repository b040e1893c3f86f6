#include "solvq/f2q/interaction.hpp"

#include <sstream>

namespace solvq::f2q {

namespace {

Eigen::Map<const Vec> flat(const Mat& d) { return {d.data(), d.size()}; }

void check_rdm(const InteractionTables& t, const Mat& d) {
  if (d.rows() != t.n_orbitals || d.cols() != t.n_orbitals) {
    throw InputError("1-RDM is " + std::to_string(d.rows()) + "x" + std::to_string(d.cols()) + ", expected " +
                     std::to_string(t.n_orbitals) + "x" + std::to_string(t.n_orbitals));
  }
}

}  // namespace

InteractionTables build_interaction_tables(const scf::ActiveSpace& active, const molint::IntegralSet& ints,
                                           const cavity::SolventResponse& response) {
  if (!ints.has_surface()) throw InputError("integrals carry no surface potentials");
  const auto nt = static_cast<Eigen::Index>(ints.tessera_potential.size());
  if (static_cast<std::size_t>(nt) != response.size()) {
    throw InputError("surface potentials and solvent response disagree on the tessera count");
  }
  InteractionTables t;
  const int m = active.n_orbitals();
  t.n_orbitals = m;
  t.n_active_electrons = active.n_active_electrons;
  t.epsilon = response.epsilon;
  t.Q = response.Q;
  t.v_nuclear = ints.v_nuc_tess;
  t.core_potential_tess = Vec::Zero(nt);
  t.v_mo.reserve(static_cast<std::size_t>(nt));
  t.v_flat.resize(nt, m * m);
  // Flattening is Eigen's column-major order: index p + q*m.
  for (Eigen::Index i = 0; i < nt; ++i) {
    const Mat& v_ao = ints.tessera_potential[static_cast<std::size_t>(i)];
    Mat v = active.mo_active.transpose() * v_ao * active.mo_active;
    v = 0.5 * (v + v.transpose()).eval();
    t.v_flat.row(i) = flat(v).transpose();
    t.v_mo.push_back(std::move(v));
    t.core_potential_tess(i) = v_ao.cwiseProduct(active.core_density_ao).sum();
  }
  t.v_fixed = t.v_nuclear + t.core_potential_tess;
  t.q_nuclear = t.Q * t.v_fixed;
  const Vec y_flat = t.Q.transpose() * t.v_fixed;
  const Vec j_flat = t.v_flat.transpose() * t.q_nuclear;
  const Vec yy = t.v_flat.transpose() * y_flat;
  t.j = Eigen::Map<const Mat>(j_flat.data(), m, m);
  t.y = Eigen::Map<const Mat>(yy.data(), m, m);
  t.K = t.v_flat.transpose() * (t.Q * t.v_flat);
  t.u_fixed = 0.5 * t.v_fixed.dot(t.q_nuclear);
  return t;
}

Mat x_matrix(const InteractionTables& t, const Mat& d) {
  check_rdm(t, d);
  const double tr = d.trace();
  if (std::abs(tr - t.n_active_electrons) > 1e-3) {
    std::ostringstream msg;
    msg << "1-RDM trace " << tr << " differs from the active electron count " << t.n_active_electrons;
    warn(msg.str());
  }
  const Vec x = t.K * flat(d);
  return Eigen::Map<const Mat>(x.data(), t.n_orbitals, t.n_orbitals);
}

Mat x_tilde_matrix(const InteractionTables& t, const Mat& d) {
  check_rdm(t, d);
  const Vec x = t.K.transpose() * flat(d);
  return Eigen::Map<const Mat>(x.data(), t.n_orbitals, t.n_orbitals);
}

Vec surface_potential(const InteractionTables& t, const Mat& d) {
  check_rdm(t, d);
  return t.v_fixed + t.v_flat * flat(d);
}

Vec apparent_charges(const InteractionTables& t, const Mat& d) { return t.Q * surface_potential(t, d); }

double solvent_energy(const InteractionTables& t, const Mat& d) {
  check_rdm(t, d);
  const Vec df = flat(d);
  return t.u_fixed + 0.5 * (t.j + t.y).cwiseProduct(d).sum() + 0.5 * df.dot(t.K * df);
}

Mat effective_one_body(const InteractionTables& t, const Mat& d) {
  check_rdm(t, d);
  const Vec df = flat(d);
  const Vec x = t.K * df + t.K.transpose() * df;
  return 0.5 * (t.j + t.y) + 0.5 * Eigen::Map<const Mat>(x.data(), t.n_orbitals, t.n_orbitals);
}

}  // namespace solvq::f2q

#include "solvq/solver/free_energy.hpp"

#include <cmath>
#include <numbers>

namespace solvq::solver {

std::string to_string(GradientMethod m) {
  switch (m) {
    case GradientMethod::adjoint: return "adjoint";
    case GradientMethod::parameter_shift: return "parameter_shift";
    case GradientMethod::finite_difference: return "finite_difference";
  }
  return "unknown";
}

GradientMethod gradient_method_from_string(const std::string& name) {
  for (auto m : {GradientMethod::adjoint, GradientMethod::parameter_shift, GradientMethod::finite_difference}) {
    if (to_string(m) == name) return m;
  }
  throw InputError("unknown gradient method '" + name + "'");
}

FreeEnergy::FreeEnergy(const Problem& problem, qsim::AnsatzCircuit circuit, bool solvated, ShotSettings shots)
    : problem_(&problem),
      circuit_(std::move(circuit)),
      shots_(shots),
      reference_(qsim::hf_state(problem.n_qubits(), problem.n_alpha(), problem.n_beta())),
      h0_(problem.h0) {
  if (solvated) {
    if (!problem.tables) throw InputError("solvated cost requested for a problem without solvent");
    tables_ = &*problem.tables;
  }
  if (circuit_.n_qubits != problem.n_qubits()) throw InputError("circuit and problem qubit counts differ");
  circuit_.validate();
}

qsim::Statevector FreeEnergy::prepare(const Vec& theta) const { return qsim::apply_ansatz(reference_, circuit_, theta); }

Evaluation FreeEnergy::evaluate(const Vec& theta, std::uint64_t seed, bool full_rdm) const {
  const int m = problem_->n_orbitals();
  Evaluation ev;
  ev.state = prepare(theta);
  if (shots_.enabled) {
    qsim::ShotOptions so{shots_.n_shots, seed, shots_.depolarizing, false};
    auto rdm = qsim::measure_rdms_shots(ev.state, m, problem_->active.n_active_electrons, so);
    ev.energy = qsim::energy_from_rdms(problem_->active.h_eff, problem_->active.g_active, problem_->active.constant(), rdm);
    ev.d = rdm.d;
    ev.rdm = std::move(rdm);
  } else {
    ev.energy = h0_.expectation(ev.state.amplitudes());
    if (full_rdm) {
      ev.rdm = qsim::measure_rdms_exact(ev.state, m);
      ev.d = ev.rdm->d;
    } else {
      ev.d = qsim::one_rdm_exact(ev.state.amplitudes(), m);
    }
  }
  ev.value = ev.energy;
  if (tables_) {
    ev.solvent = f2q::solvent_energy(*tables_, ev.d);
    ev.charges = f2q::apparent_charges(*tables_, ev.d);
    ev.value += ev.solvent;
  }
  return ev;
}

qsim::CVec FreeEnergy::effective_apply(const qsim::CVec& psi, const Mat& f) const {
  qsim::CVec out = h0_.apply(psi);
  const int m = problem_->n_orbitals();
  if (f.size() == 0) return out;
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q) {
      if (f(p, q) != 0.0) out += f(p, q) * qsim::apply_excitation(psi, p, q, m);
    }
  return out;
}

double FreeEnergy::effective_expectation(const qsim::CVec& psi, const Mat& f) const {
  return psi.dot(effective_apply(psi, f)).real();
}

Vec FreeEnergy::gradient(const Vec& theta, GradientMethod method, double fd_step, std::uint64_t seed) const {
  if (theta.size() != circuit_.n_params) throw InputError("parameter vector has the wrong length");
  const auto n = theta.size();
  Vec g = Vec::Zero(n);
  if (shots_.enabled && method != GradientMethod::finite_difference) {
    throw InputError("shot mode supports only finite-difference gradients");
  }
  if (method == GradientMethod::finite_difference) {
    if (!(fd_step > 0.0)) throw InputError("finite-difference step must be positive");
    for (Eigen::Index k = 0; k < n; ++k) {
      Vec tp = theta;
      Vec tm = theta;
      tp(k) += fd_step;
      tm(k) -= fd_step;
      g(k) = ((*this)(tp, seed) - (*this)(tm, seed)) / (2.0 * fd_step);
    }
    return g;
  }
  const qsim::CVec psi = prepare(theta).amplitudes();
  Mat f;
  if (tables_) f = f2q::effective_one_body(*tables_, qsim::one_rdm_exact(psi, problem_->n_orbitals()));

  if (method == GradientMethod::adjoint) {
    qsim::CVec phi = psi;
    qsim::CVec lambda = effective_apply(psi, f);
    for (auto it = circuit_.gates.rbegin(); it != circuit_.gates.rend(); ++it) {
      qsim::CVec tmp = phi;
      qsim::apply_generator(tmp, *it);
      g(it->param) += 2.0 * lambda.dot(tmp).real();
      const double angle = theta(it->param);
      qsim::apply_gate(phi, *it, angle, true);
      qsim::apply_gate(lambda, *it, angle, true);
    }
    return g;
  }

  // Four-term shift rule, exact for gate angles entering with frequencies 1 and 2.
  const double c1 = (std::numbers::sqrt2 + 1.0) / (4.0 * std::numbers::sqrt2);
  const double c2 = (std::numbers::sqrt2 - 1.0) / (4.0 * std::numbers::sqrt2);
  const double pi = std::numbers::pi;
  const qsim::CVec ref = reference_.amplitudes();
  auto shifted = [&](std::size_t gate, double shift) {
    qsim::CVec s = ref;
    for (std::size_t k = 0; k < circuit_.gates.size(); ++k) {
      const auto& gt = circuit_.gates[k];
      qsim::apply_gate(s, gt, theta(gt.param) + (k == gate ? shift : 0.0));
    }
    return effective_expectation(s, f);
  };
  for (std::size_t k = 0; k < circuit_.gates.size(); ++k) {
    const double d1 = shifted(k, pi / 4) - shifted(k, -pi / 4);
    const double d2 = shifted(k, 3 * pi / 4) - shifted(k, -3 * pi / 4);
    g(circuit_.gates[k].param) += 2.0 * c1 * d1 - 2.0 * c2 * d2;
  }
  return g;
}

}  // namespace solvq::solver

#include "solvq/cli/run.hpp"

#include "solvq/f2q/jordan_wigner.hpp"
#include "solvq/oracle/fci.hpp"
#include "solvq/solver/observables.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace solvq::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

solver::SolvationReport base_report(const solver::Problem& p, const std::string& method, bool solvated) {
  solver::SolvationReport r;
  r.system = p.molecule.formula();
  r.basis = p.basis.name();
  r.method = method;
  r.solvated = solvated;
  r.epsilon = solvated ? p.tables->epsilon : 1.0;
  r.charge = p.molecule.charge;
  r.n_qubits = p.n_qubits();
  r.n_active_electrons = p.active.n_active_electrons;
  r.n_frozen_core = p.active.n_frozen_core;
  r.converged = true;
  r.references["rhf"] = p.scf_gas.total_energy;
  if (p.scf_pcm) r.references["pcm_rhf"] = p.scf_pcm->total_energy;
  return r;
}

/// H0 + sum_pq F_pq E_pq, shifted so that its expectation value at the
/// 1-RDM d equals G(d).
f2q::QubitOperator effective_hamiltonian(const solver::Problem& p, const Mat& d) {
  const Mat f = f2q::effective_one_body(*p.tables, d);
  const double shift = f2q::solvent_energy(*p.tables, d) - (f.array() * d.array()).sum();
  return f2q::build_h0(p.active.h_eff + f, p.active.g_active, p.active.constant() + shift);
}

struct Artifacts {
  std::optional<qsim::Statevector> state;
  std::optional<Mat> d;  // 1-RDM for the effective Hamiltonian dump
  std::optional<solver::SolvationReport> vacuum;
};

qsim::Statevector hf_reference(const solver::Problem& p) { return qsim::hf_state(p.n_qubits(), p.n_alpha(), p.n_beta()); }

solver::SolvationReport run_hf(const RunConfig& c, const solver::Problem& p, Artifacts& art) {
  const bool solv = is_solvated(c.method);
  auto r = base_report(p, to_string(c.method), solv);
  const auto& gas = p.scf_gas;
  r.iterations = gas.n_iterations;
  r.converged = gas.converged;
  if (!solv) {
    r.energy = r.free_energy = gas.total_energy;
  } else {
    const auto& pcm = *p.scf_pcm;
    r.free_energy = pcm.total_energy;
    r.solvent_energy = pcm.solvent_energy;
    r.energy = pcm.total_energy - pcm.solvent_energy;
    r.charges = pcm.charges;
    r.iterations = pcm.n_iterations;
    r.converged = pcm.converged;
    r.delta_g = solver::ValueWithError{pcm.total_energy - gas.total_energy, 0.0};
  }
  art.state = hf_reference(p);
  return r;
}

solver::SolvationReport fci_report(const solver::Problem& p, const oracle::FciResult& f, const std::string& method,
                                   bool solvated) {
  auto r = base_report(p, method, solvated);
  r.energy = f.energy;
  r.free_energy = f.free_energy;
  r.solvent_energy = f.solvent_energy;
  r.rdm = f.rdm;
  r.iterations = f.n_iterations;
  for (std::size_t k = 0; k < f.trace.size(); ++k) r.trace.push_back({static_cast<int>(k), f.trace[k], NAN});
  if (solvated) r.charges = f2q::apparent_charges(*p.tables, f.rdm.d);
  return r;
}

solver::SolvationReport run_fci(const RunConfig& c, const solver::Problem& p, Artifacts& art) {
  const auto gas = oracle::fci(p.active);
  if (c.method == Method::fci) {
    auto r = fci_report(p, gas, "fci", false);
    art.state = gas.to_statevector();
    art.d = gas.rdm.d;
    return r;
  }
  const auto sol = oracle::pcm_fci(p.active, *p.tables);
  auto r = fci_report(p, sol, "pcm-fci", true);
  r.references["fci"] = gas.energy;
  r.delta_g = solver::ValueWithError{sol.free_energy - gas.energy, 0.0};
  r.u_pol = solver::ValueWithError{f2q::solvent_energy(*p.tables, gas.rdm.d), 0.0};
  art.vacuum = fci_report(p, gas, "fci", false);
  art.state = sol.to_statevector();
  art.d = sol.rdm.d;
  return r;
}

Mat final_rdm(const solver::SolvationReport& r, const solver::Problem& p, const qsim::Statevector& state) {
  if (r.rdm) return r.rdm->d;
  return qsim::one_rdm_exact(state.amplitudes(), p.n_orbitals());
}

solver::SolvationReport run_variational(const RunConfig& c, const solver::Problem& p, Artifacts& art) {
  const auto& v = c.vqe;
  if (c.method == Method::vqe) {
    auto r = solver::run_vqe(v, p);
    const auto circuit = qsim::build_circuit(r.excitations, p.n_qubits(), v.ansatz, v.layers);
    art.state = qsim::apply_ansatz(hf_reference(p), circuit, r.theta);
    art.d = final_rdm(r, p, *art.state);
    return r;
  }
  // Gas-phase leg first: it fixes the excitation list (unless the solvated
  // run screens on its own), E_vac and theta_vac.
  solver::VqeConfig gv = v;
  gv.selection.use_solvent = false;
  auto vac = solver::run_vqe(gv, p);
  solver::VqeConfig sv = v;
  if (v.selection.use_solvent) {
    sv.excitations.reset();
  } else {
    sv.excitations = vac.excitations;
  }
  auto r = solver::run_pcm_vqe(sv, p);
  r.delta_g = solver::solvation_free_energy(r, vac);
  const auto vac_circuit = qsim::build_circuit(vac.excitations, p.n_qubits(), v.ansatz, v.layers);
  if (v.shots.enabled) {
    const auto s = solver::polarization_energy_sampled(p, vac_circuit, vac.theta, v.shots, c.u_pol_samples,
                                                       v.seed + 1000003);
    r.u_pol = solver::ValueWithError{s.mean, s.stderr_};
  } else {
    r.u_pol = solver::ValueWithError{solver::polarization_energy(p, vac_circuit, vac.theta), 0.0};
  }
  r.references["vacuum_energy"] = vac.energy;
  const auto circuit = qsim::build_circuit(r.excitations, p.n_qubits(), v.ansatz, v.layers);
  art.state = qsim::apply_ansatz(hf_reference(p), circuit, r.theta);
  art.d = final_rdm(r, p, *art.state);
  art.vacuum = std::move(vac);
  return r;
}

}  // namespace

RunOutcome run(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const auto molecule = molint::read_xyz(config.molecule);
  const auto problem = solver::build_problem(molecule, problem_options(config));

  Artifacts art;
  solver::SolvationReport report;
  switch (config.method) {
    case Method::hf:
    case Method::pcm_hf: report = run_hf(config, problem, art); break;
    case Method::fci:
    case Method::pcm_fci: report = run_fci(config, problem, art); break;
    case Method::vqe:
    case Method::pcm_vqe: report = run_variational(config, problem, art); break;
  }
  report.seed = config.vqe.seed;
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  fs::create_directories(config.output);
  const fs::path& out = config.output;
  write_text(out / "resolved-config.json", resolved_json(config));
  solver::write_report(report, out / "report.json");
  solver::write_trace_csv(report.trace, out / "trace.csv");
  if (art.vacuum) {
    art.vacuum->seed = config.vqe.seed;
    solver::write_report(*art.vacuum, out / "vacuum-report.json");
    solver::write_trace_csv(art.vacuum->trace, out / "vacuum-trace.csv");
  }
  if (problem.mesh) cavity::write_cavity_csv(*problem.mesh, out / "cavity.csv");
  if (config.dump_state && art.state) {
    qsim::write_state_csv(*art.state, out / "state.csv");
    if (config.vqe.shots.enabled) {
      const auto hist = qsim::sample_counts(*art.state, config.vqe.shots.n_shots, config.vqe.seed);
      qsim::write_histogram_json(hist, problem.n_qubits(), out / "histogram.json");
    }
  }
  if (config.dump_hamiltonian) {
    problem.h0.write_json(out / "hamiltonian.json");
    scf::write_fcidump(problem.active, out / "FCIDUMP");
    if (report.solvated && art.d && problem.tables) {
      effective_hamiltonian(problem, *art.d).write_json(out / "hamiltonian-effective.json");
    }
  }

  RunOutcome o;
  o.report = std::move(report);
  o.output = out;
  const bool vacuum_ok = !art.vacuum || art.vacuum->converged;
  o.exit_code = o.report.converged && vacuum_ok ? kExitOk : kExitNotConverged;
  return o;
}

Comparison compare(const solver::SolvationReport& a, const solver::SolvationReport& b) {
  if (a.system != b.system || a.basis != b.basis || a.charge != b.charge || a.n_qubits != b.n_qubits ||
      a.n_active_electrons != b.n_active_electrons || a.n_frozen_core != b.n_frozen_core) {
    throw InputError("reports describe different systems (" + a.system + "/" + a.basis + ", " +
                     std::to_string(a.n_qubits) + " qubits vs " + b.system + "/" + b.basis + ", " +
                     std::to_string(b.n_qubits) + " qubits)");
  }
  Comparison c;
  c.system = a.system + "/" + a.basis;
  if (a.solvated != b.solvated) {
    c.delta_g = a.solvated ? solver::solvation_free_energy(a, b) : solver::solvation_free_energy(b, a);
  }
  c.deltas["energy"] = b.energy - a.energy;
  c.deltas["free_energy"] = b.free_energy - a.free_energy;
  c.deltas["solvent_energy"] = b.solvent_energy - a.solvent_energy;
  c.deltas["epsilon"] = std::isinf(a.epsilon) && std::isinf(b.epsilon) ? 0.0 : b.epsilon - a.epsilon;
  c.deltas["iterations"] = b.iterations - a.iterations;
  c.deltas["n_params"] = static_cast<double>(b.theta.size() - a.theta.size());
  if (a.charges.size() && b.charges.size()) c.deltas["charge_sum"] = b.charges.sum() - a.charges.sum();
  for (const auto& [k, v] : a.references) {
    auto it = b.references.find(k);
    if (it != b.references.end()) c.deltas["references." + k] = it->second - v;
  }
  return c;
}

std::string comparison_json(const Comparison& c) {
  json j;
  j["system"] = c.system;
  j["delta_g"] = c.delta_g ? json{{"value", c.delta_g->value}, {"stderr", c.delta_g->stderr_}} : json(nullptr);
  json d = json::object();
  for (const auto& [k, v] : c.deltas) d[k] = v;
  j["deltas"] = d;
  return j.dump(2) + "\n";
}

std::string comparison_text(const Comparison& c) {
  std::ostringstream s;
  s << std::setprecision(10) << std::fixed;
  s << "system: " << c.system << '\n';
  if (c.delta_g) {
    s << "delta_G_sol: " << c.delta_g->value << " Ha";
    if (c.delta_g->stderr_ > 0.0) s << " +/- " << c.delta_g->stderr_;
    s << '\n';
  }
  for (const auto& [k, v] : c.deltas) s << "  d(" << k << ") = " << v << '\n';
  return s.str();
}

}  // namespace solvq::cli

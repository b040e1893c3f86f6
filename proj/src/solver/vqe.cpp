#include "solvq/solver/vqe.hpp"

#include <chrono>
#include <cmath>

namespace solvq::solver {

namespace {

constexpr int kFinalShotSamples = 10;

SolvationReport run(const VqeConfig& cfg, const Problem& problem, bool solvated) {
  const auto start = std::chrono::steady_clock::now();
  auto excitations = cfg.excitations ? *cfg.excitations : select_excitations(problem, cfg.selection, cfg.ansatz);
  auto circuit = qsim::build_circuit(excitations, problem.n_qubits(), cfg.ansatz, cfg.layers);
  const FreeEnergy cost(problem, circuit, solvated, cfg.shots);

  Vec theta0 = Vec::Zero(circuit.n_params);
  if (cfg.initial_theta) {
    theta0 = *cfg.initial_theta;
  } else if (cfg.random_init) {
    std::mt19937_64 rng(cfg.seed);
    for (Eigen::Index k = 0; k < theta0.size(); ++k) theta0(k) = cfg.init_scale * (2.0 * qsim::uniform01(rng) - 1.0);
  }
  const auto opt = minimize(cost, theta0, cfg.optimizer, cfg.seed);

  SolvationReport r;
  r.system = problem.molecule.formula();
  r.basis = problem.basis.name();
  r.method = solvated ? "pcm-vqe" : "vqe";
  r.solvated = solvated;
  r.epsilon = solvated ? problem.tables->epsilon : 1.0;
  r.charge = problem.molecule.charge;
  r.n_qubits = problem.n_qubits();
  r.n_active_electrons = problem.active.n_active_electrons;
  r.n_frozen_core = problem.active.n_frozen_core;
  r.ansatz = qsim::to_string(cfg.ansatz);
  r.layers = cfg.layers;
  r.excitations = std::move(excitations);
  r.trace = opt.trace;
  r.theta = opt.theta;
  r.converged = opt.converged;
  r.iterations = opt.iterations;
  r.evaluations = opt.evaluations;
  r.shots = cfg.shots.enabled;
  r.n_shots = cfg.shots.enabled ? cfg.shots.n_shots : 0;
  r.seed = cfg.seed;

  const std::uint64_t final_seed = cfg.seed + static_cast<std::uint64_t>(opt.evaluations) + 1;
  auto ev = cost.evaluate(opt.theta, final_seed, true);
  if (cfg.shots.enabled) {
    // Report the mean of repeated shot evaluations at the final parameters.
    std::vector<double> g{ev.value};
    std::vector<double> e{ev.energy};
    std::vector<double> u{ev.solvent};
    for (int k = 1; k < kFinalShotSamples; ++k) {
      const auto extra = cost.evaluate(opt.theta, final_seed + static_cast<std::uint64_t>(k));
      g.push_back(extra.value);
      e.push_back(extra.energy);
      u.push_back(extra.solvent);
    }
    auto mean = [](const std::vector<double>& v) {
      double s = 0.0;
      for (double x : v) s += x;
      return s / static_cast<double>(v.size());
    };
    const double gm = mean(g);
    double var = 0.0;
    for (double x : g) var += (x - gm) * (x - gm);
    var /= static_cast<double>(g.size() - 1);
    r.free_energy = gm;
    r.energy = mean(e);
    r.solvent_energy = mean(u);
    r.free_energy_stderr = std::sqrt(var / static_cast<double>(g.size()));
  } else {
    r.free_energy = ev.value;
    r.energy = ev.energy;
    r.solvent_energy = ev.solvent;
  }
  r.rdm = ev.rdm;
  r.charges = ev.charges;
  r.references["rhf"] = problem.scf_gas.total_energy;
  if (problem.scf_pcm) r.references["pcm_rhf"] = problem.scf_pcm->total_energy;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace

SolvationReport run_vqe(const VqeConfig& config, const Problem& problem) { return run(config, problem, false); }

SolvationReport run_pcm_vqe(const VqeConfig& config, const Problem& problem) {
  if (!problem.solvated()) throw InputError("PCM-VQE needs a problem built with a solvent block");
  return run(config, problem, true);
}

}  // namespace solvq::solver

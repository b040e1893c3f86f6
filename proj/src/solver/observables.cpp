#include "solvq/solver/observables.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace solvq::solver {

ValueWithError solvation_free_energy(const SolvationReport& solution, const SolvationReport& vacuum) {
  if (!solution.solvated) throw InputError("first report is not a solvated run");
  if (vacuum.solvated) throw InputError("second report is not a gas-phase run");
  if (solution.system != vacuum.system || solution.basis != vacuum.basis || solution.charge != vacuum.charge ||
      solution.n_qubits != vacuum.n_qubits || solution.n_active_electrons != vacuum.n_active_electrons) {
    throw InputError("reports describe different systems (" + solution.system + "/" + solution.basis + " vs " +
                     vacuum.system + "/" + vacuum.basis + ")");
  }
  return {solution.free_energy - vacuum.energy,
          std::hypot(solution.free_energy_stderr, vacuum.free_energy_stderr)};
}

double polarization_energy(const Problem& problem, const qsim::AnsatzCircuit& circuit, const Vec& theta_vac) {
  const FreeEnergy cost(problem, circuit, true);
  return cost.evaluate(theta_vac).solvent;
}

SampledValue polarization_energy_sampled(const Problem& problem, const qsim::AnsatzCircuit& circuit,
                                         const Vec& theta_vac, const ShotSettings& shots, int n_samples,
                                         std::uint64_t seed) {
  if (n_samples < 2) throw InputError("need at least two samples");
  if (!problem.tables) throw InputError("polarization energy needs solvent tables");
  const FreeEnergy cost(problem, circuit, true);
  const auto state = cost.prepare(theta_vac);
  SampledValue out;
  for (int k = 0; k < n_samples; ++k) {
    qsim::ShotOptions so{shots.n_shots, seed + static_cast<std::uint64_t>(k), shots.depolarizing, true};
    const auto rdm = qsim::measure_rdms_shots(state, problem.n_orbitals(), problem.active.n_active_electrons, so);
    out.samples.push_back(f2q::solvent_energy(*problem.tables, rdm.d));
  }
  double s = 0.0;
  for (double v : out.samples) s += v;
  out.mean = s / n_samples;
  double var = 0.0;
  for (double v : out.samples) var += (v - out.mean) * (v - out.mean);
  var /= n_samples - 1;
  out.stderr_ = std::sqrt(var / n_samples);
  return out;
}

double trace_distance(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
    throw InputError("trace distance needs square matrices of equal size");
  }
  auto prepare = [](const Mat& m) {
    Mat s = m;
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
      warn("trace distance: symmetrizing a non-symmetric matrix");
      s = 0.5 * (m + m.transpose());
    }
    const double tr = s.trace();
    if (std::abs(tr) < 1e-14) throw InputError("trace distance: matrix has zero trace");
    return Mat(s / tr);
  };
  const Mat diff = prepare(a) - prepare(b);
  Eigen::SelfAdjointEigenSolver<Mat> es(diff);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace solvq::solver

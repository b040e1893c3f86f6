#pragma once

#include "solvq/solver/free_energy.hpp"
#include "solvq/solver/report.hpp"

namespace solvq::solver {

/// G(solution report) - E(vacuum report); uncertainties add in quadrature.
/// Throws InputError when the reports describe different systems.
ValueWithError solvation_free_energy(const SolvationReport& solution, const SolvationReport& vacuum);

/// 1/2 V^T Q V at the 1-RDM of the given (gas-phase optimized) parameters.
double polarization_energy(const Problem& problem, const qsim::AnsatzCircuit& circuit, const Vec& theta_vac);

struct SampledValue {
  double mean = 0.0;
  double stderr_ = 0.0;  // sample standard deviation / sqrt(n)
  std::vector<double> samples;
};

/// Shot-sampled polarization energy averaged over `n_samples` independent
/// evaluations (seeds seed, seed+1, ...).
SampledValue polarization_energy_sampled(const Problem& problem, const qsim::AnsatzCircuit& circuit,
                                         const Vec& theta_vac, const ShotSettings& shots, int n_samples,
                                         std::uint64_t seed);

/// 1/2 |rho_a - rho_b|_1 after scaling both to unit trace. Asymmetric input
/// is symmetrized with a warning.
double trace_distance(const Mat& a, const Mat& b);

}  // namespace solvq::solver

#pragma once

#include "solvq/cli/config.hpp"

#include <filesystem>
#include <string>

namespace solvq::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 1,
  kExitNumericalError = 2,
  kExitNotConverged = 3,
};

struct RunOutcome {
  int exit_code = kExitOk;
  solver::SolvationReport report;
  std::filesystem::path output;
};

/// Executes one config and writes its artifacts into config.output:
///   resolved-config.json, report.json, trace.csv
///   cavity.csv                        (solvated methods)
///   vacuum-report.json, vacuum-trace.csv  (pcm-vqe, pcm-fci: the gas-phase leg)
///   state.csv, histogram.json         (dump_state; histogram in shot mode)
///   hamiltonian.json, FCIDUMP         (dump_hamiltonian)
///   hamiltonian-effective.json        (dump_hamiltonian, solvated VQE/FCI)
/// Returns kExitNotConverged when the optimizer or SCF loop did not
/// converge; errors propagate as exceptions.
RunOutcome run(const RunConfig& config);

struct Comparison {
  std::string system;
  /// Present when exactly one of the two reports is solvated.
  std::optional<solver::ValueWithError> delta_g;
  /// b - a for every numeric field the two reports share.
  std::map<std::string, double> deltas;
};

/// Throws InputError when the reports describe different systems.
Comparison compare(const solver::SolvationReport& a, const solver::SolvationReport& b);
std::string comparison_json(const Comparison& c);
std::string comparison_text(const Comparison& c);

}  // namespace solvq::cli

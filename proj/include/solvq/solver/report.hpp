#pragma once

#include "solvq/qsim/ansatz.hpp"
#include "solvq/qsim/rdm.hpp"
#include "solvq/solver/optimize.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace solvq::solver {

inline constexpr int kReportSchemaVersion = 1;

struct ValueWithError {
  double value = 0.0;
  double stderr_ = 0.0;
};

/// Output record of one variational (or oracle) run.
struct SolvationReport {
  std::string system;  // molecular formula
  std::string basis;
  std::string method;
  bool solvated = false;
  double epsilon = 1.0;
  int charge = 0;
  int n_qubits = 0;
  int n_active_electrons = 0;
  int n_frozen_core = 0;
  std::string ansatz;
  int layers = 1;
  std::vector<qsim::Excitation> excitations;
  std::vector<TraceRow> trace;
  Vec theta;
  bool converged = false;
  int iterations = 0;
  int evaluations = 0;
  double energy = 0.0;          // <H0>
  double free_energy = 0.0;     // G in solution, E in gas phase
  double solvent_energy = 0.0;  // 1/2 V^T Q V
  std::optional<ValueWithError> delta_g;  // G_sol - E_vac
  std::optional<ValueWithError> u_pol;    // solvent energy at the gas-phase state
  /// Shot mode: standard error of free_energy from the final RDM estimate.
  double free_energy_stderr = 0.0;
  bool shots = false;
  std::size_t n_shots = 0;
  std::uint64_t seed = 0;
  std::optional<qsim::RdmPair> rdm;
  Vec charges;
  std::map<std::string, double> references;  // e.g. rhf, pcm_rhf, fci
  double seconds = 0.0;
};

/// JSON document; timing lives under "timing" and is left out when
/// `include_timing` is false.
std::string report_to_json(const SolvationReport& report, bool include_timing = true);
SolvationReport report_from_json(const std::string& text);
SolvationReport read_report(const std::filesystem::path& path);
void write_report(const SolvationReport& report, const std::filesystem::path& path);

/// CSV: iteration,value_Ha,grad_norm
void write_trace_csv(const std::vector<TraceRow>& trace, const std::filesystem::path& path);

}  // namespace solvq::solver

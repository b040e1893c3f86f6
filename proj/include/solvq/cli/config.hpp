#pragma once

#include "solvq/solver/vqe.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace solvq::cli {

inline constexpr int kConfigSchemaVersion = 1;

enum class Method { vqe, pcm_vqe, fci, pcm_fci, hf, pcm_hf };

std::string to_string(Method m);
Method method_from_string(const std::string& name);
bool is_solvated(Method m);

/// Thrown for malformed configs; the message starts with the offending
/// field path, e.g. "vqe.optimizer.step: must be positive".
class ConfigError : public InputError {
 public:
  ConfigError(const std::string& field, const std::string& what) : InputError(field + ": " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// One batch run. Paths are absolute once parsed.
struct RunConfig {
  std::filesystem::path molecule;
  std::string basis = "STO-3G";
  std::optional<std::filesystem::path> basis_file;
  Method method = Method::vqe;
  int n_frozen_core = 0;
  /// Present when the config has a "solvent" block. Gas-phase methods
  /// ignore it.
  std::optional<solver::SolventOptions> solvent;
  bool pcm_orbitals = false;
  solver::VqeConfig vqe;
  /// Number of shot evaluations averaged for the reported U_pol in shot mode.
  int u_pol_samples = 50;
  std::filesystem::path output = "out";
  bool dump_state = false;
  bool dump_hamiltonian = false;
};

/// Parses and validates a JSON config. Relative paths resolve against
/// `base_dir` (the config file's directory).
RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir);
RunConfig load_config(const std::filesystem::path& path);

/// JSON with every default spelled out; parse_config(resolved_json(c))
/// reproduces c.
std::string resolved_json(const RunConfig& config);

/// Problem options implied by a config (solvent dropped for gas-phase methods).
solver::ProblemOptions problem_options(const RunConfig& config);

}  // namespace solvq::cli

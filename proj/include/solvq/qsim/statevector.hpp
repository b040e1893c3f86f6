#pragma once

#include "solvq/core.hpp"

#include <complex>
#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <string>

namespace solvq::qsim {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;

/// Dense state on n qubits; basis index bit k is qubit k.
class Statevector {
 public:
  static constexpr int kMaxQubits = 20;

  Statevector() = default;
  /// |0...0>.
  explicit Statevector(int n_qubits);
  Statevector(int n_qubits, CVec amplitudes);
  static Statevector basis_state(int n_qubits, std::uint64_t index);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const CVec& amplitudes() const { return amps_; }
  CVec& amplitudes() { return amps_; }
  cplx operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }

  double norm() const { return amps_.norm(); }
  cplx inner(const Statevector& other) const { return amps_.dot(other.amps_); }

 private:
  int n_qubits_ = 0;
  CVec amps_;
};

/// Closed-shell reference under blocked spin ordering: qubits 0..n_alpha-1
/// and m..m+n_beta-1 occupied, with m = n_qubits / 2.
Statevector hf_state(int n_qubits, int n_alpha, int n_beta);

/// Bitstring with qubit 0 first, e.g. hf_state(6,1,1) -> "100100".
std::string bitstring(std::uint64_t index, int n_qubits);

/// Uniform double in [0, 1) from the top 53 bits; fixed across platforms.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Index draws from the probability vector by inverse-CDF lookup.
std::vector<std::uint64_t> sample_indices(const Eigen::VectorXd& probabilities, std::size_t n_shots,
                                          std::mt19937_64& rng);

using Histogram = std::map<std::string, std::uint64_t>;

/// Multinomial sample of |amplitude|^2; deterministic for a given seed.
Histogram sample_counts(const Statevector& state, std::size_t n_shots, std::uint64_t seed);

/// CSV: index,re,im
void write_state_csv(const Statevector& state, const std::filesystem::path& path);
/// JSON object {"n_qubits":..,"n_shots":..,"counts":{"0101":12,...}}
void write_histogram_json(const Histogram& histogram, int n_qubits, const std::filesystem::path& path);

}  // namespace solvq::qsim

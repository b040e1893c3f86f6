#include "solvq/qsim/statevector.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>

namespace solvq::qsim {

Statevector::Statevector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw InputError("qubit count must be in [1, " + std::to_string(kMaxQubits) + "]");
  }
  amps_ = CVec::Zero(Eigen::Index{1} << n_qubits);
  amps_(0) = 1.0;
}

Statevector::Statevector(int n_qubits, CVec amplitudes) : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw InputError("qubit count must be in [1, " + std::to_string(kMaxQubits) + "]");
  }
  if (amps_.size() != (Eigen::Index{1} << n_qubits)) throw InputError("amplitude vector has the wrong length");
}

Statevector Statevector::basis_state(int n_qubits, std::uint64_t index) {
  Statevector s(n_qubits);
  if (index >= s.dim()) throw InputError("basis index outside the register");
  s.amps_(0) = 0.0;
  s.amps_(static_cast<Eigen::Index>(index)) = 1.0;
  return s;
}

Statevector hf_state(int n_qubits, int n_alpha, int n_beta) {
  if (n_qubits % 2 != 0) throw InputError("blocked spin ordering needs an even qubit count");
  const int m = n_qubits / 2;
  if (n_alpha < 0 || n_beta < 0 || n_alpha > m || n_beta > m) {
    throw InputError("occupation exceeds the register");
  }
  std::uint64_t index = 0;
  for (int k = 0; k < n_alpha; ++k) index |= std::uint64_t{1} << k;
  for (int k = 0; k < n_beta; ++k) index |= std::uint64_t{1} << (m + k);
  return Statevector::basis_state(n_qubits, index);
}

std::string bitstring(std::uint64_t index, int n_qubits) {
  std::string s(static_cast<std::size_t>(n_qubits), '0');
  for (int k = 0; k < n_qubits; ++k) {
    if ((index >> k) & 1U) s[static_cast<std::size_t>(k)] = '1';
  }
  return s;
}

std::vector<std::uint64_t> sample_indices(const Eigen::VectorXd& p, std::size_t n_shots, std::mt19937_64& rng) {
  std::vector<double> cdf(static_cast<std::size_t>(p.size()));
  double acc = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    acc += p(i);
    cdf[static_cast<std::size_t>(i)] = acc;
  }
  std::vector<std::uint64_t> out(n_shots);
  for (auto& o : out) {
    const double u = uniform01(rng) * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    o = static_cast<std::uint64_t>(it - cdf.begin());
  }
  return out;
}

Histogram sample_counts(const Statevector& state, std::size_t n_shots, std::uint64_t seed) {
  if (n_shots == 0) throw InputError("shot count must be positive");
  std::mt19937_64 rng(seed);
  const Eigen::VectorXd p = state.amplitudes().cwiseAbs2();
  Histogram h;
  for (auto idx : sample_indices(p, n_shots, rng)) ++h[bitstring(idx, state.n_qubits())];
  return h;
}

void write_state_csv(const Statevector& state, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << "index,re,im\n" << std::setprecision(17);
  for (std::size_t i = 0; i < state.dim(); ++i) out << i << ',' << state[i].real() << ',' << state[i].imag() << '\n';
}

void write_histogram_json(const Histogram& histogram, int n_qubits, const std::filesystem::path& path) {
  std::uint64_t total = 0;
  nlohmann::json counts = nlohmann::json::object();
  for (const auto& [k, v] : histogram) {
    counts[k] = v;
    total += v;
  }
  nlohmann::json j{{"n_qubits", n_qubits}, {"n_shots", total}, {"counts", counts}};
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << j.dump(1) << '\n';
}

}  // namespace solvq::qsim

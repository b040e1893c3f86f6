#pragma once

#include "solvq/core.hpp"

#include <complex>
#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

namespace solvq::f2q {

using cplx = std::complex<double>;

/// Pauli string as bit masks: P = i^{|x & z|} X^x Z^z, so a qubit with both
/// bits set carries Y. Qubit k is bit k.
struct PauliString {
  std::uint64_t x = 0;
  std::uint64_t z = 0;

  bool operator==(const PauliString&) const = default;
  bool is_identity() const { return x == 0 && z == 0; }
  int weight() const;
  /// Letters per qubit, qubit 0 first ("XIZY").
  std::string to_string(int n_qubits) const;
  static PauliString from_string(const std::string& letters);
};

struct PauliHash {
  std::size_t operator()(const PauliString& p) const noexcept {
    return std::hash<std::uint64_t>{}(p.x * 0x9E3779B97F4A7C15ULL ^ p.z);
  }
};

/// Product of two Pauli strings: (phase, string) with P1 P2 = phase * P3.
std::pair<cplx, PauliString> multiply(const PauliString& a, const PauliString& b);

/// Whether the strings commute qubit by qubit (same letter or identity on each qubit).
bool qubitwise_commute(const PauliString& a, const PauliString& b);

/// Complex-coefficient Pauli sum used while building operators.
class PauliSum {
 public:
  explicit PauliSum(int n_qubits = 0) : n_qubits_(n_qubits) {}

  int n_qubits() const { return n_qubits_; }
  void add(const PauliString& p, cplx c);
  void add(const PauliSum& other, cplx scale = 1.0);
  PauliSum operator*(const PauliSum& other) const;
  const std::unordered_map<PauliString, cplx, PauliHash>& terms() const { return terms_; }

 private:
  int n_qubits_;
  std::unordered_map<PauliString, cplx, PauliHash> terms_;
};

struct PauliTerm {
  PauliString string;
  double coefficient = 0.0;
};

/// Real-coefficient (Hermitian) qubit operator, sorted by string and
/// deduplicated, with |c| < 1e-12 pruned.
class QubitOperator {
 public:
  static constexpr double kPruneTol = 1e-12;

  QubitOperator() = default;
  explicit QubitOperator(int n_qubits) : n_qubits_(n_qubits) {}
  QubitOperator(int n_qubits, std::vector<PauliTerm> terms);
  /// Takes the Hermitian part of `sum`. Throws NumericalError when any
  /// coefficient has an imaginary part above `imag_tol`.
  static QubitOperator from_sum(const PauliSum& sum, double imag_tol = 1e-10);

  int n_qubits() const { return n_qubits_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  double identity_coefficient() const;
  double coefficient(const PauliString& p) const;

  QubitOperator operator+(const QubitOperator& other) const;
  QubitOperator operator*(double s) const;

  /// Dense matrix in the computational basis (index bit k = qubit k).
  /// Limited to 12 qubits.
  Eigen::MatrixXcd to_dense() const;

  /// JSON: [{"string": "XIZ", "coefficient": 0.5}, ...]
  std::string to_json() const;
  static QubitOperator from_json(const std::string& text);
  void write_json(const std::filesystem::path& path) const;

 private:
  void canonicalize();
  int n_qubits_ = 0;
  std::vector<PauliTerm> terms_;
};

}  // namespace solvq::f2q

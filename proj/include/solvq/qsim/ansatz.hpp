#pragma once

#include "solvq/qsim/statevector.hpp"

#include <string>
#include <vector>

namespace solvq::qsim {

enum class GateKind { single_excitation, double_excitation, ucc_single, ucc_double };

std::string to_string(GateKind kind);
GateKind gate_kind_from_string(const std::string& name);

/// Particle-conserving excitation between spin orbitals (qubits).
struct Excitation {
  std::vector<int> from;  // occupied, 1 or 2 entries
  std::vector<int> to;    // virtual, same count

  bool is_double() const { return from.size() == 2; }
  std::string label() const;
  bool operator==(const Excitation&) const = default;
};

/// A two-level rotation between |from occupied, to empty> and the reverse.
/// Givens kinds rotate by the plain 2x2 matrix [[c, -s], [s, c]];
/// UCC kinds are exp(theta (T - T^dagger)) for the fermionic T, i.e. the
/// same rotation with the Jordan-Wigner sign of T on each pair.
/// qubits = from followed by to.
struct Gate {
  GateKind kind = GateKind::single_excitation;
  std::vector<int> qubits;
  int param = 0;
};

struct AnsatzCircuit {
  int n_qubits = 0;
  int n_params = 0;
  std::vector<Gate> gates;

  /// Throws InputError on repeated or out-of-range qubits and bad parameter indices.
  void validate() const;
};

enum class AnsatzKind { givens, uccsd };

std::string to_string(AnsatzKind kind);
AnsatzKind ansatz_kind_from_string(const std::string& name);

/// One gate and one parameter per excitation, in list order. With layers > 1
/// the whole list is repeated, each repetition with its own parameters
/// (parameter index = layer * excitations.size() + k).
AnsatzCircuit build_circuit(const std::vector<Excitation>& excitations, int n_qubits, AnsatzKind kind,
                            int layers = 1);

/// Applies exp(theta A) in place (or its inverse).
void apply_gate(CVec& psi, const Gate& gate, double theta, bool inverse = false);

/// psi <- A psi, the generator of the gate.
void apply_generator(CVec& psi, const Gate& gate);

Statevector apply_ansatz(const Statevector& state, const AnsatzCircuit& circuit, const Vec& theta);

}  // namespace solvq::qsim

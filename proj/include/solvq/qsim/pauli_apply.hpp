#pragma once

#include "solvq/f2q/pauli.hpp"
#include "solvq/qsim/statevector.hpp"

namespace solvq::qsim {

/// Operator prepared for repeated application: terms sharing an X mask are
/// folded into one diagonal weight vector, so O|b> = sum_x w_x[b] |b ^ x>.
class CompiledOperator {
 public:
  CompiledOperator() = default;
  explicit CompiledOperator(const f2q::QubitOperator& op);

  int n_qubits() const { return n_qubits_; }
  CVec apply(const CVec& psi) const;
  /// <psi|O|psi>; throws NumericalError if the imaginary part exceeds 1e-10.
  double expectation(const CVec& psi) const;

 private:
  struct Group {
    std::uint64_t x = 0;
    std::vector<cplx> w;
  };
  int n_qubits_ = 0;
  std::vector<Group> groups_;
};

double expectation(const Statevector& state, const f2q::QubitOperator& op);

/// <psi|P|psi> for a single Pauli string.
cplx pauli_expectation(const Statevector& state, const f2q::PauliString& p);

}  // namespace solvq::qsim

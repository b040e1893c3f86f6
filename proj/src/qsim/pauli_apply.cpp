#include "solvq/qsim/pauli_apply.hpp"

#include <bit>
#include <map>

namespace solvq::qsim {

namespace {

cplx i_pow(int k) {
  switch (k & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

CompiledOperator::CompiledOperator(const f2q::QubitOperator& op) : n_qubits_(op.n_qubits()) {
  const std::size_t dim = std::size_t{1} << n_qubits_;
  std::map<std::uint64_t, std::size_t> index;
  for (const auto& t : op.terms()) {
    auto [it, inserted] = index.try_emplace(t.string.x, groups_.size());
    if (inserted) groups_.push_back({t.string.x, std::vector<cplx>(dim, cplx{})});
    auto& w = groups_[it->second].w;
    const cplx phase = t.coefficient * i_pow(std::popcount(t.string.x & t.string.z));
    for (std::size_t b = 0; b < dim; ++b) {
      w[b] += (std::popcount(t.string.z & b) & 1) ? -phase : phase;
    }
  }
}

CVec CompiledOperator::apply(const CVec& psi) const {
  if (psi.size() != (Eigen::Index{1} << n_qubits_)) throw InputError("state and operator sizes differ");
  CVec out = CVec::Zero(psi.size());
  const auto dim = static_cast<std::size_t>(psi.size());
  for (const auto& g : groups_) {
    for (std::size_t b = 0; b < dim; ++b) {
      out(static_cast<Eigen::Index>(b ^ g.x)) += g.w[b] * psi(static_cast<Eigen::Index>(b));
    }
  }
  return out;
}

double CompiledOperator::expectation(const CVec& psi) const {
  if (psi.size() != (Eigen::Index{1} << n_qubits_)) throw InputError("state and operator sizes differ");
  cplx acc{};
  const auto dim = static_cast<std::size_t>(psi.size());
  for (const auto& g : groups_) {
    for (std::size_t b = 0; b < dim; ++b) {
      acc += std::conj(psi(static_cast<Eigen::Index>(b ^ g.x))) * g.w[b] * psi(static_cast<Eigen::Index>(b));
    }
  }
  if (std::abs(acc.imag()) > 1e-10) throw NumericalError("expectation value has an imaginary part");
  return acc.real();
}

double expectation(const Statevector& state, const f2q::QubitOperator& op) {
  if (state.n_qubits() != op.n_qubits()) throw InputError("state and operator qubit counts differ");
  return CompiledOperator(op).expectation(state.amplitudes());
}

cplx pauli_expectation(const Statevector& state, const f2q::PauliString& p) {
  const cplx phase = i_pow(std::popcount(p.x & p.z));
  cplx acc{};
  const auto& psi = state.amplitudes();
  for (std::uint64_t b = 0; b < state.dim(); ++b) {
    const double sign = (std::popcount(p.z & b) & 1) ? -1.0 : 1.0;
    acc += std::conj(psi(static_cast<Eigen::Index>(b ^ p.x))) * sign * psi(static_cast<Eigen::Index>(b));
  }
  return phase * acc;
}

}  // namespace solvq::qsim

#include "solvq/qsim/ansatz.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace solvq::qsim {

namespace {

struct Pattern {
  std::uint64_t mask = 0;
  std::uint64_t from = 0;
  std::uint64_t to = 0;
};

Pattern pattern(const Gate& g) {
  Pattern p;
  const std::size_t half = g.qubits.size() / 2;
  for (std::size_t k = 0; k < g.qubits.size(); ++k) {
    const std::uint64_t bit = std::uint64_t{1} << g.qubits[k];
    p.mask |= bit;
    (k < half ? p.from : p.to) |= bit;
  }
  return p;
}

bool is_ucc(GateKind k) { return k == GateKind::ucc_single || k == GateKind::ucc_double; }

/// Applies a_mode or a+_mode to basis index b; returns the JW sign, or 0 if the result vanishes.
int ladder(std::uint64_t& b, int mode, bool create) {
  const std::uint64_t bit = std::uint64_t{1} << mode;
  if (create == static_cast<bool>(b & bit)) return 0;
  const int sign = (std::popcount(b & (bit - 1)) & 1) ? -1 : 1;
  b ^= bit;
  return sign;
}

/// Sign s with T|from-index> = s |to-index>, T = a+_a (a+_b) (a_j) a_i.
int excitation_sign(const Gate& g, std::uint64_t b) {
  int sign = 1;
  if (g.qubits.size() == 2) {
    sign *= ladder(b, g.qubits[0], false);
    sign *= ladder(b, g.qubits[1], true);
  } else {
    sign *= ladder(b, g.qubits[0], false);
    sign *= ladder(b, g.qubits[1], false);
    sign *= ladder(b, g.qubits[3], true);
    sign *= ladder(b, g.qubits[2], true);
  }
  return sign;
}

template <class F>
void for_each_pair(std::size_t dim, const Gate& g, F&& f) {
  const Pattern p = pattern(g);
  const bool ucc = is_ucc(g.kind);
  for (std::uint64_t b = 0; b < dim; ++b) {
    if ((b & p.mask) != p.from) continue;
    const std::uint64_t t = (b & ~p.mask) | p.to;
    const double s = ucc ? static_cast<double>(excitation_sign(g, b)) : 1.0;
    f(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(t), s);
  }
}

}  // namespace

std::string to_string(GateKind kind) {
  switch (kind) {
    case GateKind::single_excitation: return "single_excitation";
    case GateKind::double_excitation: return "double_excitation";
    case GateKind::ucc_single: return "ucc_single";
    case GateKind::ucc_double: return "ucc_double";
  }
  return "unknown";
}

GateKind gate_kind_from_string(const std::string& name) {
  for (auto k : {GateKind::single_excitation, GateKind::double_excitation, GateKind::ucc_single, GateKind::ucc_double}) {
    if (to_string(k) == name) return k;
  }
  throw InputError("unknown gate kind '" + name + "'");
}

std::string Excitation::label() const {
  std::string s;
  for (int i : from) s += std::to_string(i) + ' ';
  s += "->";
  for (int a : to) s += ' ' + std::to_string(a);
  return s;
}

void AnsatzCircuit::validate() const {
  for (std::size_t k = 0; k < gates.size(); ++k) {
    const auto& g = gates[k];
    const bool single = g.kind == GateKind::single_excitation || g.kind == GateKind::ucc_single;
    const std::size_t expected = single ? 2 : 4;
    const std::string where = "gate " + std::to_string(k) + ": ";
    if (g.qubits.size() != expected) throw InputError(where + "wrong number of qubits");
    auto q = g.qubits;
    std::sort(q.begin(), q.end());
    if (std::adjacent_find(q.begin(), q.end()) != q.end()) throw InputError(where + "repeated qubit");
    if (q.front() < 0 || q.back() >= n_qubits) throw InputError(where + "qubit outside the register");
    if (g.param < 0 || g.param >= n_params) throw InputError(where + "parameter index out of range");
  }
}

std::string to_string(AnsatzKind kind) { return kind == AnsatzKind::givens ? "givens" : "uccsd"; }

AnsatzKind ansatz_kind_from_string(const std::string& name) {
  if (name == "givens") return AnsatzKind::givens;
  if (name == "uccsd") return AnsatzKind::uccsd;
  throw InputError("unknown ansatz '" + name + "'");
}

AnsatzCircuit build_circuit(const std::vector<Excitation>& excitations, int n_qubits, AnsatzKind kind,
                            int layers) {
  if (layers < 1) throw InputError("ansatz needs at least one layer");
  AnsatzCircuit c;
  c.n_qubits = n_qubits;
  const int n = static_cast<int>(excitations.size());
  c.n_params = n * layers;
  for (int l = 0; l < layers; ++l) {
    for (int k = 0; k < n; ++k) {
      const auto& e = excitations[static_cast<std::size_t>(k)];
      if (e.from.size() != e.to.size() || e.from.empty() || e.from.size() > 2) {
        throw InputError("excitation " + e.label() + " is not a single or double");
      }
      Gate g;
      if (kind == AnsatzKind::givens) {
        g.kind = e.is_double() ? GateKind::double_excitation : GateKind::single_excitation;
      } else {
        g.kind = e.is_double() ? GateKind::ucc_double : GateKind::ucc_single;
      }
      g.qubits = e.from;
      g.qubits.insert(g.qubits.end(), e.to.begin(), e.to.end());
      g.param = l * n + k;
      c.gates.push_back(std::move(g));
    }
  }
  c.validate();
  return c;
}

void apply_gate(CVec& psi, const Gate& gate, double theta, bool inverse) {
  const double c = std::cos(theta);
  const double sn = inverse ? -std::sin(theta) : std::sin(theta);
  for_each_pair(static_cast<std::size_t>(psi.size()), gate, [&](Eigen::Index f, Eigen::Index t, double s) {
    const cplx a = psi(f);
    const cplx b = psi(t);
    psi(f) = c * a - s * sn * b;
    psi(t) = s * sn * a + c * b;
  });
}

void apply_generator(CVec& psi, const Gate& gate) {
  CVec out = CVec::Zero(psi.size());
  for_each_pair(static_cast<std::size_t>(psi.size()), gate, [&](Eigen::Index f, Eigen::Index t, double s) {
    out(t) = s * psi(f);
    out(f) = -s * psi(t);
  });
  psi = std::move(out);
}

Statevector apply_ansatz(const Statevector& state, const AnsatzCircuit& circuit, const Vec& theta) {
  if (theta.size() != circuit.n_params) {
    throw InputError("ansatz expects " + std::to_string(circuit.n_params) + " parameters, got " +
                     std::to_string(theta.size()));
  }
  if (circuit.n_qubits != state.n_qubits()) throw InputError("ansatz and state qubit counts differ");
  CVec psi = state.amplitudes();
  for (const auto& g : circuit.gates) apply_gate(psi, g, theta(g.param));
  return Statevector(state.n_qubits(), std::move(psi));
}

}  // namespace solvq::qsim

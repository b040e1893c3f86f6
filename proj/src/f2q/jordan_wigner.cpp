#include "solvq/f2q/jordan_wigner.hpp"

namespace solvq::f2q {

PauliSum ladder(int mode, bool create, int n_qubits) {
  if (mode < 0 || mode >= n_qubits) throw InputError("ladder operator mode outside the register");
  const std::uint64_t bit = std::uint64_t{1} << mode;
  const std::uint64_t string = bit - 1;  // Z on every lower qubit
  PauliSum s(n_qubits);
  s.add(PauliString{bit, string}, 0.5);
  s.add(PauliString{bit, string | bit}, create ? cplx(0.0, -0.5) : cplx(0.0, 0.5));
  return s;
}

PauliSum ladder_product(const std::vector<std::pair<int, bool>>& ops, int n_qubits) {
  PauliSum out(n_qubits);
  out.add(PauliString{}, 1.0);
  for (const auto& [mode, create] : ops) out = out * ladder(mode, create, n_qubits);
  return out;
}

QubitOperator build_h0(const Mat& h, const Tensor4& g, double constant) {
  const int m = static_cast<int>(h.rows());
  if (g.dim() != m) throw InputError("one- and two-body integrals disagree on the orbital count");
  const int n = 2 * m;
  PauliSum sum(n);
  sum.add(PauliString{}, constant);
  // Products of number-like pairs are cached per (p, q) spin-orbital pair.
  std::vector<PauliSum> pair(static_cast<std::size_t>(n * n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) pair[static_cast<std::size_t>(a * n + b)] = ladder_product({{a, true}, {b, false}}, n);
  }
  for (int s = 0; s < 2; ++s) {
    for (int p = 0; p < m; ++p) {
      for (int q = 0; q < m; ++q) {
        if (h(p, q) == 0.0) continue;
        sum.add(pair[static_cast<std::size_t>(spin_orbital(p, s, m) * n + spin_orbital(q, s, m))], h(p, q));
      }
    }
  }
  // 1/2 sum g_pqrs a+_{p s} a+_{r t} a_{s t} a_{q s}
  //   = 1/2 sum g_pqrs (E^{st}_{pq} E^{tt}_{rs} - delta_{qr} delta_{st} a+_{ps} a_{st}).
  for (int sp = 0; sp < 2; ++sp) {
    for (int tp = 0; tp < 2; ++tp) {
      for (int p = 0; p < m; ++p) {
        for (int q = 0; q < m; ++q) {
          for (int r = 0; r < m; ++r) {
            for (int s = 0; s < m; ++s) {
              const double v = g(p, q, r, s);
              if (std::abs(v) < 1e-14) continue;
              const int a = spin_orbital(p, sp, m);
              const int b = spin_orbital(r, tp, m);
              const int c = spin_orbital(s, tp, m);
              const int d = spin_orbital(q, sp, m);
              if (a == b || c == d) continue;
              sum.add(pair[static_cast<std::size_t>(a * n + d)] * pair[static_cast<std::size_t>(b * n + c)], 0.5 * v);
              if (d == b) sum.add(pair[static_cast<std::size_t>(a * n + c)], -0.5 * v);
            }
          }
        }
      }
    }
  }
  return QubitOperator::from_sum(sum);
}

QubitOperator build_h0(const scf::ActiveSpace& active) {
  return build_h0(active.h_eff, active.g_active, active.constant());
}

QubitOperator jw_map(const Mat& one_body) {
  const int m = static_cast<int>(one_body.rows());
  if (one_body.cols() != m) throw InputError("one-body matrix must be square");
  if ((one_body - one_body.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
    throw InputError("one-body matrix must be symmetric");
  }
  const int n = 2 * m;
  PauliSum sum(n);
  for (int s = 0; s < 2; ++s) {
    for (int p = 0; p < m; ++p) {
      for (int q = 0; q < m; ++q) {
        if (one_body(p, q) == 0.0) continue;
        sum.add(ladder_product({{spin_orbital(p, s, m), true}, {spin_orbital(q, s, m), false}}, n), one_body(p, q));
      }
    }
  }
  return QubitOperator::from_sum(sum);
}

namespace {

PauliSum singlet_excitation(int p, int q, int m) {
  const int n = 2 * m;
  PauliSum e(n);
  for (int s = 0; s < 2; ++s) e.add(ladder_product({{spin_orbital(p, s, m), true}, {spin_orbital(q, s, m), false}}, n));
  return e;
}

/// (O + O^dagger)/2 for a sum whose terms are all Pauli strings (Hermitian),
/// i.e. the real part of each coefficient.
QubitOperator hermitian_part(const PauliSum& sum) {
  std::vector<PauliTerm> terms;
  for (const auto& [p, c] : sum.terms()) terms.push_back({p, c.real()});
  return QubitOperator(sum.n_qubits(), std::move(terms));
}

}  // namespace

QubitOperator excitation_operator(int p, int q, int n_orbitals) {
  return hermitian_part(singlet_excitation(p, q, n_orbitals));
}

QubitOperator two_body_rdm_operator(int p, int q, int r, int s, int n_orbitals) {
  PauliSum o = singlet_excitation(p, q, n_orbitals) * singlet_excitation(r, s, n_orbitals);
  if (q == r) o.add(singlet_excitation(p, s, n_orbitals), -1.0);
  return hermitian_part(o);
}

QubitOperator number_operator(int n_qubits) {
  PauliSum sum(n_qubits);
  for (int k = 0; k < n_qubits; ++k) sum.add(ladder_product({{k, true}, {k, false}}, n_qubits));
  return QubitOperator::from_sum(sum);
}

QubitOperator sz_operator(int n_orbitals) {
  const int n = 2 * n_orbitals;
  PauliSum sum(n);
  for (int p = 0; p < n_orbitals; ++p) {
    sum.add(ladder_product({{p, true}, {p, false}}, n), 0.5);
    sum.add(ladder_product({{p + n_orbitals, true}, {p + n_orbitals, false}}, n), -0.5);
  }
  return QubitOperator::from_sum(sum);
}

}  // namespace solvq::f2q

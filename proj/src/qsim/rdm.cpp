#include "solvq/qsim/rdm.hpp"

#include "solvq/f2q/jordan_wigner.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <map>
#include <numbers>
#include <unordered_map>

namespace solvq::qsim {

namespace {

void check_register(const Statevector& state, int n_orbitals) {
  if (state.n_qubits() != 2 * n_orbitals) {
    throw InputError("state has " + std::to_string(state.n_qubits()) + " qubits, active space needs " +
                     std::to_string(2 * n_orbitals));
  }
}

void hadamard(CVec& psi, int k) {
  const std::uint64_t bit = std::uint64_t{1} << k;
  const double r = 1.0 / std::numbers::sqrt2;
  for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(psi.size()); ++b) {
    if (b & bit) continue;
    const auto i0 = static_cast<Eigen::Index>(b);
    const auto i1 = static_cast<Eigen::Index>(b | bit);
    const cplx a0 = psi(i0);
    const cplx a1 = psi(i1);
    psi(i0) = r * (a0 + a1);
    psi(i1) = r * (a0 - a1);
  }
}

void s_dagger(CVec& psi, int k) {
  const std::uint64_t bit = std::uint64_t{1} << k;
  for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(psi.size()); ++b) {
    if (b & bit) psi(static_cast<Eigen::Index>(b)) *= cplx(0.0, -1.0);
  }
}

}  // namespace

CVec apply_excitation(const CVec& psi, int p, int q, int m) {
  CVec out = CVec::Zero(psi.size());
  for (int s = 0; s < 2; ++s) {
    const int pa = p + s * m;
    const int qa = q + s * m;
    const std::uint64_t pbit = std::uint64_t{1} << pa;
    const std::uint64_t qbit = std::uint64_t{1} << qa;
    for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(psi.size()); ++b) {
      if (!(b & qbit)) continue;
      std::uint64_t b1 = b ^ qbit;
      if (b1 & pbit) continue;
      const int parity = std::popcount(b & (qbit - 1)) + std::popcount(b1 & (pbit - 1));
      const std::uint64_t b2 = b1 | pbit;
      const cplx a = psi(static_cast<Eigen::Index>(b));
      out(static_cast<Eigen::Index>(b2)) += (parity & 1) ? -a : a;
    }
  }
  return out;
}

Mat one_rdm_exact(const CVec& psi, int m) {
  if (psi.size() != (Eigen::Index{1} << (2 * m))) throw InputError("state size does not match the active space");
  Mat d(m, m);
  for (int p = 0; p < m; ++p)
    for (int q = p; q < m; ++q) {
      const double v = psi.dot(apply_excitation(psi, p, q, m)).real();
      d(p, q) = v;
      d(q, p) = v;
    }
  return d;
}

RdmPair measure_rdms_exact(const Statevector& state, int m) {
  check_register(state, m);
  const CVec& psi = state.amplitudes();
  std::vector<CVec> phi(static_cast<std::size_t>(m * m));
  for (int r = 0; r < m; ++r)
    for (int s = 0; s < m; ++s) phi[static_cast<std::size_t>(r * m + s)] = apply_excitation(psi, r, s, m);
  auto at = [&](int a, int b) -> const CVec& { return phi[static_cast<std::size_t>(a * m + b)]; };
  RdmPair rdm;
  rdm.d.resize(m, m);
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q) rdm.d(p, q) = psi.dot(at(p, q)).real();
  rdm.D2 = Tensor4(m);
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q)
      for (int r = 0; r < m; ++r)
        for (int s = 0; s < m; ++s) {
          double v = at(q, p).dot(at(r, s)).real();
          if (q == r) v -= rdm.d(p, s);
          rdm.D2(p, q, r, s) = v;
        }
  return rdm;
}

std::vector<std::vector<f2q::PauliString>> group_qubitwise(const std::vector<f2q::PauliString>& strings) {
  std::vector<std::vector<f2q::PauliString>> groups;
  for (const auto& p : strings) {
    bool placed = false;
    for (auto& g : groups) {
      bool ok = true;
      for (const auto& other : g) {
        if (!f2q::qubitwise_commute(p, other)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        g.push_back(p);
        placed = true;
        break;
      }
    }
    if (!placed) groups.push_back({p});
  }
  return groups;
}

PauliEstimates estimate_paulis(const Statevector& state, const std::vector<f2q::PauliString>& strings,
                               const ShotOptions& opt) {
  if (opt.n_shots == 0) throw InputError("shot count must be positive");
  if (opt.depolarizing < 0.0 || opt.depolarizing > 1.0) throw InputError("depolarizing strength must be in [0, 1]");
  PauliEstimates est;
  const auto groups = group_qubitwise(strings);
  est.n_groups = groups.size();
  std::mt19937_64 rng(opt.seed);
  const double n = static_cast<double>(opt.n_shots);
  for (const auto& g : groups) {
    std::uint64_t xs = 0;
    std::uint64_t ys = 0;
    for (const auto& p : g) {
      xs |= p.x & ~p.z;
      ys |= p.x & p.z;
    }
    CVec psi = state.amplitudes();
    for (int k = 0; k < state.n_qubits(); ++k) {
      if ((ys >> k) & 1U) {
        s_dagger(psi, k);
        hadamard(psi, k);
      } else if ((xs >> k) & 1U) {
        hadamard(psi, k);
      }
    }
    const auto samples = sample_indices(psi.cwiseAbs2(), opt.n_shots, rng);
    std::map<std::uint64_t, std::uint64_t> counts;
    for (auto s : samples) ++counts[s];
    for (const auto& p : g) {
      const std::uint64_t support = p.x | p.z;
      double sum = 0.0;
      for (const auto& [idx, c] : counts) sum += (std::popcount(idx & support) & 1) ? -double(c) : double(c);
      double v = sum / n;
      const double se = std::sqrt(std::max(0.0, 1.0 - v * v) / n);
      v *= 1.0 - opt.depolarizing;
      est.strings.push_back(p);
      est.values.push_back(v);
      est.stderrs.push_back(se * (1.0 - opt.depolarizing));
    }
  }
  return est;
}

RdmPair measure_rdms_shots(const Statevector& state, int m, int n_electrons, const ShotOptions& opt) {
  check_register(state, m);
  using f2q::QubitOperator;
  std::vector<QubitOperator> one(static_cast<std::size_t>(m * m));
  std::map<std::array<int, 4>, QubitOperator> two;
  std::vector<f2q::PauliString> strings;
  std::unordered_map<f2q::PauliString, std::size_t, f2q::PauliHash> seen;
  auto collect = [&](const QubitOperator& op) {
    for (const auto& t : op.terms()) {
      if (t.string.is_identity()) continue;
      if (seen.try_emplace(t.string, strings.size()).second) strings.push_back(t.string);
    }
  };
  for (int p = 0; p < m; ++p)
    for (int q = p; q < m; ++q) {
      one[static_cast<std::size_t>(p * m + q)] = f2q::excitation_operator(p, q, m);
      collect(one[static_cast<std::size_t>(p * m + q)]);
    }
  if (!opt.one_body_only) {
    for (int p = 0; p < m; ++p)
      for (int q = 0; q < m; ++q)
        for (int r = 0; r < m; ++r)
          for (int s = 0; s < m; ++s) {
            if (p * m + q > r * m + s) continue;
            auto op = f2q::two_body_rdm_operator(p, q, r, s, m);
            collect(op);
            two.emplace(std::array<int, 4>{p, q, r, s}, std::move(op));
          }
  }
  const auto est = estimate_paulis(state, strings, opt);
  std::unordered_map<f2q::PauliString, std::pair<double, double>, f2q::PauliHash> value;
  for (std::size_t k = 0; k < est.strings.size(); ++k) value[est.strings[k]] = {est.values[k], est.stderrs[k]};
  auto evaluate = [&](const QubitOperator& op, double* var) {
    double v = 0.0;
    double s2 = 0.0;
    for (const auto& t : op.terms()) {
      if (t.string.is_identity()) {
        v += t.coefficient;
        continue;
      }
      const auto& [e, se] = value.at(t.string);
      v += t.coefficient * e;
      s2 += t.coefficient * t.coefficient * se * se;
    }
    if (var) *var = s2;
    return v;
  };
  RdmPair rdm;
  rdm.exact = false;
  rdm.n_shots = opt.n_shots;
  rdm.seed = opt.seed;
  rdm.d = Mat::Zero(m, m);
  rdm.d_stderr = Mat::Zero(m, m);
  for (int p = 0; p < m; ++p)
    for (int q = p; q < m; ++q) {
      double var = 0.0;
      const double v = evaluate(one[static_cast<std::size_t>(p * m + q)], &var);
      rdm.d(p, q) = rdm.d(q, p) = v;
      rdm.d_stderr(p, q) = rdm.d_stderr(q, p) = std::sqrt(var);
    }
  const double tr = rdm.d.trace();
  if (std::abs(tr) > 1e-12) rdm.d *= n_electrons / tr;
  rdm.D2 = Tensor4(m);
  for (const auto& [idx, op] : two) {
    const double v = evaluate(op, nullptr);
    rdm.D2(idx[0], idx[1], idx[2], idx[3]) = v;
    rdm.D2(idx[2], idx[3], idx[0], idx[1]) = v;
  }
  return rdm;
}

double energy_from_rdms(const Mat& h, const Tensor4& g, double constant, const RdmPair& rdm) {
  const int m = static_cast<int>(h.rows());
  double e = constant + h.cwiseProduct(rdm.d).sum();
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q)
      for (int r = 0; r < m; ++r)
        for (int s = 0; s < m; ++s) e += 0.5 * g(p, q, r, s) * rdm.D2(p, q, r, s);
  return e;
}

}  // namespace solvq::qsim

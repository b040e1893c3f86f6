#include "solvq/f2q/jordan_wigner.hpp"
#include "solvq/qsim/ansatz.hpp"
#include "solvq/qsim/pauli_apply.hpp"
#include "solvq/qsim/rdm.hpp"
#include "solvq/solver/excitations.hpp"
#include "test_support.hpp"

#include <catch_amalgamated.hpp>

#include <Eigen/Eigenvalues>

#include <bit>
#include <cmath>
#include <numbers>

using namespace solvq;
using qsim::CVec;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using CMat = Eigen::MatrixXcd;

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

CVec random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  CVec v(Eigen::Index{1} << n);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = qsim::cplx(nd(rng), nd(rng));
  return v.normalized();
}

/// Random state inside the (n_alpha, n_beta) sector of a blocked register.
CVec random_sector_state(int m, int na, int nb, std::mt19937_64& rng) {
  CVec v = random_state(2 * m, rng);
  for (Eigen::Index b = 0; b < v.size(); ++b) {
    const auto u = static_cast<std::uint64_t>(b);
    if (std::popcount(u & ((1ULL << m) - 1)) != na || std::popcount(u >> m) != nb) v(b) = 0;
  }
  return v.normalized();
}

qsim::Gate gate(qsim::GateKind k, std::vector<int> q) { return {k, std::move(q), 0}; }

}  // namespace

TEST_CASE("Excitation gates at a quarter turn move the reference fully", "[qsim][gates]") {
  const int n = 6;
  const auto hf = qsim::hf_state(n, 1, 1);
  CHECK(std::abs(hf[0b001001]) == 1.0);
  CHECK(qsim::bitstring(0b001001, n) == "100100");
  for (auto kind : {qsim::GateKind::single_excitation, qsim::GateKind::ucc_single}) {
    CVec psi = hf.amplitudes();
    qsim::apply_gate(psi, gate(kind, {0, 1}), kHalfPi);
    CHECK_THAT(std::abs(psi(0b001010)), WithinAbs(1.0, 1e-14));
  }
  for (auto kind : {qsim::GateKind::double_excitation, qsim::GateKind::ucc_double}) {
    CVec psi = hf.amplitudes();
    qsim::apply_gate(psi, gate(kind, {0, 3, 2, 5}), kHalfPi);
    CHECK_THAT(std::abs(psi(0b100100)), WithinAbs(1.0, 1e-14));
  }
  // Givens convention: |from> -> cos|from> + sin|to>.
  CVec psi = hf.amplitudes();
  qsim::apply_gate(psi, gate(qsim::GateKind::single_excitation, {0, 1}), 0.3);
  CHECK_THAT(psi(0b001001).real(), WithinAbs(std::cos(0.3), 1e-15));
  CHECK_THAT(psi(0b001010).real(), WithinAbs(std::sin(0.3), 1e-15));
}

TEST_CASE("Gates are unitary, invertible and conserve particle number and spin", "[qsim][gates][property]") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  const std::vector<qsim::Gate> gates = {
      gate(qsim::GateKind::single_excitation, {1, 2}), gate(qsim::GateKind::ucc_single, {5, 3}),
      gate(qsim::GateKind::double_excitation, {0, 3, 2, 5}), gate(qsim::GateKind::ucc_double, {1, 4, 2, 5}),
      gate(qsim::GateKind::ucc_double, {0, 4, 1, 3})};
  const auto n_op = f2q::number_operator(6);
  const auto sz = f2q::sz_operator(3);
  for (const auto& g : gates) {
    for (int trial = 0; trial < 20; ++trial) {
      const CVec psi0 = random_state(6, rng);
      CVec psi = psi0;
      const double t = angle(rng);
      qsim::apply_gate(psi, g, t);
      CHECK_THAT(psi.norm(), WithinAbs(1.0, 1e-12));
      const qsim::Statevector s0(6, psi0), s1(6, psi);
      CHECK_THAT(qsim::expectation(s1, n_op), WithinAbs(qsim::expectation(s0, n_op), 1e-12));
      CHECK_THAT(qsim::expectation(s1, sz), WithinAbs(qsim::expectation(s0, sz), 1e-12));
      qsim::apply_gate(psi, g, t, true);
      CHECK((psi - psi0).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("UCC gates equal the exponential of the Jordan-Wigner generator", "[qsim][gates]") {
  const int n = 6;
  // T = a+_a a+_b a_j a_i for qubits (i, j) -> (a, b), and singles a+_a a_i.
  const std::vector<std::vector<int>> patterns = {{0, 4}, {2, 3}, {0, 3, 2, 5}, {1, 3, 2, 4}, {0, 1, 4, 5}};
  std::mt19937_64 rng(31);
  for (const auto& q : patterns) {
    INFO("qubits " << q.size());
    f2q::PauliSum t(n);
    if (q.size() == 2) {
      t = f2q::ladder_product({{q[1], true}, {q[0], false}}, n);
    } else {
      t = f2q::ladder_product({{q[2], true}, {q[3], true}, {q[1], false}, {q[0], false}}, n);
    }
    CMat tm = CMat::Zero(64, 64);
    for (const auto& [p, c] : t.terms()) tm += c * f2q::QubitOperator(n, {{p, 1.0}}).to_dense();
    const CMat a = tm - tm.adjoint();
    CHECK((a * a * a + a).cwiseAbs().maxCoeff() < 1e-12);
    const double theta = 0.7;
    const CMat u = CMat::Identity(64, 64) + std::sin(theta) * a + (1 - std::cos(theta)) * a * a;
    const auto g = gate(q.size() == 2 ? qsim::GateKind::ucc_single : qsim::GateKind::ucc_double, q);
    const CVec psi = random_state(n, rng);
    CVec out = psi;
    qsim::apply_gate(out, g, theta);
    CHECK((out - u * psi).cwiseAbs().maxCoeff() < 1e-12);
    CVec gen = psi;
    qsim::apply_generator(gen, g);
    CHECK((gen - a * psi).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("Circuit construction and validation", "[qsim][ansatz][input]") {
  const auto ex = solver::all_excitations(3, 1, 1);
  const auto c = qsim::build_circuit(ex, 6, qsim::AnsatzKind::givens, 2);
  CHECK(c.n_params == 2 * static_cast<int>(ex.size()));
  CHECK(c.gates.size() == 2 * ex.size());
  CHECK(c.gates[ex.size()].param == static_cast<int>(ex.size()));
  CHECK_THROWS_AS(qsim::build_circuit(ex, 6, qsim::AnsatzKind::givens, 0), InputError);
  CHECK_THROWS_AS(qsim::build_circuit({{{0}, {0}}}, 6, qsim::AnsatzKind::givens), InputError);
  CHECK_THROWS_AS(qsim::build_circuit({{{0}, {7}}}, 6, qsim::AnsatzKind::givens), InputError);
  CHECK_THROWS_AS(qsim::build_circuit({{{0, 1}, {2}}}, 6, qsim::AnsatzKind::givens), InputError);
  CHECK_THROWS_AS(qsim::apply_ansatz(qsim::hf_state(6, 1, 1), c, Vec::Zero(3)), InputError);
  CHECK(qsim::ansatz_kind_from_string("uccsd") == qsim::AnsatzKind::uccsd);
  CHECK_THROWS_AS(qsim::ansatz_kind_from_string("hea"), InputError);
  CHECK(qsim::gate_kind_from_string("ucc_double") == qsim::GateKind::ucc_double);
}

TEST_CASE("Compiled operators agree with dense matrices", "[qsim][pauli]") {
  std::mt19937_64 rng(41);
  const auto& prob = testing::cached_problem("h3p", 0, false);
  const auto hd = prob.h0.to_dense();
  const qsim::CompiledOperator op(prob.h0);
  for (int trial = 0; trial < 5; ++trial) {
    const CVec psi = random_state(6, rng);
    CHECK((op.apply(psi) - hd * psi).cwiseAbs().maxCoeff() < 1e-12);
    CHECK_THAT(op.expectation(psi), WithinAbs((psi.adjoint() * hd * psi)(0).real(), 1e-12));
    const qsim::Statevector s(6, psi);
    double sum = 0.0;
    for (const auto& t : prob.h0.terms()) sum += t.coefficient * qsim::pauli_expectation(s, t.string).real();
    CHECK_THAT(sum, WithinAbs(qsim::expectation(s, prob.h0), 1e-12));
  }
}

TEST_CASE("Sampling is deterministic per seed and follows the Born rule", "[qsim][shots]") {
  std::mt19937_64 rng(5);
  const qsim::Statevector s(4, random_state(4, rng));
  const auto a = qsim::sample_counts(s, 20000, 9);
  const auto b = qsim::sample_counts(s, 20000, 9);
  const auto c = qsim::sample_counts(s, 20000, 10);
  CHECK(a == b);
  CHECK(a != c);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    const double p = std::norm(s[i]);
    const auto it = a.find(qsim::bitstring(i, 4));
    const double f = it == a.end() ? 0.0 : static_cast<double>(it->second) / 20000.0;
    total += it == a.end() ? 0 : it->second;
    CHECK(std::abs(f - p) < 5.0 * std::sqrt(p * (1 - p) / 20000.0) + 1e-12);
  }
  CHECK(total == 20000u);
  std::mt19937_64 r2(1);
  CHECK(qsim::uniform01(r2) < 1.0);
}

TEST_CASE("Qubit-wise commuting groups are valid and cover every string", "[qsim][shots]") {
  const auto& prob = testing::cached_problem("h3p", 0, false);
  std::vector<f2q::PauliString> strings;
  for (const auto& t : prob.h0.terms())
    if (!t.string.is_identity()) strings.push_back(t.string);
  const auto groups = qsim::group_qubitwise(strings);
  std::size_t count = 0;
  for (const auto& g : groups) {
    count += g.size();
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = i + 1; j < g.size(); ++j) CHECK(f2q::qubitwise_commute(g[i], g[j]));
  }
  CHECK(count == strings.size());
  CHECK(groups.size() < strings.size());
}

TEST_CASE("Exact RDMs: traces, symmetry and the energy identity", "[qsim][rdm][property]") {
  std::mt19937_64 rng(53);
  const auto& prob = testing::cached_problem("h3p", 0, false);
  const int m = prob.n_orbitals();
  const int ne = prob.active.n_active_electrons;
  for (int trial = 0; trial < 5; ++trial) {
    const qsim::Statevector s(2 * m, random_sector_state(m, prob.n_alpha(), prob.n_beta(), rng));
    const auto r = qsim::measure_rdms_exact(s, m);
    CHECK_THAT(r.d.trace(), WithinAbs(ne, 1e-12));
    CHECK((r.d - r.d.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((r.d - qsim::one_rdm_exact(s.amplitudes(), m)).cwiseAbs().maxCoeff() < 1e-13);
    double d2_trace = 0.0;
    for (int p = 0; p < m; ++p)
      for (int r2 = 0; r2 < m; ++r2) d2_trace += r.D2(p, p, r2, r2);
    CHECK_THAT(d2_trace, WithinAbs(ne * (ne - 1.0), 1e-11));
    // Partial trace: sum_r D_pqrr = (N - 1) d_pq.
    for (int p = 0; p < m; ++p)
      for (int q = 0; q < m; ++q) {
        double acc = 0.0;
        for (int r2 = 0; r2 < m; ++r2) acc += r.D2(p, q, r2, r2);
        CHECK_THAT(acc, WithinAbs((ne - 1.0) * r.d(p, q), 1e-11));
      }
    const double e = qsim::energy_from_rdms(prob.active.h_eff, prob.active.g_active, prob.active.constant(), r);
    CHECK_THAT(e, WithinAbs(qsim::expectation(s, prob.h0), 1e-11));
    const Eigen::SelfAdjointEigenSolver<Mat> occ(r.d);
    CHECK(occ.eigenvalues().minCoeff() > -1e-12);
    CHECK(occ.eigenvalues().maxCoeff() < 2.0 + 1e-12);
  }
}

TEST_CASE("Shot RDMs are unbiased within their standard errors", "[qsim][rdm][shots]") {
  std::mt19937_64 rng(61);
  const int m = 3;
  const qsim::Statevector s(6, random_sector_state(m, 1, 1, rng));
  const Mat exact = qsim::measure_rdms_exact(s, m).d;
  qsim::ShotOptions o;
  o.n_shots = 4096;
  o.one_body_only = true;
  const int n_rep = 40;
  Mat mean = Mat::Zero(m, m);
  Mat se = Mat::Zero(m, m);
  for (int k = 0; k < n_rep; ++k) {
    o.seed = 1000 + k;
    const auto r = qsim::measure_rdms_shots(s, m, 2, o);
    CHECK_THAT(r.d.trace(), WithinAbs(2.0, 1e-12));
    CHECK(!r.exact);
    mean += r.d / n_rep;
    se += r.d_stderr / n_rep;
  }
  // Renormalization adds a bias of order 1/n_shots, far below the tolerance.
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q) {
      INFO("p=" << p << " q=" << q);
      CHECK(std::abs(mean(p, q) - exact(p, q)) < 4.0 * se(p, q) / std::sqrt(n_rep) + 1e-3);
    }
  // Same seed, same estimate.
  o.seed = 7;
  CHECK(qsim::measure_rdms_shots(s, m, 2, o).d == qsim::measure_rdms_shots(s, m, 2, o).d);
}

TEST_CASE("Depolarizing noise contracts every Pauli expectation", "[qsim][shots]") {
  std::mt19937_64 rng(71);
  const qsim::Statevector s(4, random_state(4, rng));
  const std::vector<f2q::PauliString> strings = {f2q::PauliString::from_string("ZIII"),
                                                  f2q::PauliString::from_string("XXII"),
                                                  f2q::PauliString::from_string("IYZX")};
  qsim::ShotOptions clean;
  clean.n_shots = 5000;
  clean.seed = 3;
  qsim::ShotOptions noisy = clean;
  noisy.depolarizing = 0.2;
  const auto a = qsim::estimate_paulis(s, strings, clean);
  const auto b = qsim::estimate_paulis(s, strings, noisy);
  for (std::size_t k = 0; k < strings.size(); ++k) {
    CHECK_THAT(b.values[k], WithinAbs(0.8 * a.values[k], 1e-14));
    CHECK(std::abs(a.values[k] - qsim::pauli_expectation(s, a.strings[k]).real()) < 5 * a.stderrs[k] + 1e-3);
  }
  noisy.depolarizing = 1.5;
  CHECK_THROWS_AS(qsim::estimate_paulis(s, strings, noisy), InputError);
  noisy.depolarizing = 0.0;
  noisy.n_shots = 0;
  CHECK_THROWS_AS(qsim::estimate_paulis(s, strings, noisy), InputError);
}

TEST_CASE("State and histogram files", "[qsim][io]") {
  const auto dir = std::filesystem::temp_directory_path() / "solvq_qsim_io";
  std::filesystem::create_directories(dir);
  const auto s = qsim::hf_state(4, 1, 1);
  qsim::write_state_csv(s, dir / "state.csv");
  qsim::write_histogram_json(qsim::sample_counts(s, 100, 1), 4, dir / "hist.json");
  std::ifstream in(dir / "hist.json");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text.find("\"1010\"") != std::string::npos);
  CHECK(text.find("100") != std::string::npos);
  std::filesystem::remove_all(dir);
}

// End-to-end acceptance gate. Prints one PASS/FAIL line per criterion
// (detail lines are indented) and exits non-zero if any criterion fails.

#include "solvq/cli/run.hpp"
#include "solvq/oracle/fci.hpp"
#include "solvq/solver/observables.hpp"
#include "test_support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace solvq;
namespace fs = std::filesystem;

namespace {

// Tolerances, in hartree unless noted.
constexpr double kVqeTolSmall = 1e-6;       // 1: H3+
constexpr double kVqeTolLarge = 5e-5;       // 1: BeH2, H2O (12 qubits)
constexpr double kRuntimeVqe = 120.0;       // 1: seconds per molecule
constexpr double kFciTol = 2e-3;            // 2
constexpr double kPcmVqeTol = 1e-6;         // 3
constexpr double kSolutionTol = 5e-3;       // 4: G
constexpr double kDeltaGRel = 0.10;         // 4: dG, relative ...
constexpr double kDeltaGAbs = 2e-3;         // ... or absolute, whichever is larger
constexpr double kBornRel = 0.015;          // 5: energy
constexpr double kGaussRel = 0.02;          // 5: charge sum
constexpr double kUpolSigmas = 3.0;         // 6
constexpr double kUpolTarget = -0.149;      // 6: noiseless value, three decimals
constexpr double kRuntimeShots = 600.0;     // 6: seconds
constexpr double kTraceDistance = 0.15;     // 7
constexpr double kTraceDistanceTol = 0.005;
constexpr double kRecoverySto3g = 0.99;     // 8: strictly greater
constexpr double kRecovery631g = 0.85;      // 8: at least

struct Published {
  const char* molecule;
  const char* label;
  double fci;
  double solution;
  double delta_g;
};

const Published kPublished[] = {{"h3p", "H3+", -1.2744, -1.4231, -0.1487},
                                {"beh2", "BeH2", -15.5952, -15.6144, -0.0198},
                                {"h2o", "H2O", -75.0233, -75.0279, -0.0049}};

int g_failures = 0;

void detail(const char* fmt, auto... args) {
  std::printf("    ");
  std::printf(fmt, args...);
  std::printf("\n");
  std::fflush(stdout);
}

void verdict(int id, bool pass, const std::string& what) {
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", id, what.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / "solvq-acceptance";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

struct Run {
  cli::RunConfig config;
  solver::SolvationReport report;
  std::optional<solver::SolvationReport> vacuum;
  int exit_code = 0;
  double seconds = 0.0;
};

Run run_config(const std::string& name) {
  Run r;
  r.config = cli::load_config(testing::data_path("configs/" + name + ".json"));
  r.config.output = scratch() / name;
  const auto start = std::chrono::steady_clock::now();
  auto outcome = cli::run(r.config);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.report = std::move(outcome.report);
  r.exit_code = outcome.exit_code;
  if (fs::exists(r.config.output / "vacuum-report.json")) r.vacuum = solver::read_report(r.config.output / "vacuum-report.json");
  return r;
}

/// Same problem as the run, rebuilt for the oracles.
solver::Problem problem_for(const cli::RunConfig& c) {
  return solver::build_problem(molint::read_xyz(c.molecule), cli::problem_options(c));
}

struct Row {
  Published pub;
  Run run;
  double fci = 0.0;
  double pcm_fci = 0.0;
};

// ------------------------------------------------------------------ criteria

void criteria_1_to_4() {
  std::vector<Row> rows;
  for (const auto& pub : kPublished) {
    Row row{pub, run_config(std::string(pub.molecule) + "-dmso")};
    const auto p = problem_for(row.run.config);
    row.fci = oracle::fci(p.active).energy;
    row.pcm_fci = oracle::pcm_fci(p.active, *p.tables).free_energy;
    detail("%-5s run %.1f s (both legs), exit %d; E_vac %.10f  G %.10f  FCI %.10f  PCM-FCI %.10f", pub.label,
           row.run.seconds, row.run.exit_code, row.run.vacuum->energy, row.run.report.free_energy, row.fci, row.pcm_fci);
    rows.push_back(std::move(row));
  }

  bool ok = true;
  std::string worst;
  for (const auto& r : rows) {
    const double tol = std::string(r.pub.molecule) == "h3p" ? kVqeTolSmall : kVqeTolLarge;
    const double err = std::abs(r.run.vacuum->energy - r.fci);
    const bool pass = err < tol && r.run.seconds < kRuntimeVqe && r.run.vacuum->converged;
    detail("[1] %-5s |E_VQE - E_FCI| = %.2e (tol %.0e), %.1f s", r.pub.label, err, tol, r.run.seconds);
    ok = ok && pass;
  }
  verdict(1, ok, "gas-phase VQE reproduces FCI for H3+, BeH2, H2O");

  ok = true;
  for (const auto& r : rows) {
    const double err = std::abs(r.fci - r.pub.fci);
    detail("[2] %-5s FCI %.6f vs %.4f: %.2f mHa (tol %.1f)", r.pub.label, r.fci, r.pub.fci, 1e3 * err, 1e3 * kFciTol);
    ok = ok && err < kFciTol;
  }
  verdict(2, ok, "gas-phase FCI energies at the bundled geometries");

  {
    const auto& r = rows.front();
    const double err = std::abs(r.run.report.free_energy - r.pcm_fci);
    detail("[3] H3+   |G_VQE - G_PCM-FCI| = %.2e (tol %.0e)", err, kPcmVqeTol);
    verdict(3, err < kPcmVqeTol && r.run.report.converged, "H3+ PCM-VQE reproduces the PCM-FCI free energy");
  }

  ok = true;
  for (const auto& r : rows) {
    const double g = r.run.report.free_energy;
    const double dg = r.run.report.delta_g->value;
    const double g_err = std::abs(g - r.pub.solution);
    const double dg_tol = std::max(kDeltaGRel * std::abs(r.pub.delta_g), kDeltaGAbs);
    const double dg_err = std::abs(dg - r.pub.delta_g);
    const bool pass = g_err < kSolutionTol && dg_err <= dg_tol;
    detail("[4] %-5s G %.6f vs %.4f: %.2f mHa (tol %.1f); dG %.6f vs %.4f: %.2f mHa (tol %.2f)  %s", r.pub.label, g,
           r.pub.solution, 1e3 * g_err, 1e3 * kSolutionTol, dg, r.pub.delta_g, 1e3 * dg_err, 1e3 * dg_tol,
           pass ? "ok" : "out of tolerance");
    ok = ok && pass;
  }
  verdict(4, ok, "free energies in solution and solvation free energies against published values");
}

void criterion_5() {
  const double eps = 46.7;
  const double radius = 1.2 * 1.20 / kBohrInAngstrom;  // scaled hydrogen sphere
  const auto cav = cavity::build_cavity({{Vec3::Zero(), radius}}, 4);
  const auto resp = cavity::build_response(cav, eps);
  Vec v(static_cast<Eigen::Index>(cav.size()));
  for (std::size_t i = 0; i < cav.size(); ++i) v(static_cast<Eigen::Index>(i)) = 1.0 / cav.tesserae[i].center.norm();
  const Vec q = cavity::apparent_charges(resp, v);
  const double energy = 0.5 * q.dot(v);
  const double exact = -(1.0 - 1.0 / eps) / (2.0 * radius);
  const double e_rel = std::abs(energy / exact - 1.0);
  const double q_exact = -(1.0 - 1.0 / eps);
  const double q_rel = std::abs(q.sum() / q_exact - 1.0);
  detail("[5] R = %.4f bohr, %zu tesserae: 1/2 qV = %.8f vs %.8f (%.3f%%); sum q = %.6f vs %.6f (%.3f%%)", radius,
         cav.size(), energy, exact, 100 * e_rel, q.sum(), q_exact, 100 * q_rel);
  verdict(5, e_rel < kBornRel && q_rel < kGaussRel, "Born ion energy and Gauss law at mesh level 4");
}

void criterion_6() {
  // theta_vac is the noiseless gas-phase optimum, the state at which the
  // noiseless reference is defined; shots enter only through the estimate.
  const auto noiseless = run_config("h3p-dmso");
  const double reference = noiseless.report.u_pol->value;
  const auto shot_config = cli::load_config(testing::data_path("configs/h3p-dmso-shots.json"));
  const auto p = problem_for(noiseless.config);
  const auto& vac = *noiseless.vacuum;
  const auto circuit = qsim::build_circuit(vac.excitations, p.n_qubits(), noiseless.config.vqe.ansatz, vac.layers);
  const auto start = std::chrono::steady_clock::now();
  const auto u = solver::polarization_energy_sampled(p, circuit, vac.theta, shot_config.vqe.shots,
                                                     shot_config.u_pol_samples, shot_config.vqe.seed);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const double dev = std::abs(u.mean - reference);
  detail("[6] noiseless U_pol at theta_vac %.9f (rounds to %.3f: %s)", reference, kUpolTarget,
         std::abs(reference - kUpolTarget) < 5e-4 ? "yes" : "no");
  detail("[6] %d x %zu shots at theta_vac: U_pol %.9f +/- %.9f, deviation %.2f sigma; %.1f s", shot_config.u_pol_samples,
         shot_config.vqe.shots.n_shots, u.mean, u.stderr_, u.stderr_ > 0 ? dev / u.stderr_ : INFINITY, seconds);

  // The full shot-mode pipeline also optimizes theta_vac under noise.
  const auto shots = run_config("h3p-dmso-shots");
  const auto& us = *shots.report.u_pol;
  detail("[6] shot-mode run (theta_vac optimized with shots): U_pol %.9f +/- %.9f, %.2f sigma from the reference; "
         "dG %.6f +/- %.6f; %.1f s",
         us.value, us.stderr_, us.stderr_ > 0 ? std::abs(us.value - reference) / us.stderr_ : INFINITY,
         shots.report.delta_g->value, shots.report.delta_g->stderr_, shots.seconds);

  const bool pass = u.stderr_ > 0 && dev <= kUpolSigmas * u.stderr_ && std::abs(reference - kUpolTarget) < 5e-4 &&
                    seconds + shots.seconds < kRuntimeShots;
  verdict(6, pass, "shot-averaged polarization energy agrees with the noiseless value");
}

void criterion_7() {
  const Mat exact = testing::read_matrix_csv(testing::data_path("fixtures/rdm_h3p_exact.csv"));
  const Mat sol = testing::read_matrix_csv(testing::data_path("fixtures/rdm_h3p_noisy_solution.csv"));
  const Mat vac = testing::read_matrix_csv(testing::data_path("fixtures/rdm_h3p_noisy_vacuum.csv"));
  set_warning_handler([](const std::string&) {});  // the noisy fixtures are asymmetric by construction
  const double d_sol = solver::trace_distance(exact, sol);
  const double d_vac = solver::trace_distance(exact, vac);
  set_warning_handler(nullptr);
  detail("[7] D(exact, solution) = %.4f; D(exact, vacuum) = %.4f", d_sol, d_vac);
  verdict(7, std::abs(d_sol - kTraceDistance) <= kTraceDistanceTol, "trace distance of the bundled 1-RDM fixtures");
}

void criterion_8() {
  bool ok = true;
  for (auto [name, label, threshold, strict] : {std::tuple{"heh-sto3g-dmso", "STO-3G", kRecoverySto3g, true},
                                                {"heh-631g-dmso", "6-31G", kRecovery631g, false}}) {
    const auto run = run_config(name);
    const auto p = problem_for(run.config);
    const double g_hf = p.scf_pcm->total_energy;
    const double g_fci = oracle::pcm_fci(p.active, *p.tables).free_energy;
    const double g = run.report.free_energy;
    const double recovery = (g_hf - g) / (g_hf - g_fci);
    const bool completed = run.exit_code == cli::kExitOk || run.exit_code == cli::kExitNotConverged;
    const bool pass = completed && (strict ? recovery > threshold : recovery >= threshold);
    detail("[8] HeH+ %-6s %d iterations (%s): G %.8f, PCM-HF %.8f, PCM-FCI %.8f, recovery %.2f%% (need %s%.0f%%)",
           label, run.report.iterations, run.report.converged ? "converged" : "budget exhausted", g, g_hf, g_fci,
           100 * recovery, strict ? ">" : ">=", 100 * threshold);
    ok = ok && pass;
  }
  verdict(8, ok, "HeH+ UCCSD PCM-VQE recovers the solvated correlation free energy");
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> steps = {criteria_1_to_4, criterion_5, criterion_6, criterion_7,
                                                    criterion_8};
  for (const auto& step : steps) {
    try {
      step();
    } catch (const std::exception& e) {
      std::printf("FAIL error: %s\n", e.what());
      ++g_failures;
    }
  }
  std::printf("%d criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}

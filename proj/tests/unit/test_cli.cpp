#include "solvq/cli/run.hpp"
#include "solvq/qsim/pauli_apply.hpp"
#include "test_support.hpp"

#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>

using namespace solvq;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
namespace fs = std::filesystem;

namespace {

/// Fresh scratch directory per test case.
fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("solvq_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

struct Exec {
  int code = -1;
  std::string out;
  std::string err;
};

/// Runs the solvq executable from `cwd`.
Exec run_solvq(const std::string& args, const fs::path& cwd) {
  const std::string cmd = "cd '" + cwd.string() + "' && '" SOLVQ_EXE "' " + args + " > stdout.txt 2> stderr.txt";
  const int status = std::system(cmd.c_str());
  Exec e;
  e.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  e.out = slurp(cwd / "stdout.txt");
  e.err = slurp(cwd / "stderr.txt");
  return e;
}

std::string h3p_config(const std::string& method, const std::string& extra = "",
                       const std::string& vqe = R"({"optimizer": {"tolerance": 1e-10}})") {
  const std::string mol = testing::data_path("molecules/h3p.xyz").string();
  std::string s = R"({"schema_version": 1, "molecule": ")" + mol + R"(", "method": ")" + method + R"(", "seed": 3)";
  if (method.rfind("pcm", 0) == 0) s += R"(, "solvent": {"epsilon": 46.7, "mesh_level": 3})";
  s += R"(, "vqe": )" + vqe;
  return s + extra + "}";
}

qsim::Statevector read_state(const fs::path& p, int n_qubits) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);  // header
  qsim::CVec amps = qsim::CVec::Zero(Eigen::Index{1} << n_qubits);
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string i, re, im;
    std::getline(ss, i, ',');
    std::getline(ss, re, ',');
    std::getline(ss, im, ',');
    amps(std::stol(i)) = qsim::cplx(std::stod(re), std::stod(im));
  }
  return qsim::Statevector(n_qubits, amps);
}

std::string field_of(const std::string& text) {
  try {
    cli::parse_config(text, fs::current_path());
  } catch (const cli::ConfigError& e) {
    return e.field();
  }
  return "<accepted>";
}

std::string strip_timing(const fs::path& report) { return solver::report_to_json(solver::read_report(report), false); }

}  // namespace

TEST_CASE("Config errors name the offending field", "[cli][config]") {
  const std::string mol = testing::data_path("molecules/h3p.xyz").string();
  const std::string base = R"({"schema_version": 1, "molecule": ")" + mol + "\"";
  CHECK(field_of("{") == "<root>");
  CHECK(field_of(R"({"molecule": "x.xyz"})") == "schema_version");
  CHECK(field_of(R"({"schema_version": 2, "molecule": "x.xyz"})") == "schema_version");
  CHECK(field_of(R"({"schema_version": 1})") == "molecule");
  CHECK(field_of(base + R"(, "method": "dft"})") == "method");
  CHECK(field_of(base + R"(, "method": "pcm-vqe"})") == "solvent");
  CHECK(field_of(base + R"(, "colour": 1})") == "colour");
  CHECK(field_of(base + R"(, "solvent": {"epsilon": 0.5}})") == "solvent.epsilon");
  CHECK(field_of(base + R"(, "solvent": {"epsilon": "water"}})") == "solvent.epsilon");
  CHECK(field_of(base + R"(, "solvent": {"mesh_level": 9}})") == "solvent.mesh_level");
  CHECK(field_of(base + R"(, "solvent": {"radii": {"H": -1}}})") == "solvent.radii.H");
  CHECK(field_of(base + R"(, "vqe": {"optimizer": {"step": -0.1}}})") == "vqe.optimizer.step");
  CHECK(field_of(base + R"(, "vqe": {"optimizer": {"kind": "adam"}}})") == "vqe.optimizer.kind");
  CHECK(field_of(base + R"(, "vqe": {"optimiser": {}}})") == "vqe.optimiser");
  CHECK(field_of(base + R"(, "vqe": {"layers": 0}})") == "vqe.layers");
  CHECK(field_of(base + R"(, "vqe": {"excitations": [{"from": [0], "to": [1, 2]}]}})") == "vqe.excitations[0]");
  CHECK(field_of(base + R"(, "shots": {"enabled": true}})") == "vqe.optimizer.gradient");
  CHECK(field_of(base + R"(, "shots": {"n_shots": -5}})") == "shots.n_shots");
  CHECK(field_of(base + R"(, "frozen_core": "one"})") == "frozen_core");
  CHECK(field_of(base + R"(, "solvent": {"epsilon": "inf"}})") == "<accepted>");
  CHECK_THROWS_AS(cli::load_config("/nonexistent/config.json"), InputError);
}

TEST_CASE("Resolved config reproduces the parsed config", "[cli][config]") {
  for (const char* name : {"h3p-dmso.json", "h2o-dmso.json", "h3p-dmso-shots.json", "heh-sto3g-dmso.json"}) {
    INFO(name);
    const auto a = cli::load_config(testing::data_path(std::string("configs/") + name));
    const auto text = cli::resolved_json(a);
    const auto b = cli::parse_config(text, "/");
    CHECK(cli::resolved_json(b) == text);
    CHECK(b.molecule == a.molecule);
    CHECK(b.vqe.optimizer.tolerance == a.vqe.optimizer.tolerance);
    CHECK(b.vqe.layers == a.vqe.layers);
    CHECK(b.solvent.has_value() == a.solvent.has_value());
  }
}

TEST_CASE("Gas-phase methods ignore a solvent block", "[cli][run]") {
  const auto dir = scratch("gas_ignores_solvent");
  auto with = cli::parse_config(h3p_config("pcm-vqe"), dir);
  with.method = cli::Method::vqe;
  with.output = dir / "with";
  auto without = cli::parse_config(h3p_config("vqe"), dir);
  without.output = dir / "without";
  CHECK(!cli::problem_options(with).solvent);
  const auto a = cli::run(with);
  const auto b = cli::run(without);
  CHECK(a.exit_code == cli::kExitOk);
  CHECK(strip_timing(dir / "with/report.json") == strip_timing(dir / "without/report.json"));
  CHECK(!fs::exists(dir / "with/cavity.csv"));
}

TEST_CASE("solvq run writes artifacts and is deterministic", "[cli][exe]") {
  const auto dir = scratch("determinism");
  write(dir / "sol.json", h3p_config("pcm-vqe", R"(, "output": "first")"));
  const auto molecule = testing::data_path("molecules/h3p.xyz");
  const std::string config_before = slurp(dir / "sol.json"), molecule_before = slurp(molecule);
  const auto first = run_solvq("run sol.json --dump-state --dump-hamiltonian", dir);
  REQUIRE(first.code == 0);
  // Inputs are left untouched.
  CHECK(slurp(dir / "sol.json") == config_before);
  CHECK(slurp(molecule) == molecule_before);
  CHECK_THAT(first.out, ContainsSubstring("pcm-vqe H3/STO-3G"));
  CHECK_THAT(first.out, ContainsSubstring("dG_sol"));
  for (const char* f : {"resolved-config.json", "report.json", "trace.csv", "cavity.csv", "vacuum-report.json",
                        "vacuum-trace.csv", "state.csv", "hamiltonian.json", "FCIDUMP", "hamiltonian-effective.json"}) {
    INFO(f);
    CHECK(fs::exists(dir / "first" / f));
  }
  const auto second = run_solvq("run sol.json --output second", dir);
  REQUIRE(second.code == 0);
  CHECK(strip_timing(dir / "first/report.json") == strip_timing(dir / "second/report.json"));
  CHECK(slurp(dir / "first/trace.csv") == slurp(dir / "second/trace.csv"));

  // The resolved config runs to the same result.
  const auto third = run_solvq("run first/resolved-config.json --output third", dir);
  REQUIRE(third.code == 0);
  CHECK(strip_timing(dir / "first/report.json") == strip_timing(dir / "third/report.json"));

  const auto r = solver::read_report(dir / "first/report.json");
  REQUIRE(r.delta_g);
  REQUIRE(r.u_pol);
  CHECK(r.delta_g->value < 0.0);
  CHECK(r.references.count("vacuum_energy") == 1);
  // The effective Hamiltonian at the final state reproduces G.
  const auto heff = f2q::QubitOperator::from_json(slurp(dir / "first/hamiltonian-effective.json"));
  REQUIRE(heff.n_qubits() == 6);
  const auto state = read_state(dir / "first/state.csv", 6);
  CHECK_THAT(qsim::expectation(state, heff), WithinAbs(r.free_energy, 1e-9));
}

TEST_CASE("solvq run: seeds, parallel jobs and exit codes", "[cli][exe]") {
  const auto dir = scratch("jobs");
  write(dir / "a.json", h3p_config("vqe", R"(, "output": "a")", R"({"initial": {"mode": "random"}})"));
  write(dir / "b.json", h3p_config("pcm-hf", R"(, "output": "b")"));
  write(dir / "bad.json", h3p_config("vqe", R"(, "output": "bad", "bogus": true)"));
  write(dir / "short.json", h3p_config("pcm-vqe", R"(, "output": "short")", R"({"optimizer": {"max_iterations": 1}})"));
  const auto ok = run_solvq("run a.json b.json --jobs 2", dir);
  CHECK(ok.code == 0);
  CHECK(fs::exists(dir / "a/report.json"));
  CHECK(fs::exists(dir / "b/report.json"));
  const auto bad = run_solvq("run a.json bad.json --jobs 2", dir);
  CHECK(bad.code == 1);
  CHECK_THAT(bad.err, ContainsSubstring("bogus"));
  CHECK(run_solvq("run short.json", dir).code == 3);
  CHECK(run_solvq("run missing.json", dir).code != 0);

  CHECK(run_solvq("run a.json --seed 11 --output s11", dir).code == 0);
  CHECK(solver::read_report(dir / "s11/report.json").seed == 11);
}

TEST_CASE("solvq compare", "[cli][exe]") {
  const auto dir = scratch("compare");
  write(dir / "gas.json", h3p_config("vqe", R"(, "output": "gas")"));
  write(dir / "sol.json", h3p_config("pcm-vqe", R"(, "output": "sol")"));
  write(dir / "other.json",
        R"({"schema_version": 1, "molecule": ")" + testing::data_path("molecules/heh.xyz").string() +
            R"(", "method": "hf", "output": "other"})");
  REQUIRE(run_solvq("run gas.json sol.json other.json --jobs 3", dir).code == 0);

  const auto same = run_solvq("compare gas/report.json gas/report.json -o same.json", dir);
  REQUIRE(same.code == 0);
  const auto c0 = cli::compare(solver::read_report(dir / "gas/report.json"), solver::read_report(dir / "gas/report.json"));
  for (const auto& [k, v] : c0.deltas) CHECK(v == 0.0);
  CHECK(!c0.delta_g);

  const auto diff = run_solvq("compare gas/report.json sol/report.json", dir);
  REQUIRE(diff.code == 0);
  CHECK(fs::exists(dir / "comparison.json"));
  const auto gas = solver::read_report(dir / "gas/report.json");
  const auto sol = solver::read_report(dir / "sol/report.json");
  const auto c = cli::compare(gas, sol);
  REQUIRE(c.delta_g);
  CHECK_THAT(c.delta_g->value, WithinAbs(sol.free_energy - gas.free_energy, 1e-12));
  CHECK_THAT(c.delta_g->value, WithinAbs(sol.delta_g->value, 1e-12));
  CHECK_THAT(cli::comparison_text(c), ContainsSubstring("H3"));

  const auto bad = run_solvq("compare gas/report.json other/report.json", dir);
  CHECK(bad.code == 1);
  CHECK_THROWS_AS(cli::compare(gas, solver::read_report(dir / "other/report.json")), InputError);
}

TEST_CASE("Shot-mode run reports statistical errors", "[cli][exe][shots]") {
  const auto dir = scratch("shots");
  write(dir / "shots.json",
        h3p_config("pcm-vqe", R"(, "output": "shots", "shots": {"enabled": true, "n_shots": 2048, "u_pol_samples": 5})",
                   R"({"optimizer": {"gradient": "finite_difference", "fd_step": 0.05, "max_iterations": 5, "tolerance": 1e-4}})"));
  const auto e = run_solvq("run shots.json --dump-state", dir);
  CHECK((e.code == 0 || e.code == 3));
  const auto r = solver::read_report(dir / "shots/report.json");
  CHECK(r.shots);
  CHECK(r.n_shots == 2048u);
  REQUIRE(r.delta_g);
  REQUIRE(r.u_pol);
  CHECK(r.delta_g->stderr_ > 0.0);
  CHECK(r.u_pol->stderr_ > 0.0);
  CHECK(fs::exists(dir / "shots/histogram.json"));
  CHECK_THAT(e.out, ContainsSubstring("+/-"));
}

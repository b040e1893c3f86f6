// solvq: batch driver for gas-phase and solvated VQE / FCI / HF runs.
//
//   solvq run config.json [more.json ...] [--jobs N] [--seed S]
//             [--dump-state] [--dump-hamiltonian] [--output DIR]
//   solvq compare a/report.json b/report.json [--output comparison.json]

#include "solvq/cli/run.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

namespace {

using namespace solvq;

std::mutex g_print;

void print(std::FILE* f, const std::string& line) {
  std::lock_guard lock(g_print);
  std::fputs(line.c_str(), f);
  std::fputc('\n', f);
  std::fflush(f);
}

struct RunArgs {
  std::vector<std::string> configs;
  int jobs = 1;
  std::optional<std::uint64_t> seed;
  bool dump_state = false;
  bool dump_hamiltonian = false;
  std::string output;
};

int run_one(const std::string& path, const RunArgs& args) {
  try {
    auto cfg = cli::load_config(path);
    if (args.seed) cfg.vqe.seed = *args.seed;
    if (args.dump_state) cfg.dump_state = true;
    if (args.dump_hamiltonian) cfg.dump_hamiltonian = true;
    if (!args.output.empty()) cfg.output = std::filesystem::absolute(args.output);
    const auto o = cli::run(cfg);
    const auto& r = o.report;
    char buf[512];
    std::snprintf(buf, sizeof buf, "%s: %s %s/%s  G = %.10f Ha  E = %.10f Ha%s", path.c_str(), r.method.c_str(),
                  r.system.c_str(), r.basis.c_str(), r.free_energy, r.energy, r.converged ? "" : "  (NOT CONVERGED)");
    std::string line = buf;
    if (r.delta_g) {
      std::snprintf(buf, sizeof buf, "  dG_sol = %.6f", r.delta_g->value);
      line += buf;
      if (r.delta_g->stderr_ > 0.0) {
        std::snprintf(buf, sizeof buf, " +/- %.6f", r.delta_g->stderr_);
        line += buf;
      }
    }
    line += "  -> " + o.output.string();
    print(stdout, line);
    return o.exit_code;
  } catch (const cli::ConfigError& e) {
    print(stderr, path + ": config error: " + e.what());
    return cli::kExitInputError;
  } catch (const scf::ScfConvergenceError& e) {
    print(stderr, path + ": " + e.what());
    return cli::kExitNumericalError;
  } catch (const NumericalError& e) {
    print(stderr, path + ": numerical failure: " + e.what());
    return cli::kExitNumericalError;
  } catch (const InputError& e) {
    print(stderr, path + ": input error: " + e.what());
    return cli::kExitInputError;
  } catch (const std::exception& e) {
    print(stderr, path + ": error: " + e.what());
    return cli::kExitInputError;
  }
}

int run_all(const RunArgs& args) {
  if (!args.output.empty() && args.configs.size() > 1) {
    print(stderr, "--output needs exactly one config");
    return cli::kExitInputError;
  }
  std::vector<int> codes(args.configs.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < args.configs.size(); k = next++) codes[k] = run_one(args.configs[k], args);
  };
  const auto n_threads = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, args.jobs)), args.configs.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return *std::max_element(codes.begin(), codes.end());
}

int compare_reports(const std::string& a, const std::string& b, const std::string& output) {
  try {
    const auto c = cli::compare(solver::read_report(a), solver::read_report(b));
    std::cout << cli::comparison_text(c);
    std::ofstream out(output);
    if (!out) throw InputError("cannot write " + output);
    out << cli::comparison_json(c);
    return cli::kExitOk;
  } catch (const std::exception& e) {
    print(stderr, std::string("compare: ") + e.what());
    return cli::kExitInputError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"solvq: VQE with a polarizable continuum solvent"};
  app.require_subcommand(1);

  RunArgs args;
  std::uint64_t seed = 0;
  auto* run = app.add_subcommand("run", "execute one or more run configs");
  run->add_option("config", args.configs, "JSON run config(s)")->required()->check(CLI::ExistingFile);
  run->add_option("-j,--jobs", args.jobs, "run independent configs on N threads")->check(CLI::PositiveNumber);
  auto* seed_opt = run->add_option("--seed", seed, "override the config seed");
  run->add_flag("--dump-state", args.dump_state, "write state.csv (and histogram.json in shot mode)");
  run->add_flag("--dump-hamiltonian", args.dump_hamiltonian, "write hamiltonian.json and FCIDUMP");
  run->add_option("-o,--output", args.output, "output directory (single config only)");

  std::string report_a, report_b, cmp_out = "comparison.json";
  auto* cmp = app.add_subcommand("compare", "difference of two report.json files, with dG_sol when one is solvated");
  cmp->add_option("a", report_a, "first report")->required()->check(CLI::ExistingFile);
  cmp->add_option("b", report_b, "second report")->required()->check(CLI::ExistingFile);
  cmp->add_option("-o,--output", cmp_out, "where to write the JSON summary");

  CLI11_PARSE(app, argc, argv);
  if (*seed_opt) args.seed = seed;

  if (run->parsed()) return run_all(args);
  return compare_reports(report_a, report_b, cmp_out);
}

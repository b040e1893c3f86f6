#include "solvq/cli/config.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace solvq::cli {

using nlohmann::json;
namespace fs = std::filesystem;

std::string to_string(Method m) {
  switch (m) {
    case Method::vqe: return "vqe";
    case Method::pcm_vqe: return "pcm-vqe";
    case Method::fci: return "fci";
    case Method::pcm_fci: return "pcm-fci";
    case Method::hf: return "hf";
    case Method::pcm_hf: return "pcm-hf";
  }
  return "unknown";
}

Method method_from_string(const std::string& name) {
  for (Method m : {Method::vqe, Method::pcm_vqe, Method::fci, Method::pcm_fci, Method::hf, Method::pcm_hf}) {
    if (to_string(m) == name) return m;
  }
  throw InputError("unknown method '" + name + "'");
}

bool is_solvated(Method m) { return m == Method::pcm_vqe || m == Method::pcm_fci || m == Method::pcm_hf; }

namespace {

/// Typed access to one JSON object; remembers which keys were read so that
/// leftovers (usually typos) can be reported.
class Fields {
 public:
  Fields(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const json* find(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end() || it->is_null()) return nullptr;
    return &*it;
  }

  const json& require(const std::string& key) {
    const json* v = find(key);
    if (!v) throw ConfigError(at(key), "required field is missing");
    return *v;
  }

  double number(const std::string& key, double fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_number()) throw ConfigError(at(key), "expected a number");
    return v->get<double>();
  }

  int integer(const std::string& key, int fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_number_integer()) throw ConfigError(at(key), "expected an integer");
    return v->get<int>();
  }

  std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_number_unsigned()) throw ConfigError(at(key), "expected a non-negative integer");
    return v->get<std::uint64_t>();
  }

  bool boolean(const std::string& key, bool fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_boolean()) throw ConfigError(at(key), "expected true or false");
    return v->get<bool>();
  }

  std::string string(const std::string& key, const std::string& fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_string()) throw ConfigError(at(key), "expected a string");
    return v->get<std::string>();
  }

  /// Parses a string with `convert`, turning its InputError into a ConfigError.
  template <class T, class F>
  T choice(const std::string& key, T fallback, F convert) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_string()) throw ConfigError(at(key), "expected a string");
    try {
      return convert(v->get<std::string>());
    } catch (const InputError& e) {
      throw ConfigError(at(key), e.what());
    }
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) throw ConfigError(at(it.key()), "unknown field");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void check(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw ConfigError(field, what);
}

fs::path resolve(const fs::path& p, const fs::path& base) {
  return (p.is_absolute() ? p : base / p).lexically_normal();
}

solver::SolventOptions parse_solvent(const json& j) {
  Fields f(j, "solvent");
  solver::SolventOptions s;
  if (const json* eps = f.find("epsilon")) {
    if (eps->is_string() && (eps->get<std::string>() == "inf" || eps->get<std::string>() == "infinity")) {
      s.epsilon = INFINITY;
    } else if (eps->is_number()) {
      s.epsilon = eps->get<double>();
    } else {
      throw ConfigError(f.at("epsilon"), "expected a number or \"inf\"");
    }
  }
  check(s.epsilon >= 1.0, f.at("epsilon"), "dielectric constant must be >= 1");
  if (const json* radii = f.find("radii")) {
    Fields r(*radii, f.at("radii"));
    for (auto it = radii->begin(); it != radii->end(); ++it) {
      const double v = r.number(it.key(), 0.0);
      check(v > 0.0, r.at(it.key()), "radius must be positive");
      s.mesh.radii[it.key()] = v;
    }
  }
  s.mesh.scale = f.number("scale", s.mesh.scale);
  check(s.mesh.scale > 0.0, f.at("scale"), "must be positive");
  s.mesh.subdivision_level = f.integer("mesh_level", s.mesh.subdivision_level);
  check(s.mesh.subdivision_level >= 1 && s.mesh.subdivision_level <= 5, f.at("mesh_level"), "must be in [1, 5]");
  s.mesh.exposure_samples = f.integer("exposure_samples", s.mesh.exposure_samples);
  check(s.mesh.exposure_samples >= 1, f.at("exposure_samples"), "must be >= 1");
  s.symmetrize = f.boolean("symmetrize", s.symmetrize);
  f.finish();
  return s;
}

qsim::Excitation parse_excitation(const json& j, const std::string& path) {
  Fields f(j, path);
  qsim::Excitation e;
  for (const char* key : {"from", "to"}) {
    const json& v = f.require(key);
    check(v.is_array(), f.at(key), "expected a list of qubit indices");
    std::vector<int> q;
    for (const auto& x : v) {
      check(x.is_number_integer() && x.get<int>() >= 0, f.at(key), "expected non-negative integers");
      q.push_back(x.get<int>());
    }
    (std::string(key) == "from" ? e.from : e.to) = q;
  }
  check(e.from.size() == e.to.size() && (e.from.size() == 1 || e.from.size() == 2), path,
        "an excitation moves one or two electrons");
  f.finish();
  return e;
}

solver::OptimizerOptions parse_optimizer(const json& j) {
  Fields f(j, "vqe.optimizer");
  solver::OptimizerOptions o;
  o.kind = f.choice("kind", o.kind, solver::optimizer_from_string);
  o.step = f.number("step", o.step);
  check(o.step > 0.0, f.at("step"), "must be positive");
  o.adaptive_step = f.boolean("adaptive_step", o.adaptive_step);
  o.max_iterations = f.integer("max_iterations", o.max_iterations);
  check(o.max_iterations >= 1, f.at("max_iterations"), "must be >= 1");
  o.tolerance = f.number("tolerance", o.tolerance);
  check(o.tolerance > 0.0, f.at("tolerance"), "must be positive");
  o.window = f.integer("window", o.window);
  check(o.window >= 1, f.at("window"), "must be >= 1");
  o.gradient_tolerance = f.number("gradient_tolerance", o.gradient_tolerance);
  check(o.gradient_tolerance >= 0.0, f.at("gradient_tolerance"), "must be >= 0");
  o.gradient = f.choice("gradient", o.gradient, solver::gradient_method_from_string);
  o.fd_step = f.number("fd_step", o.fd_step);
  check(o.fd_step > 0.0, f.at("fd_step"), "must be positive");
  f.finish();
  return o;
}

void parse_vqe(const json& j, solver::VqeConfig& v) {
  Fields f(j, "vqe");
  v.ansatz = f.choice("ansatz", v.ansatz, qsim::ansatz_kind_from_string);
  v.layers = f.integer("layers", v.layers);
  check(v.layers >= 1, f.at("layers"), "must be >= 1");
  if (const json* sel = f.find("selection")) {
    Fields s(*sel, f.at("selection"));
    const std::string mode = s.string("mode", v.selection.adaptive ? "adaptive" : "all");
    check(mode == "adaptive" || mode == "all", s.at("mode"), "expected \"adaptive\" or \"all\"");
    v.selection.adaptive = mode == "adaptive";
    v.selection.threshold = s.number("threshold", v.selection.threshold);
    check(v.selection.threshold >= 0.0, s.at("threshold"), "must be >= 0");
    v.selection.use_solvent = s.boolean("use_solvent", v.selection.use_solvent);
    s.finish();
  }
  if (const json* ex = f.find("excitations")) {
    check(ex->is_array(), f.at("excitations"), "expected a list");
    std::vector<qsim::Excitation> list;
    for (std::size_t k = 0; k < ex->size(); ++k) {
      list.push_back(parse_excitation((*ex)[k], f.at("excitations") + "[" + std::to_string(k) + "]"));
    }
    v.excitations = std::move(list);
  }
  if (const json* opt = f.find("optimizer")) v.optimizer = parse_optimizer(*opt);
  if (const json* init = f.find("initial")) {
    Fields i(*init, f.at("initial"));
    const std::string mode = i.string("mode", v.random_init ? "random" : "zero");
    check(mode == "zero" || mode == "random", i.at("mode"), "expected \"zero\" or \"random\"");
    v.random_init = mode == "random";
    v.init_scale = i.number("scale", v.init_scale);
    check(v.init_scale >= 0.0, i.at("scale"), "must be >= 0");
    if (const json* theta = i.find("theta")) {
      check(theta->is_array(), i.at("theta"), "expected a list of numbers");
      Vec t(static_cast<Eigen::Index>(theta->size()));
      for (std::size_t k = 0; k < theta->size(); ++k) {
        check((*theta)[k].is_number(), i.at("theta"), "expected a list of numbers");
        t(static_cast<Eigen::Index>(k)) = (*theta)[k].get<double>();
      }
      v.initial_theta = t;
    }
    i.finish();
  }
  f.finish();
}

}  // namespace

RunConfig parse_config(const std::string& text, const fs::path& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("not valid JSON: ") + e.what());
  }
  Fields f(j, "");
  const json& version = f.require("schema_version");
  check(version.is_number_integer() && version.get<int>() == kConfigSchemaVersion, "schema_version",
        "unsupported version (expected " + std::to_string(kConfigSchemaVersion) + ")");

  RunConfig c;
  const json& mol = f.require("molecule");
  check(mol.is_string(), "molecule", "expected a path");
  c.molecule = resolve(mol.get<std::string>(), base_dir);
  c.basis = f.string("basis", c.basis);
  if (const json* bf = f.find("basis_file")) {
    check(bf->is_string(), "basis_file", "expected a path");
    c.basis_file = resolve(bf->get<std::string>(), base_dir);
  }
  c.method = f.choice("method", c.method, method_from_string);
  c.n_frozen_core = f.integer("frozen_core", c.n_frozen_core);
  check(c.n_frozen_core >= 0, "frozen_core", "must be >= 0");
  c.vqe.seed = f.unsigned_integer("seed", c.vqe.seed);
  c.output = resolve(f.string("output", c.output.string()), fs::current_path());

  if (const json* sv = f.find("solvent")) c.solvent = parse_solvent(*sv);
  const std::string orbitals = f.string("orbitals", c.pcm_orbitals ? "pcm" : "gas");
  check(orbitals == "gas" || orbitals == "pcm", "orbitals", "expected \"gas\" or \"pcm\"");
  c.pcm_orbitals = orbitals == "pcm";
  check(!is_solvated(c.method) || c.solvent, "solvent", "method " + to_string(c.method) + " needs a solvent block");
  check(!c.pcm_orbitals || c.solvent, "orbitals", "PCM orbitals need a solvent block");

  if (const json* v = f.find("vqe")) parse_vqe(*v, c.vqe);
  if (const json* sh = f.find("shots")) {
    Fields s(*sh, "shots");
    c.vqe.shots.enabled = s.boolean("enabled", c.vqe.shots.enabled);
    const std::uint64_t n = s.unsigned_integer("n_shots", c.vqe.shots.n_shots);
    check(n >= 2, s.at("n_shots"), "must be >= 2");
    c.vqe.shots.n_shots = static_cast<std::size_t>(n);
    c.vqe.shots.depolarizing = s.number("depolarizing", c.vqe.shots.depolarizing);
    check(c.vqe.shots.depolarizing >= 0.0 && c.vqe.shots.depolarizing < 1.0, s.at("depolarizing"),
          "must be in [0, 1)");
    c.u_pol_samples = s.integer("u_pol_samples", c.u_pol_samples);
    check(c.u_pol_samples >= 2, s.at("u_pol_samples"), "must be >= 2");
    s.finish();
  }
  if (c.vqe.shots.enabled && c.vqe.optimizer.gradient != solver::GradientMethod::finite_difference &&
      c.vqe.optimizer.kind != solver::OptimizerKind::rotosolve) {
    throw ConfigError("vqe.optimizer.gradient", "shot mode needs finite_difference gradients or rotosolve");
  }
  if (const json* d = f.find("dump")) {
    Fields s(*d, "dump");
    c.dump_state = s.boolean("state", c.dump_state);
    c.dump_hamiltonian = s.boolean("hamiltonian", c.dump_hamiltonian);
    s.finish();
  }
  f.finish();
  return c;
}

RunConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), fs::absolute(path).parent_path());
}

std::string resolved_json(const RunConfig& c) {
  json j;
  j["schema_version"] = kConfigSchemaVersion;
  j["molecule"] = c.molecule.string();
  j["basis"] = c.basis;
  j["basis_file"] = c.basis_file ? json(c.basis_file->string()) : json(nullptr);
  j["method"] = to_string(c.method);
  j["frozen_core"] = c.n_frozen_core;
  j["seed"] = c.vqe.seed;
  j["output"] = c.output.string();
  j["orbitals"] = c.pcm_orbitals ? "pcm" : "gas";
  if (c.solvent) {
    const auto& s = *c.solvent;
    json radii = json::object();
    for (const auto& [el, r] : s.mesh.radii) radii[el] = r;
    j["solvent"] = {{"epsilon", std::isinf(s.epsilon) ? json("inf") : json(s.epsilon)},
                    {"radii", radii},
                    {"scale", s.mesh.scale},
                    {"mesh_level", s.mesh.subdivision_level},
                    {"exposure_samples", s.mesh.exposure_samples},
                    {"symmetrize", s.symmetrize}};
  } else {
    j["solvent"] = nullptr;
  }
  const auto& v = c.vqe;
  const auto& o = v.optimizer;
  json vq;
  vq["ansatz"] = qsim::to_string(v.ansatz);
  vq["layers"] = v.layers;
  vq["selection"] = {{"mode", v.selection.adaptive ? "adaptive" : "all"},
                     {"threshold", v.selection.threshold},
                     {"use_solvent", v.selection.use_solvent}};
  if (v.excitations) {
    json ex = json::array();
    for (const auto& e : *v.excitations) ex.push_back({{"from", e.from}, {"to", e.to}});
    vq["excitations"] = ex;
  } else {
    vq["excitations"] = nullptr;
  }
  vq["optimizer"] = {{"kind", solver::to_string(o.kind)},
                     {"step", o.step},
                     {"adaptive_step", o.adaptive_step},
                     {"max_iterations", o.max_iterations},
                     {"tolerance", o.tolerance},
                     {"window", o.window},
                     {"gradient_tolerance", o.gradient_tolerance},
                     {"gradient", solver::to_string(o.gradient)},
                     {"fd_step", o.fd_step}};
  json init = {{"mode", v.random_init ? "random" : "zero"}, {"scale", v.init_scale}};
  if (v.initial_theta) {
    json t = json::array();
    for (Eigen::Index k = 0; k < v.initial_theta->size(); ++k) t.push_back((*v.initial_theta)(k));
    init["theta"] = t;
  } else {
    init["theta"] = nullptr;
  }
  vq["initial"] = init;
  j["vqe"] = vq;
  j["shots"] = {{"enabled", v.shots.enabled},
                {"n_shots", v.shots.n_shots},
                {"depolarizing", v.shots.depolarizing},
                {"u_pol_samples", c.u_pol_samples}};
  j["dump"] = {{"state", c.dump_state}, {"hamiltonian", c.dump_hamiltonian}};
  return j.dump(2) + "\n";
}

solver::ProblemOptions problem_options(const RunConfig& c) {
  solver::ProblemOptions p;
  p.basis = c.basis;
  if (c.basis_file) {
    std::ifstream in(*c.basis_file);
    if (!in) throw InputError("cannot open basis file " + c.basis_file->string());
    std::stringstream ss;
    ss << in.rdbuf();
    p.basis_library = molint::parse_basis_library(ss.str());
  }
  p.n_frozen_core = c.n_frozen_core;
  if (is_solvated(c.method)) {
    p.solvent = c.solvent;
    p.pcm_orbitals = c.pcm_orbitals;
  }
  return p;
}

}  // namespace solvq::cli

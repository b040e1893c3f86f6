#include "solvq/solver/report.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace solvq::solver {

using nlohmann::json;

namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json vec_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Vec vec_from(const json& a) {
  Vec v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) v(static_cast<Eigen::Index>(i)) = a[i].get<double>();
  return v;
}

json mat_json(const Mat& m) {
  json a = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    a.push_back(row);
  }
  return a;
}

Mat mat_from(const json& a) {
  const auto n = static_cast<Eigen::Index>(a.size());
  const auto c = n ? static_cast<Eigen::Index>(a[0].size()) : 0;
  Mat m(n, c);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].get<double>();
  return m;
}

json value_json(const std::optional<ValueWithError>& v) {
  if (!v) return nullptr;
  return {{"value", v->value}, {"stderr", v->stderr_}};
}

std::optional<ValueWithError> value_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return ValueWithError{j.at("value").get<double>(), j.at("stderr").get<double>()};
}

}  // namespace

std::string report_to_json(const SolvationReport& r, bool include_timing) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["system"] = r.system;
  j["basis"] = r.basis;
  j["method"] = r.method;
  j["solvated"] = r.solvated;
  j["epsilon"] = number_or_null(r.epsilon);
  j["charge"] = r.charge;
  j["n_qubits"] = r.n_qubits;
  j["n_active_electrons"] = r.n_active_electrons;
  j["n_frozen_core"] = r.n_frozen_core;
  j["ansatz"] = r.ansatz;
  j["layers"] = r.layers;
  json ex = json::array();
  for (const auto& e : r.excitations) ex.push_back({{"from", e.from}, {"to", e.to}});
  j["excitations"] = ex;
  json tr = json::array();
  for (const auto& row : r.trace) tr.push_back({{"iteration", row.iteration}, {"value", row.value}, {"grad_norm", number_or_null(row.grad_norm)}});
  j["trace"] = tr;
  j["theta"] = vec_json(r.theta);
  j["converged"] = r.converged;
  j["iterations"] = r.iterations;
  j["evaluations"] = r.evaluations;
  j["energy"] = r.energy;
  j["free_energy"] = r.free_energy;
  j["free_energy_stderr"] = r.free_energy_stderr;
  j["solvent_energy"] = r.solvent_energy;
  j["delta_g"] = value_json(r.delta_g);
  j["u_pol"] = value_json(r.u_pol);
  j["shots"] = {{"enabled", r.shots}, {"n_shots", r.n_shots}, {"seed", r.seed}};
  if (r.rdm) {
    const int m = static_cast<int>(r.rdm->d.rows());
    json d2 = json::array();
    for (double v : r.rdm->D2.data()) d2.push_back(v);
    j["rdm"] = {{"n_orbitals", m}, {"exact", r.rdm->exact}, {"d", mat_json(r.rdm->d)}, {"D2", d2}};
  } else {
    j["rdm"] = nullptr;
  }
  j["charges"] = vec_json(r.charges);
  j["charge_sum"] = r.charges.size() ? json(r.charges.sum()) : json(nullptr);
  json refs = json::object();
  for (const auto& [k, v] : r.references) refs[k] = v;
  j["references"] = refs;
  if (include_timing) j["timing"] = {{"seconds", r.seconds}};
  return j.dump(1);
}

SolvationReport report_from_json(const std::string& text) {
  const json j = json::parse(text);
  if (!j.contains("schema_version") || j["schema_version"].get<int>() != kReportSchemaVersion) {
    throw InputError("unsupported report schema version");
  }
  SolvationReport r;
  r.system = j.at("system").get<std::string>();
  r.basis = j.at("basis").get<std::string>();
  r.method = j.at("method").get<std::string>();
  r.solvated = j.at("solvated").get<bool>();
  r.epsilon = j.at("epsilon").is_null() ? INFINITY : j.at("epsilon").get<double>();
  r.charge = j.at("charge").get<int>();
  r.n_qubits = j.at("n_qubits").get<int>();
  r.n_active_electrons = j.at("n_active_electrons").get<int>();
  r.n_frozen_core = j.at("n_frozen_core").get<int>();
  r.ansatz = j.at("ansatz").get<std::string>();
  r.layers = j.value("layers", 1);
  for (const auto& e : j.at("excitations")) {
    r.excitations.push_back({e.at("from").get<std::vector<int>>(), e.at("to").get<std::vector<int>>()});
  }
  for (const auto& row : j.at("trace")) {
    r.trace.push_back({row.at("iteration").get<int>(), row.at("value").get<double>(),
                       row.at("grad_norm").is_null() ? NAN : row.at("grad_norm").get<double>()});
  }
  r.theta = vec_from(j.at("theta"));
  r.converged = j.at("converged").get<bool>();
  r.iterations = j.at("iterations").get<int>();
  r.evaluations = j.at("evaluations").get<int>();
  r.energy = j.at("energy").get<double>();
  r.free_energy = j.at("free_energy").get<double>();
  r.free_energy_stderr = j.at("free_energy_stderr").get<double>();
  r.solvent_energy = j.at("solvent_energy").get<double>();
  r.delta_g = value_from(j.at("delta_g"));
  r.u_pol = value_from(j.at("u_pol"));
  const auto& s = j.at("shots");
  r.shots = s.at("enabled").get<bool>();
  r.n_shots = s.at("n_shots").get<std::size_t>();
  r.seed = s.at("seed").get<std::uint64_t>();
  if (!j.at("rdm").is_null()) {
    const auto& rj = j.at("rdm");
    qsim::RdmPair rdm;
    rdm.exact = rj.at("exact").get<bool>();
    rdm.d = mat_from(rj.at("d"));
    const int m = rj.at("n_orbitals").get<int>();
    rdm.D2 = Tensor4(m);
    const auto& d2 = rj.at("D2");
    if (d2.size() != rdm.D2.data().size()) throw InputError("report 2-RDM has the wrong size");
    for (std::size_t k = 0; k < d2.size(); ++k) rdm.D2.data()[k] = d2[k].get<double>();
    r.rdm = std::move(rdm);
  }
  r.charges = vec_from(j.at("charges"));
  for (const auto& [k, v] : j.at("references").items()) r.references[k] = v.get<double>();
  if (j.contains("timing")) r.seconds = j["timing"].at("seconds").get<double>();
  return r;
}

SolvationReport read_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open report " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return report_from_json(ss.str());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_report(const SolvationReport& report, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << report_to_json(report) << '\n';
}

void write_trace_csv(const std::vector<TraceRow>& trace, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << "iteration,value_Ha,grad_norm\n" << std::setprecision(15);
  for (const auto& row : trace) {
    out << row.iteration << ',' << row.value << ',';
    if (std::isfinite(row.grad_norm)) out << row.grad_norm;
    out << '\n';
  }
}

}  // namespace solvq::solver

#pragma once

#include "solvq/solver/problem.hpp"

#include <Eigen/QR>

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <sstream>
#include <string>

namespace solvq::testing {

inline std::filesystem::path data_path(const std::string& relative) {
  return std::filesystem::path(SOLVQ_DATA_DIR) / relative;
}

inline molint::Molecule molecule(const std::string& name) {
  return molint::read_xyz(data_path("molecules/" + name + ".xyz"));
}

/// H2 at 1.4 bohr.
inline molint::Molecule hydrogen_molecule(double r_bohr = 1.4) {
  std::ostringstream s;
  s.precision(17);
  s << "2\ncharge=0 mult=1\nH 0 0 0\nH 0 0 " << r_bohr * kBohrInAngstrom << "\n";
  return molint::parse_xyz(s.str());
}

inline solver::SolventOptions dmso(int level = 4) {
  solver::SolventOptions s;
  s.epsilon = 46.7;
  s.mesh.subdivision_level = level;
  return s;
}

/// Problems are expensive to build; tests share them by key.
inline const solver::Problem& cached_problem(const std::string& name, int n_frozen_core, bool solvated,
                                             const std::string& basis = "STO-3G") {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<solver::Problem>> cache;
  const std::string key = name + "/" + basis + "/" + std::to_string(n_frozen_core) + (solvated ? "/pcm" : "/gas");
  std::lock_guard lock(mu);
  auto& slot = cache[key];
  if (!slot) {
    solver::ProblemOptions o;
    o.basis = basis;
    o.n_frozen_core = n_frozen_core;
    if (solvated) o.solvent = dmso();
    slot = std::make_unique<solver::Problem>(solver::build_problem(molecule(name), o));
  }
  return *slot;
}

/// Reads a headerless numeric CSV into a matrix.
inline Mat read_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  Mat m(static_cast<Eigen::Index>(rows.size()), rows.empty() ? 0 : static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return m;
}

/// Random proper rotation from a seeded generator (QR of a Gaussian matrix).
template <class Rng>
Mat3 random_rotation(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Mat3 a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = n(rng);
  Eigen::HouseholderQR<Mat3> qr(a);
  Mat3 q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

}  // namespace solvq::testing

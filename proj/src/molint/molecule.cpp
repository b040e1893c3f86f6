#include "solvq/molint/molecule.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

namespace solvq::molint {

namespace {

constexpr std::array<std::string_view, 19> kSymbols = {
    "",  "H",  "He", "Li", "Be", "B",  "C",  "N",  "O", "F",
    "Ne", "Na", "Mg", "Al", "Si", "P", "S", "Cl", "Ar"};

std::string normalize_symbol(std::string_view raw) {
  std::string s(raw);
  if (s.empty()) return s;
  s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  for (std::size_t i = 1; i < s.size(); ++i) {
    s[i] = static_cast<char>(std::tolower(static_cast<unsigned char>(s[i])));
  }
  return s;
}

}  // namespace

int atomic_number(std::string_view symbol) {
  const std::string s = normalize_symbol(symbol);
  for (std::size_t z = 1; z < kSymbols.size(); ++z) {
    if (kSymbols[z] == s) return static_cast<int>(z);
  }
  throw InputError("unknown element symbol '" + std::string(symbol) + "'");
}

std::string element_symbol(int z) {
  if (z < 1 || z >= static_cast<int>(kSymbols.size())) {
    throw InputError("unsupported nuclear charge " + std::to_string(z));
  }
  return std::string(kSymbols[static_cast<std::size_t>(z)]);
}

int Molecule::nuclear_charge() const {
  int total = 0;
  for (const auto& a : atoms) total += a.charge;
  return total;
}

void Molecule::validate() const {
  if (atoms.empty()) throw InputError("molecule has no atoms");
  if (multiplicity != 1) {
    throw InputError("only closed-shell singlets are supported (mult=" +
                     std::to_string(multiplicity) + ")");
  }
  const int ne = n_electrons();
  if (ne <= 0 || ne % 2 != 0) {
    throw InputError("electron count must be even and positive, got " + std::to_string(ne));
  }
}

double Molecule::nuclear_repulsion() const {
  double e = 0.0;
  for (std::size_t m = 0; m < atoms.size(); ++m) {
    for (std::size_t n = 0; n < m; ++n) {
      const double r = (atoms[m].position - atoms[n].position).norm();
      if (r < 1e-8) {
        throw InputError("coincident nuclei " + std::to_string(n) + " and " + std::to_string(m));
      }
      e += atoms[m].charge * atoms[n].charge / r;
    }
  }
  return e;
}

std::string Molecule::formula() const {
  std::map<std::string, int> counts;
  for (const auto& a : atoms) ++counts[a.symbol];
  std::string out;
  auto emit = [&](const std::string& sym) {
    auto it = counts.find(sym);
    if (it == counts.end()) return;
    out += sym;
    if (it->second > 1) out += std::to_string(it->second);
    counts.erase(it);
  };
  if (counts.count("C")) {
    emit("C");
    emit("H");
  }
  std::vector<std::string> rest;
  for (const auto& [sym, n] : counts) rest.push_back(sym);
  for (const auto& sym : rest) emit(sym);
  return out;
}

Molecule parse_xyz(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw InputError("xyz: empty input");
  int n_atoms = 0;
  try {
    n_atoms = std::stoi(line);
  } catch (const std::exception&) {
    throw InputError("xyz: first line must be the atom count");
  }
  if (n_atoms <= 0) throw InputError("xyz: atom count must be positive");

  Molecule mol;
  std::getline(in, line);
  static const std::regex charge_re(R"(charge\s*=\s*([+-]?\d+))", std::regex::icase);
  static const std::regex mult_re(R"(mult(?:iplicity)?\s*=\s*(\d+))", std::regex::icase);
  std::smatch m;
  if (std::regex_search(line, m, charge_re)) mol.charge = std::stoi(m[1].str());
  if (std::regex_search(line, m, mult_re)) mol.multiplicity = std::stoi(m[1].str());

  for (int i = 0; i < n_atoms; ++i) {
    if (!std::getline(in, line)) {
      throw InputError("xyz: expected " + std::to_string(n_atoms) + " atom lines, got " +
                       std::to_string(i));
    }
    std::istringstream row(line);
    std::string sym;
    double x = 0, y = 0, z = 0;
    if (!(row >> sym >> x >> y >> z)) {
      throw InputError("xyz: malformed atom line " + std::to_string(i + 1) + ": '" + line + "'");
    }
    Atom atom;
    atom.charge = atomic_number(sym);
    atom.symbol = element_symbol(atom.charge);
    atom.position = Vec3(x, y, z) / kBohrInAngstrom;
    mol.atoms.push_back(std::move(atom));
  }
  return mol;
}

Molecule read_xyz(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open molecule file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_xyz(buf.str());
}

Molecule transformed(const Molecule& molecule, const Mat3& rotation, const Vec3& shift) {
  Molecule out = molecule;
  for (auto& a : out.atoms) a.position = rotation * a.position + shift;
  return out;
}

}  // namespace solvq::molint

#pragma once

#include "solvq/core.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace solvq::molint {

struct Atom {
  std::string symbol;
  int charge = 0;   // nuclear charge Z
  Vec3 position;    // bohr
};

/// Closed-shell molecule. Positions are stored in bohr.
struct Molecule {
  std::vector<Atom> atoms;
  int charge = 0;
  int multiplicity = 1;

  int nuclear_charge() const;
  int n_electrons() const { return nuclear_charge() - charge; }

  /// Throws InputError unless the molecule is a closed-shell singlet with a
  /// positive, even electron count.
  void validate() const;

  /// Sum over nuclear pairs of Z_m Z_n / R_mn. Throws on coincident nuclei.
  double nuclear_repulsion() const;

  /// Empirical formula in Hill order, e.g. "H2O", "H3".
  std::string formula() const;
};

int atomic_number(std::string_view symbol);
std::string element_symbol(int z);

/// Parses XYZ text (coordinates in angstrom). The comment line may carry
/// "charge=<int>" and "mult=<int>" tokens; both default to 0 and 1.
Molecule parse_xyz(std::string_view text);
Molecule read_xyz(const std::filesystem::path& path);

/// Rigid motion r -> rotation * r + shift applied to every nucleus.
Molecule transformed(const Molecule& molecule, const Mat3& rotation, const Vec3& shift);

}  // namespace solvq::molint

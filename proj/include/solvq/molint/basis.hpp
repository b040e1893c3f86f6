#pragma once

#include "solvq/molint/molecule.hpp"

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace solvq::molint {

/// One contracted shell as read from a basis table, before placement on atoms.
struct ShellTemplate {
  int l = 0;  // 0 = s, 1 = p
  std::vector<double> exponents;
  std::vector<double> coefficients;
};

/// Element symbol -> shells, in table order.
using BasisLibrary = std::map<std::string, std::vector<ShellTemplate>>;

/// Parses basis text in the Gaussian94 layout:
///
///     H     0
///     S    3   1.00
///           3.42525091   0.15432897
///           ...
///     SP   3   1.00
///           exponent   s-coefficient   p-coefficient
///     ****
///
/// Fortran "D" exponents are accepted. SP shells are split into an s and a p
/// shell sharing exponents. Lines starting with '!' are comments.
BasisLibrary parse_basis_library(std::string_view text);

/// Embedded tables: "STO-3G" and "6-31G" for H, He, Be, O (case-insensitive).
const BasisLibrary& builtin_basis(std::string_view name);

/// A placed, normalized shell.
struct Shell {
  std::size_t atom = 0;
  int l = 0;
  Vec3 center;
  std::vector<double> exponents;
  /// Contraction coefficients with primitive normalization folded in; the
  /// contracted function (Cartesian component x^l) has unit self-overlap.
  std::vector<double> coefficients;
};

/// A single Cartesian contracted basis function.
struct BasisFunction {
  std::size_t shell = 0;
  std::array<int, 3> powers{0, 0, 0};
};

class BasisSet {
 public:
  BasisSet() = default;
  BasisSet(std::string name, std::vector<Shell> shells);

  const std::string& name() const { return name_; }
  const std::vector<Shell>& shells() const { return shells_; }
  const std::vector<BasisFunction>& functions() const { return functions_; }
  std::size_t n_basis() const { return functions_.size(); }

 private:
  std::string name_;
  std::vector<Shell> shells_;
  std::vector<BasisFunction> functions_;
};

/// Places the named basis on every atom. Within an atom, s shells precede p
/// shells; table order is kept otherwise.
BasisSet build_basis(const Molecule& molecule, std::string_view basis_name);
BasisSet build_basis(const Molecule& molecule, const BasisLibrary& library,
                     std::string name = "custom");

}  // namespace solvq::molint

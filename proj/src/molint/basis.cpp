#include "solvq/molint/basis.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

namespace solvq::molint {

namespace {

// Values from the EMSL/BSE exports of STO-3G and 6-31G.
constexpr std::string_view kSto3g = R"(
H     0
S    3   1.00
      0.3425250914D+01       0.1543289673D+00
      0.6239137298D+00       0.5353281423D+00
      0.1688554040D+00       0.4446345422D+00
****
He     0
S    3   1.00
      0.6362421394D+01       0.1543289673D+00
      0.1158922999D+01       0.5353281423D+00
      0.3136497915D+00       0.4446345422D+00
****
Be     0
S    3   1.00
      0.3016787069D+02       0.1543289673D+00
      0.5495115306D+01       0.5353281423D+00
      0.1487192653D+01       0.4446345422D+00
SP   3   1.00
      0.1314833110D+01      -0.9996722919D-01       0.1559162750D+00
      0.3055389383D+00       0.3995128261D+00       0.6076837186D+00
      0.9937074560D-01       0.7001154689D+00       0.3919573931D+00
****
O     0
S    3   1.00
      0.1307093214D+03       0.1543289673D+00
      0.2380886605D+02       0.5353281423D+00
      0.6443608313D+01       0.4446345422D+00
SP   3   1.00
      0.5033151319D+01      -0.9996722919D-01       0.1559162750D+00
      0.1169596125D+01       0.3995128261D+00       0.6076837186D+00
      0.3803889600D+00       0.7001154689D+00       0.3919573931D+00
****
)";

constexpr std::string_view k631g = R"(
H     0
S    3   1.00
      0.1873113696D+02       0.3349460434D-01
      0.2825394365D+01       0.2347269535D+00
      0.6401216923D+00       0.8137573261D+00
S    1   1.00
      0.1612777588D+00       1.0000000
****
He     0
S    3   1.00
      0.3842163400D+02       0.4013973935D-01
      0.5778030000D+01       0.2612460970D+00
      0.1241774000D+01       0.7931846246D+00
S    1   1.00
      0.2979640000D+00       1.0000000
****
Be     0
S    6   1.00
      0.1264585690D+04       0.1944757590D-02
      0.1899368060D+03       0.1483505200D-01
      0.4315908900D+02       0.7209054629D-01
      0.1209866270D+02       0.2371541500D+00
      0.3806323220D+01       0.4691986519D+00
      0.1272890300D+01       0.3565202279D+00
SP   3   1.00
      0.3196463098D+01      -0.1126487285D+00       0.5598019980D-01
      0.7478133038D+00      -0.2295064079D+00       0.2615506110D+00
      0.2199663302D+00       0.1186916764D+01       0.7939723389D+00
SP   1   1.00
      0.8230990070D-01       0.1000000000D+01       0.1000000000D+01
****
O     0
S    6   1.00
      0.5484671660D+04       0.1831074430D-02
      0.8252349460D+03       0.1395017220D-01
      0.1880469580D+03       0.6844507810D-01
      0.5296450000D+02       0.2327143360D+00
      0.1689757040D+02       0.4701928980D+00
      0.5799635340D+01       0.3585208530D+00
SP   3   1.00
      0.1553961625D+02      -0.1107775495D+00       0.7087426823D-01
      0.3599933586D+01      -0.1480262627D+00       0.3397528391D+00
      0.1013761750D+01       0.1130767015D+01       0.7271585773D+00
SP   1   1.00
      0.2700058226D+00       0.1000000000D+01       0.1000000000D+01
****
)";

double parse_fortran_double(std::string token) {
  std::replace(token.begin(), token.end(), 'D', 'E');
  std::replace(token.begin(), token.end(), 'd', 'e');
  std::size_t used = 0;
  const double v = std::stod(token, &used);
  if (used != token.size()) throw InputError("basis: bad number '" + token + "'");
  return v;
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Self-overlap of a primitive pair with identical Cartesian powers x^l.
double primitive_overlap(int l, double a, double b) {
  const double p = a + b;
  const double s = std::pow(std::numbers::pi / p, 1.5);
  return l == 0 ? s : s / (2.0 * p);
}

Shell place(const ShellTemplate& t, std::size_t atom, const Vec3& center) {
  Shell sh;
  sh.atom = atom;
  sh.l = t.l;
  sh.center = center;
  sh.exponents = t.exponents;
  sh.coefficients.resize(t.exponents.size());
  for (std::size_t k = 0; k < t.exponents.size(); ++k) {
    const double a = t.exponents[k];
    const double norm = std::pow(2.0 * a / std::numbers::pi, 0.75) * std::pow(4.0 * a, 0.5 * t.l);
    sh.coefficients[k] = t.coefficients[k] * norm;
  }
  double self = 0.0;
  for (std::size_t i = 0; i < sh.exponents.size(); ++i) {
    for (std::size_t j = 0; j < sh.exponents.size(); ++j) {
      self += sh.coefficients[i] * sh.coefficients[j] *
              primitive_overlap(sh.l, sh.exponents[i], sh.exponents[j]);
    }
  }
  const double scale = 1.0 / std::sqrt(self);
  for (auto& c : sh.coefficients) c *= scale;
  return sh;
}

}  // namespace

BasisLibrary parse_basis_library(std::string_view text) {
  BasisLibrary lib;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::string element;
  int line_no = 0;
  auto fail = [&](const std::string& msg) {
    throw InputError("basis line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '!') continue;
    if (line == "****") {
      element.clear();
      continue;
    }
    std::istringstream row(line);
    std::string first;
    row >> first;
    if (element.empty()) {
      element = element_symbol(atomic_number(first));
      lib[element];
      continue;
    }
    const std::string kind = upper(first);
    int n_prim = 0;
    if (!(row >> n_prim) || n_prim <= 0) fail("expected primitive count after shell type");
    if (kind != "S" && kind != "P" && kind != "SP") fail("unsupported shell type '" + first + "'");
    ShellTemplate s_shell{0, {}, {}};
    ShellTemplate p_shell{1, {}, {}};
    for (int k = 0; k < n_prim; ++k) {
      ++line_no;
      if (!std::getline(in, raw)) fail("truncated shell");
      std::istringstream prim(raw);
      std::string e_tok, c1_tok, c2_tok;
      if (!(prim >> e_tok >> c1_tok)) fail("malformed primitive");
      const double e = parse_fortran_double(e_tok);
      const double c1 = parse_fortran_double(c1_tok);
      if (kind == "SP") {
        if (!(prim >> c2_tok)) fail("SP primitive needs two coefficients");
        s_shell.exponents.push_back(e);
        s_shell.coefficients.push_back(c1);
        p_shell.exponents.push_back(e);
        p_shell.coefficients.push_back(parse_fortran_double(c2_tok));
      } else if (kind == "S") {
        s_shell.exponents.push_back(e);
        s_shell.coefficients.push_back(c1);
      } else {
        p_shell.exponents.push_back(e);
        p_shell.coefficients.push_back(c1);
      }
    }
    auto& shells = lib[element];
    if (!s_shell.exponents.empty()) shells.push_back(std::move(s_shell));
    if (!p_shell.exponents.empty()) shells.push_back(std::move(p_shell));
  }
  return lib;
}

const BasisLibrary& builtin_basis(std::string_view name) {
  static const BasisLibrary sto3g = parse_basis_library(kSto3g);
  static const BasisLibrary b631g = parse_basis_library(k631g);
  const std::string key = upper(name);
  if (key == "STO-3G") return sto3g;
  if (key == "6-31G") return b631g;
  throw InputError("unknown basis set '" + std::string(name) + "' (available: STO-3G, 6-31G)");
}

BasisSet::BasisSet(std::string name, std::vector<Shell> shells)
    : name_(std::move(name)), shells_(std::move(shells)) {
  for (std::size_t s = 0; s < shells_.size(); ++s) {
    if (shells_[s].l == 0) {
      functions_.push_back({s, {0, 0, 0}});
    } else if (shells_[s].l == 1) {
      functions_.push_back({s, {1, 0, 0}});
      functions_.push_back({s, {0, 1, 0}});
      functions_.push_back({s, {0, 0, 1}});
    } else {
      throw InputError("only s and p shells are supported");
    }
  }
}

BasisSet build_basis(const Molecule& molecule, std::string_view basis_name) {
  return build_basis(molecule, builtin_basis(basis_name), upper(basis_name));
}

BasisSet build_basis(const Molecule& molecule, const BasisLibrary& library, std::string name) {
  std::vector<Shell> shells;
  for (std::size_t a = 0; a < molecule.atoms.size(); ++a) {
    const auto& atom = molecule.atoms[a];
    auto it = library.find(atom.symbol);
    if (it == library.end()) {
      throw InputError("basis " + name + " has no entry for element " + atom.symbol);
    }
    for (int l = 0; l <= 1; ++l) {
      for (const auto& t : it->second) {
        if (t.l == l) shells.push_back(place(t, a, atom.position));
      }
    }
  }
  return BasisSet(std::move(name), std::move(shells));
}

}  // namespace solvq::molint

#include "solvq/f2q/pauli.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <fstream>

namespace solvq::f2q {

namespace {

cplx i_pow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

bool string_less(const PauliString& a, const PauliString& b) {
  // Order by support first (identity leads), then masks.
  const int wa = a.weight();
  const int wb = b.weight();
  if (wa != wb) return wa < wb;
  if (a.x != b.x) return a.x < b.x;
  return a.z < b.z;
}

}  // namespace

int PauliString::weight() const { return std::popcount(x | z); }

std::string PauliString::to_string(int n_qubits) const {
  std::string s(static_cast<std::size_t>(n_qubits), 'I');
  for (int k = 0; k < n_qubits; ++k) {
    const bool xb = (x >> k) & 1U;
    const bool zb = (z >> k) & 1U;
    s[static_cast<std::size_t>(k)] = xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
  }
  return s;
}

PauliString PauliString::from_string(const std::string& letters) {
  if (letters.size() > 64) throw InputError("Pauli string longer than 64 qubits");
  PauliString p;
  for (std::size_t k = 0; k < letters.size(); ++k) {
    const std::uint64_t bit = std::uint64_t{1} << k;
    switch (letters[k]) {
      case 'I': break;
      case 'X': p.x |= bit; break;
      case 'Y': p.x |= bit; p.z |= bit; break;
      case 'Z': p.z |= bit; break;
      default: throw InputError(std::string("invalid Pauli letter '") + letters[k] + "'");
    }
  }
  return p;
}

std::pair<cplx, PauliString> multiply(const PauliString& a, const PauliString& b) {
  PauliString c{a.x ^ b.x, a.z ^ b.z};
  const int k = std::popcount(a.x & a.z) + std::popcount(b.x & b.z) - std::popcount(c.x & c.z) +
                2 * std::popcount(a.z & b.x);
  return {i_pow(k), c};
}

bool qubitwise_commute(const PauliString& a, const PauliString& b) {
  const std::uint64_t both = (a.x | a.z) & (b.x | b.z);
  return ((a.x ^ b.x) & both) == 0 && ((a.z ^ b.z) & both) == 0;
}

void PauliSum::add(const PauliString& p, cplx c) {
  if (c == cplx{}) return;
  auto [it, inserted] = terms_.try_emplace(p, c);
  if (!inserted) it->second += c;
}

void PauliSum::add(const PauliSum& other, cplx scale) {
  for (const auto& [p, c] : other.terms_) add(p, scale * c);
}

PauliSum PauliSum::operator*(const PauliSum& other) const {
  PauliSum out(std::max(n_qubits_, other.n_qubits_));
  for (const auto& [pa, ca] : terms_) {
    for (const auto& [pb, cb] : other.terms_) {
      auto [phase, pc] = multiply(pa, pb);
      out.add(pc, phase * ca * cb);
    }
  }
  return out;
}

QubitOperator::QubitOperator(int n_qubits, std::vector<PauliTerm> terms)
    : n_qubits_(n_qubits), terms_(std::move(terms)) {
  canonicalize();
}

QubitOperator QubitOperator::from_sum(const PauliSum& sum, double imag_tol) {
  std::vector<PauliTerm> terms;
  terms.reserve(sum.terms().size());
  for (const auto& [p, c] : sum.terms()) {
    if (std::abs(c.imag()) > imag_tol) {
      throw NumericalError("non-Hermitian term " + p.to_string(sum.n_qubits()) + " with imaginary coefficient " +
                           std::to_string(c.imag()));
    }
    terms.push_back({p, c.real()});
  }
  return QubitOperator(sum.n_qubits(), std::move(terms));
}

void QubitOperator::canonicalize() {
  const std::uint64_t limit = n_qubits_ >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_qubits_) - 1;
  for (const auto& t : terms_) {
    if ((t.string.x | t.string.z) & ~limit) throw InputError("Pauli term acts outside the register");
  }
  std::sort(terms_.begin(), terms_.end(),
            [](const PauliTerm& a, const PauliTerm& b) { return string_less(a.string, b.string); });
  std::vector<PauliTerm> merged;
  for (const auto& t : terms_) {
    if (!merged.empty() && merged.back().string == t.string) {
      merged.back().coefficient += t.coefficient;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const PauliTerm& t) { return std::abs(t.coefficient) < kPruneTol; });
  terms_ = std::move(merged);
}

double QubitOperator::identity_coefficient() const { return coefficient(PauliString{}); }

double QubitOperator::coefficient(const PauliString& p) const {
  for (const auto& t : terms_) {
    if (t.string == p) return t.coefficient;
  }
  return 0.0;
}

QubitOperator QubitOperator::operator+(const QubitOperator& other) const {
  std::vector<PauliTerm> all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  return QubitOperator(std::max(n_qubits_, other.n_qubits_), std::move(all));
}

QubitOperator QubitOperator::operator*(double s) const {
  std::vector<PauliTerm> all = terms_;
  for (auto& t : all) t.coefficient *= s;
  return QubitOperator(n_qubits_, std::move(all));
}

Eigen::MatrixXcd QubitOperator::to_dense() const {
  if (n_qubits_ > 12) throw InputError("dense matrix limited to 12 qubits");
  const Eigen::Index dim = Eigen::Index{1} << n_qubits_;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : terms_) {
    const cplx phase = i_pow(std::popcount(t.string.x & t.string.z));
    for (Eigen::Index b = 0; b < dim; ++b) {
      const auto ub = static_cast<std::uint64_t>(b);
      const double sign = (std::popcount(t.string.z & ub) & 1) ? -1.0 : 1.0;
      m(static_cast<Eigen::Index>(ub ^ t.string.x), b) += t.coefficient * phase * sign;
    }
  }
  return m;
}

std::string QubitOperator::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& t : terms_) j.push_back({{"string", t.string.to_string(n_qubits_)}, {"coefficient", t.coefficient}});
  return j.dump(1);
}

QubitOperator QubitOperator::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (!j.is_array()) throw InputError("qubit operator JSON must be an array");
  int n = 0;
  std::vector<PauliTerm> terms;
  for (const auto& e : j) {
    const auto s = e.at("string").get<std::string>();
    if (n == 0) n = static_cast<int>(s.size());
    if (static_cast<int>(s.size()) != n) throw InputError("Pauli strings of different lengths");
    terms.push_back({PauliString::from_string(s), e.at("coefficient").get<double>()});
  }
  return QubitOperator(n, std::move(terms));
}

void QubitOperator::write_json(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << to_json() << '\n';
}

}  // namespace solvq::f2q

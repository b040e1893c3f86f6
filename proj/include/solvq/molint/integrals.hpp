#pragma once

#include "solvq/molint/basis.hpp"

#include <span>
#include <vector>

namespace solvq::molint {

/// Two-electron integrals (pq|rs) in chemists' notation, stored once per
/// 8-fold permutation class.
class EriTensor {
 public:
  EriTensor() = default;
  explicit EriTensor(std::size_t n);

  std::size_t dim() const { return n_; }
  double operator()(std::size_t p, std::size_t q, std::size_t r, std::size_t s) const {
    return data_[index(p, q, r, s)];
  }
  void set(std::size_t p, std::size_t q, std::size_t r, std::size_t s, double value) {
    data_[index(p, q, r, s)] = value;
  }
  std::size_t packed_size() const { return data_.size(); }

  static std::size_t pair(std::size_t p, std::size_t q) {
    return p >= q ? p * (p + 1) / 2 + q : q * (q + 1) / 2 + p;
  }

 private:
  std::size_t index(std::size_t p, std::size_t q, std::size_t r, std::size_t s) const {
    return pair(pair(p, q), pair(r, s));
  }
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Electrostatic potential data on a set of surface points.
struct SurfacePotentials {
  /// (v_pq)_i = -<p| 1/|r - s_i| |q>, one n x n matrix per point.
  std::vector<Mat> electronic;
  /// (v_N)_i = sum_m Z_m / |R_m - s_i|.
  Vec nuclear;
};

struct IntegralSet {
  Mat overlap;
  Mat kinetic;
  Mat nuclear_attraction;
  Mat h_core;
  EriTensor eri;
  double e_nuc = 0.0;
  int n_electrons = 0;
  /// Empty until potentials on cavity points are attached.
  std::vector<Mat> tessera_potential;
  Vec v_nuc_tess;

  std::size_t n_basis() const { return static_cast<std::size_t>(overlap.rows()); }
  bool has_surface() const { return !tessera_potential.empty(); }
};

IntegralSet compute_integrals(const Molecule& molecule, const BasisSet& basis);

/// Potential integrals at arbitrary points. Throws InputError when a point
/// lies within 1e-8 bohr of a nucleus.
SurfacePotentials potential_integrals(const Molecule& molecule, const BasisSet& basis,
                                      std::span<const Vec3> points);

/// Convenience: computes potential integrals and stores them in `integrals`.
void attach_surface(IntegralSet& integrals, const Molecule& molecule, const BasisSet& basis,
                    std::span<const Vec3> points);

/// Evaluates a basis function at a point (used by tests and density dumps).
double evaluate_function(const BasisSet& basis, std::size_t index, const Vec3& r);

}  // namespace solvq::molint

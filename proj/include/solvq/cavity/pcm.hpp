#pragma once

#include "solvq/cavity/cavity.hpp"

namespace solvq::cavity {

/// Single-layer and double-layer boundary operators on the tesserae.
struct CalderonMatrices {
  Mat S;
  Mat D;
  Vec areas;  // diagonal of A

  Mat A() const { return areas.asDiagonal(); }
};

inline constexpr double kSelfPotentialFactor = 1.0694;

/// S_ii = k sqrt(4 pi / a_i); D_ii from the row sum rule sum_j D_ij a_j = -2 pi.
/// Throws InputError on coincident tessera centres.
CalderonMatrices calderon_matrices(const Cavity& cavity);

struct SolventResponse {
  double epsilon = 1.0;
  Mat S;
  Mat D;
  Vec areas;
  Mat Q;
  bool symmetrized = false;
  /// Reciprocal condition estimate of the left-hand matrix.
  double rcond = 0.0;

  std::size_t size() const { return static_cast<std::size_t>(Q.rows()); }
  Mat A() const { return areas.asDiagonal(); }
};

/// Q = -(2 pi f S - D A S)^-1 (2 pi I - D A), f = (eps + 1) / (eps - 1).
/// epsilon = +infinity gives the conductor limit (f = 1), epsilon = 1 gives
/// Q = 0. Requires epsilon >= 1;
/// throws NumericalError with the condition number when the system is singular.
SolventResponse response_matrix(const CalderonMatrices& m, double epsilon, bool symmetrize = false);

SolventResponse build_response(const Cavity& cavity, double epsilon, bool symmetrize = false);

/// q = Q V.
Vec apparent_charges(const SolventResponse& response, const Vec& potential);

}  // namespace solvq::cavity

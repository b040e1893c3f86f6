#include "solvq/cavity/pcm.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace solvq::cavity {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

CalderonMatrices calderon_matrices(const Cavity& cavity) {
  const auto n = static_cast<Eigen::Index>(cavity.size());
  if (n == 0) throw InputError("cavity has no tesserae");
  CalderonMatrices m;
  m.S.resize(n, n);
  m.D.resize(n, n);
  m.areas.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) m.areas(i) = cavity.tesserae[static_cast<std::size_t>(i)].area;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& ti = cavity.tesserae[static_cast<std::size_t>(i)];
    if (!(ti.area > 0.0)) throw InputError("tessera " + std::to_string(i) + " has non-positive area");
    double row = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const auto& tj = cavity.tesserae[static_cast<std::size_t>(j)];
      const Vec3 r = ti.center - tj.center;
      const double d = r.norm();
      if (d < 1e-10) {
        throw InputError("tesserae " + std::to_string(i) + " and " + std::to_string(j) + " share a centre");
      }
      m.S(i, j) = 1.0 / d;
      m.D(i, j) = r.dot(tj.normal) / (d * d * d);
      row += m.D(i, j) * tj.area;
    }
    m.S(i, i) = kSelfPotentialFactor * std::sqrt(4.0 * std::numbers::pi / ti.area);
    m.D(i, i) = -(kTwoPi + row) / ti.area;
  }
  return m;
}

SolventResponse response_matrix(const CalderonMatrices& m, double epsilon, bool symmetrize) {
  if (!(epsilon >= 1.0)) throw InputError("dielectric constant must be >= 1");
  const auto n = m.S.rows();
  SolventResponse r;
  r.epsilon = epsilon;
  r.S = m.S;
  r.D = m.D;
  r.areas = m.areas;
  r.symmetrized = symmetrize;
  if (epsilon == 1.0) {
    // Vacuum: no polarization.
    r.Q = Mat::Zero(n, n);
    r.rcond = 1.0;
    return r;
  }
  const double f = std::isinf(epsilon) ? 1.0 : (epsilon + 1.0) / (epsilon - 1.0);
  const Mat da = m.D * m.areas.asDiagonal();
  const Mat lhs = kTwoPi * f * m.S - da * m.S;
  const Mat rhs = kTwoPi * Mat::Identity(n, n) - da;
  Eigen::PartialPivLU<Mat> lu(lhs);
  r.rcond = lu.rcond();
  if (!(r.rcond > 1e-14)) {
    std::ostringstream msg;
    msg << "PCM left-hand matrix is singular (condition number ~" << (r.rcond > 0 ? 1.0 / r.rcond : INFINITY)
        << ")";
    throw NumericalError(msg.str());
  }
  r.Q = -lu.solve(rhs);
  if (!r.Q.allFinite()) throw NumericalError("PCM response matrix is not finite");
  if (symmetrize) r.Q = 0.5 * (r.Q + r.Q.transpose()).eval();
  return r;
}

SolventResponse build_response(const Cavity& cavity, double epsilon, bool symmetrize) {
  return response_matrix(calderon_matrices(cavity), epsilon, symmetrize);
}

Vec apparent_charges(const SolventResponse& response, const Vec& potential) {
  if (potential.size() != response.Q.cols()) {
    throw InputError("potential has " + std::to_string(potential.size()) + " entries, cavity has " +
                     std::to_string(response.Q.cols()) + " tesserae");
  }
  return response.Q * potential;
}

}  // namespace solvq::cavity

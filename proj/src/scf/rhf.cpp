#include "solvq/scf/rhf.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <deque>
#include <sstream>

namespace solvq::scf {

namespace {

using molint::IntegralSet;

Mat symmetric_orthogonalizer(const Mat& s) {
  Eigen::SelfAdjointEigenSolver<Mat> es(s);
  if (es.eigenvalues().minCoeff() < 1e-10) throw NumericalError("overlap matrix is near-singular");
  return es.eigenvectors() * es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
         es.eigenvectors().transpose();
}

class Diis {
 public:
  explicit Diis(int size) : size_(size) {}

  Mat extrapolate(const Mat& fock, const Mat& error) {
    focks_.push_back(fock);
    errors_.push_back(error);
    if (static_cast<int>(focks_.size()) > size_) {
      focks_.pop_front();
      errors_.pop_front();
    }
    const auto n = static_cast<Eigen::Index>(focks_.size());
    if (n < 2) return fock;
    Mat b = Mat::Constant(n + 1, n + 1, -1.0);
    b(n, n) = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j <= i; ++j) {
        b(i, j) = b(j, i) = errors_[static_cast<std::size_t>(i)].cwiseProduct(errors_[static_cast<std::size_t>(j)]).sum();
      }
    }
    Vec rhs = Vec::Zero(n + 1);
    rhs(n) = -1.0;
    const Vec c = b.fullPivLu().solve(rhs);
    if (!c.allFinite()) return fock;
    Mat out = Mat::Zero(fock.rows(), fock.cols());
    for (Eigen::Index i = 0; i < n; ++i) out += c(i) * focks_[static_cast<std::size_t>(i)];
    return out;
  }

 private:
  int size_;
  std::deque<Mat> focks_;
  std::deque<Mat> errors_;
};

/// Shared SCF driver; `solvent` adds a Fock term and an energy term for P.
template <class Solvent>
ScfResult run_scf(const IntegralSet& ints, const ScfOptions& opt, Solvent&& solvent) {
  const int n_el = ints.n_electrons;
  if (n_el <= 0 || n_el % 2 != 0) {
    throw InputError("closed-shell SCF needs a positive even electron count, got " + std::to_string(n_el));
  }
  const auto n = static_cast<Eigen::Index>(ints.n_basis());
  const int n_occ = n_el / 2;
  if (n_occ > n) throw InputError("basis too small for the electron count");

  const Mat x = symmetric_orthogonalizer(ints.overlap);
  auto diagonalize = [&](const Mat& f, ScfResult& r) {
    Eigen::SelfAdjointEigenSolver<Mat> es(x.transpose() * f * x);
    r.orbital_energies = es.eigenvalues();
    r.mo_coefficients = x * es.eigenvectors();
    const Mat c_occ = r.mo_coefficients.leftCols(n_occ);
    r.density = 2.0 * c_occ * c_occ.transpose();
  };

  ScfResult res;
  res.n_occupied = n_occ;
  diagonalize(ints.h_core, res);
  Diis diis(opt.diis_size);
  double energy = 0.0;
  double last_energy = 0.0;
  for (int it = 1; it <= opt.max_iterations; ++it) {
    Mat f = ints.h_core + two_electron_fock(ints, res.density);
    double e_solv = 0.0;
    solvent(res.density, f, e_solv);
    energy = rhf_energy(ints, res.density) + e_solv;
    const Mat err = x.transpose() * (f * res.density * ints.overlap - ints.overlap * res.density * f) * x;
    const Mat f_ext = diis.extrapolate(f, err);
    const Mat p_old = res.density;
    diagonalize(f_ext, res);
    const double rms = std::sqrt((res.density - p_old).squaredNorm() / static_cast<double>(n * n));
    const double de = std::abs(energy - last_energy);
    last_energy = energy;
    res.n_iterations = it;
    if (rms < opt.density_tol && de < opt.energy_tol) {
      // Orbitals and energy of the final density from an undamped Fock build.
      Mat ff = ints.h_core + two_electron_fock(ints, res.density);
      double es = 0.0;
      solvent(res.density, ff, es);
      diagonalize(ff, res);
      ff = ints.h_core + two_electron_fock(ints, res.density);
      es = 0.0;
      solvent(res.density, ff, es);
      res.total_energy = rhf_energy(ints, res.density) + es;
      res.solvent_energy = es;
      res.converged = true;
      return res;
    }
  }
  std::ostringstream msg;
  msg.precision(12);
  msg << "SCF did not converge in " << opt.max_iterations << " iterations (last energy " << energy << ")";
  throw ScfConvergenceError(msg.str(), energy);
}

}  // namespace

Mat two_electron_fock(const IntegralSet& ints, const Mat& p) {
  const auto n = static_cast<std::size_t>(ints.n_basis());
  Mat g = Mat::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      double j = 0.0;
      double k = 0.0;
      for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t d = 0; d < n; ++d) {
          const double pcd = p(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(d));
          j += ints.eri(a, b, c, d) * pcd;
          k += ints.eri(a, c, b, d) * pcd;
        }
      }
      g(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = j - 0.5 * k;
    }
  }
  return g;
}

double rhf_energy(const IntegralSet& ints, const Mat& p) {
  const Mat g = two_electron_fock(ints, p);
  return p.cwiseProduct(ints.h_core).sum() + 0.5 * p.cwiseProduct(g).sum() + ints.e_nuc;
}

Vec surface_potential(const IntegralSet& ints, const Mat& p) {
  if (!ints.has_surface()) throw InputError("integrals carry no surface potentials");
  Vec v = ints.v_nuc_tess;
  for (std::size_t i = 0; i < ints.tessera_potential.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) += ints.tessera_potential[i].cwiseProduct(p).sum();
  }
  return v;
}

ScfResult rhf(const IntegralSet& integrals, const ScfOptions& options) {
  return run_scf(integrals, options, [](const Mat&, Mat&, double&) {});
}

ScfResult pcm_rhf(const IntegralSet& integrals, const cavity::SolventResponse& response,
                  const ScfOptions& options) {
  if (!integrals.has_surface()) throw InputError("pcm_rhf needs surface potentials on the integral set");
  if (integrals.tessera_potential.size() != response.size()) {
    throw InputError("surface potentials and solvent response disagree on the tessera count");
  }
  const Mat qs = 0.5 * (response.Q + response.Q.transpose());
  Vec last_q;
  auto res = run_scf(integrals, options, [&](const Mat& p, Mat& f, double& e) {
    const Vec v = surface_potential(integrals, p);
    const Vec w = qs * v;
    for (std::size_t i = 0; i < integrals.tessera_potential.size(); ++i) {
      f += w(static_cast<Eigen::Index>(i)) * integrals.tessera_potential[i];
    }
    last_q = response.Q * v;
    e = 0.5 * v.dot(last_q);
  });
  res.charges = last_q;
  return res;
}

}  // namespace solvq::scf

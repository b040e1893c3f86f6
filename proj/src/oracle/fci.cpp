#include "solvq/oracle/fci.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>

#include <bit>
#include <cmath>
#include <limits>
#include <sstream>
#include <unordered_map>

namespace solvq::oracle {

namespace {

/// Applies a_mode / a+_mode to occupation mask b. Returns the sign, 0 if the result vanishes.
int act(std::uint64_t& b, int mode, bool create) {
  const std::uint64_t bit = std::uint64_t{1} << mode;
  if (create == static_cast<bool>(b & bit)) return 0;
  const int sign = (std::popcount(b & (bit - 1)) & 1) ? -1 : 1;
  b ^= bit;
  return sign;
}

using Index = std::unordered_map<std::uint64_t, Eigen::Index>;

Index make_index(const std::vector<std::uint64_t>& dets) {
  Index idx;
  for (std::size_t k = 0; k < dets.size(); ++k) idx.emplace(dets[k], static_cast<Eigen::Index>(k));
  return idx;
}

/// Calls f(target_mask, value) for every term of H|det>.
template <class F>
void apply_hamiltonian(const Mat& h, const Tensor4& g, std::uint64_t det, F&& f) {
  const int m = static_cast<int>(h.rows());
  for (int sigma = 0; sigma < 2; ++sigma) {
    for (int q = 0; q < m; ++q) {
      std::uint64_t b1 = det;
      const int s1 = act(b1, q + sigma * m, false);
      if (!s1) continue;
      for (int p = 0; p < m; ++p) {
        if (h(p, q) == 0.0) continue;
        std::uint64_t b2 = b1;
        const int s2 = act(b2, p + sigma * m, true);
        if (s2) f(b2, s1 * s2 * h(p, q));
      }
      for (int tau = 0; tau < 2; ++tau) {
        for (int s = 0; s < m; ++s) {
          std::uint64_t b2 = b1;
          const int s2 = act(b2, s + tau * m, false);
          if (!s2) continue;
          for (int r = 0; r < m; ++r) {
            std::uint64_t b3 = b2;
            const int s3 = act(b3, r + tau * m, true);
            if (!s3) continue;
            for (int p = 0; p < m; ++p) {
              const double v = g(p, q, r, s);
              if (v == 0.0) continue;
              std::uint64_t b4 = b3;
              const int s4 = act(b4, p + sigma * m, true);
              if (s4) f(b4, 0.5 * s1 * s2 * s3 * s4 * v);
            }
          }
        }
      }
    }
  }
}

struct Eigenpair {
  double value = 0.0;
  Vec vector;
};

Eigenpair lowest_dense(const Mat& hm) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hm);
  if (es.info() != Eigen::Success) throw NumericalError("FCI eigensolve failed");
  return {es.eigenvalues()(0), es.eigenvectors().col(0)};
}

/// Lanczos with full reorthogonalization for the lowest eigenpair.
Eigenpair lowest_lanczos(const Eigen::SparseMatrix<double>& hm) {
  const Eigen::Index n = hm.rows();
  const Eigen::Index max_k = std::min<Eigen::Index>(n, 400);
  Mat basis(n, max_k);
  Vec v = Vec::Ones(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) += 1e-3 * std::sin(static_cast<double>(i + 1));
  v.normalize();
  std::vector<double> alpha;
  std::vector<double> beta;
  Eigenpair best;
  double last = 0.0;
  for (Eigen::Index k = 0; k < max_k; ++k) {
    basis.col(k) = v;
    Vec w = hm * v;
    alpha.push_back(v.dot(w));
    w -= basis.leftCols(k + 1) * (basis.leftCols(k + 1).transpose() * w);
    w -= basis.leftCols(k + 1) * (basis.leftCols(k + 1).transpose() * w);
    const double b = w.norm();
    const bool done = b < 1e-12 || k + 1 == max_k;
    if ((k + 1) % 10 == 0 || done) {
      const auto kk = static_cast<Eigen::Index>(alpha.size());
      Mat t = Mat::Zero(kk, kk);
      for (Eigen::Index i = 0; i < kk; ++i) {
        t(i, i) = alpha[static_cast<std::size_t>(i)];
        if (i + 1 < kk) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
      }
      Eigen::SelfAdjointEigenSolver<Mat> es(t);
      best.value = es.eigenvalues()(0);
      best.vector = basis.leftCols(kk) * es.eigenvectors().col(0);
      best.vector.normalize();
      const double res = (hm * best.vector - best.value * best.vector).norm();
      if (done || (res < 1e-11 && std::abs(best.value - last) < 1e-13)) break;
      last = best.value;
    }
    beta.push_back(b);
    v = w / b;
  }
  return best;
}

Mat one_rdm(const std::vector<std::uint64_t>& dets, const Vec& c, int m) {
  const Index idx = make_index(dets);
  Mat d = Mat::Zero(m, m);
  for (std::size_t k = 0; k < dets.size(); ++k) {
    const double ck = c(static_cast<Eigen::Index>(k));
    if (ck == 0.0) continue;
    for (int sigma = 0; sigma < 2; ++sigma)
      for (int q = 0; q < m; ++q) {
        std::uint64_t b1 = dets[k];
        const int s1 = act(b1, q + sigma * m, false);
        if (!s1) continue;
        for (int p = 0; p < m; ++p) {
          std::uint64_t b2 = b1;
          const int s2 = act(b2, p + sigma * m, true);
          if (!s2) continue;
          auto it = idx.find(b2);
          if (it != idx.end()) d(p, q) += c(it->second) * s1 * s2 * ck;
        }
      }
  }
  return d;
}

template <class Build>
FciResult solve_sector(std::vector<std::uint64_t> dets, int n_qubits, const FciOptions& opt, Build&& build) {
  FciResult r;
  r.n_qubits = n_qubits;
  r.determinants = std::move(dets);
  const auto n = static_cast<Eigen::Index>(r.determinants.size());
  if (n == 0) throw InputError("empty FCI sector");
  const Index idx = make_index(r.determinants);
  std::vector<Eigen::Triplet<double>> trip;
  for (Eigen::Index col = 0; col < n; ++col) {
    build(r.determinants[static_cast<std::size_t>(col)], [&](std::uint64_t target, double v) {
      auto it = idx.find(target);
      if (it != idx.end()) trip.emplace_back(it->second, col, v);
    });
  }
  Eigen::SparseMatrix<double> hs(n, n);
  hs.setFromTriplets(trip.begin(), trip.end());
  Eigenpair ep = n <= opt.dense_limit ? lowest_dense(Mat(hs)) : lowest_lanczos(hs);
  // Fix the overall sign: largest-magnitude coefficient positive.
  Eigen::Index imax = 0;
  ep.vector.cwiseAbs().maxCoeff(&imax);
  if (ep.vector(imax) < 0) ep.vector = -ep.vector;
  r.energy = ep.value;
  r.free_energy = ep.value;
  r.vector = ep.vector;
  r.residual = (hs * ep.vector - ep.value * ep.vector).norm();
  return r;
}

void check_size(int n_qubits, const FciOptions& opt) {
  if (n_qubits > opt.max_qubits) {
    throw InputError("FCI limited to " + std::to_string(opt.max_qubits) + " qubits, got " + std::to_string(n_qubits));
  }
}

void attach_rdms(FciResult& r, int m) {
  r.rdm = qsim::measure_rdms_exact(r.to_statevector(), m);
  r.rdm.d = one_rdm(r.determinants, r.vector, m);
}

}  // namespace

qsim::Statevector FciResult::to_statevector() const {
  qsim::CVec amps = qsim::CVec::Zero(Eigen::Index{1} << n_qubits);
  for (std::size_t k = 0; k < determinants.size(); ++k) {
    amps(static_cast<Eigen::Index>(determinants[k])) = vector(static_cast<Eigen::Index>(k));
  }
  return qsim::Statevector(n_qubits, std::move(amps));
}

std::vector<std::uint64_t> sector_determinants(int m, int n_alpha, int n_beta) {
  if (n_alpha < 0 || n_beta < 0 || n_alpha > m || n_beta > m) throw InputError("occupation exceeds the orbital count");
  std::vector<std::uint64_t> alpha;
  std::vector<std::uint64_t> beta;
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << m); ++b) {
    if (std::popcount(b) == n_alpha) alpha.push_back(b);
    if (std::popcount(b) == n_beta) beta.push_back(b);
  }
  std::vector<std::uint64_t> dets;
  for (auto bb : beta)
    for (auto aa : alpha) dets.push_back(aa | (bb << m));
  return dets;
}

Mat fci_matrix(const Mat& h, const Tensor4& g, double constant, const std::vector<std::uint64_t>& dets) {
  const Index idx = make_index(dets);
  const auto n = static_cast<Eigen::Index>(dets.size());
  Mat hm = constant * Mat::Identity(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    apply_hamiltonian(h, g, dets[static_cast<std::size_t>(col)], [&](std::uint64_t t, double v) {
      auto it = idx.find(t);
      if (it != idx.end()) hm(it->second, col) += v;
    });
  }
  return hm;
}

FciResult fci(const Mat& h, const Tensor4& g, double constant, int n_alpha, int n_beta, const FciOptions& opt) {
  const int m = static_cast<int>(h.rows());
  check_size(2 * m, opt);
  auto r = solve_sector(sector_determinants(m, n_alpha, n_beta), 2 * m, opt,
                        [&](std::uint64_t det, auto&& emit) {
                          emit(det, constant);
                          apply_hamiltonian(h, g, det, emit);
                        });
  attach_rdms(r, m);
  return r;
}

FciResult fci(const scf::ActiveSpace& active, const FciOptions& opt) {
  const int n_alpha = active.n_active_electrons / 2;
  return fci(active.h_eff, active.g_active, active.constant(), n_alpha, active.n_active_electrons - n_alpha, opt);
}

FciResult fci(const f2q::QubitOperator& op, int n_alpha, int n_beta, const FciOptions& opt) {
  const int n = op.n_qubits();
  check_size(n, opt);
  if (n % 2 != 0) throw InputError("sector FCI needs an even qubit count");
  auto r = solve_sector(sector_determinants(n / 2, n_alpha, n_beta), n, opt, [&](std::uint64_t det, auto&& emit) {
    for (const auto& t : op.terms()) {
      // P|b> = i^{|x&z|} (-1)^{|z&b|} |b^x>; real for the even-Y strings of real Hamiltonians.
      const int ny = std::popcount(t.string.x & t.string.z);
      if (ny & 1) throw InputError("sector FCI needs a real Hamiltonian");
      double v = t.coefficient * ((ny / 2) & 1 ? -1.0 : 1.0);
      if (std::popcount(t.string.z & det) & 1) v = -v;
      emit(det ^ t.string.x, v);
    }
  });
  attach_rdms(r, n / 2);
  return r;
}

FciResult pcm_fci(const scf::ActiveSpace& active, const f2q::InteractionTables& tables, const PcmFciOptions& opt) {
  if (!(opt.mixing > 0.0 && opt.mixing <= 1.0)) throw InputError("PCM-FCI mixing must be in (0, 1]");
  const int n_alpha = active.n_active_electrons / 2;
  const int n_beta = active.n_active_electrons - n_alpha;
  FciResult r = fci(active, opt.fci);
  Mat d = r.rdm.d;
  double last = std::numeric_limits<double>::infinity();
  std::vector<double> trace;
  for (int it = 1; it <= opt.max_iterations; ++it) {
    const Mat f = f2q::effective_one_body(tables, d);
    r = fci(Mat(active.h_eff + f), active.g_active, active.constant(), n_alpha, n_beta, opt.fci);
    // Energy of H0 alone: remove the effective one-body part.
    const double e0 = r.energy - f.cwiseProduct(r.rdm.d).sum();
    const double u = f2q::solvent_energy(tables, r.rdm.d);
    const double g = e0 + u;
    trace.push_back(g);
    r.energy = e0;
    r.solvent_energy = u;
    r.free_energy = g;
    r.n_iterations = it;
    r.trace = trace;
    const double change = (r.rdm.d - d).norm();
    if (std::abs(g - last) < opt.tolerance && change < std::sqrt(opt.tolerance)) return r;
    last = g;
    d = (1.0 - opt.mixing) * d + opt.mixing * r.rdm.d;
  }
  std::ostringstream msg;
  msg.precision(12);
  msg << "PCM-FCI fixed point did not converge in " << opt.max_iterations << " iterations; G trace:";
  for (std::size_t k = trace.size() > 5 ? trace.size() - 5 : 0; k < trace.size(); ++k) msg << ' ' << trace[k];
  throw NumericalError(msg.str());
}

}  // namespace solvq::oracle

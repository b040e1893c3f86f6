#include "solvq/scf/active_space.hpp"

#include <fstream>
#include <iomanip>

namespace solvq::scf {

namespace {

/// (pq|rs) over MOs given by the columns of c.
Tensor4 transform_eri(const molint::EriTensor& eri, const Mat& c) {
  const int n = static_cast<int>(c.rows());
  const int m = static_cast<int>(c.cols());
  // Quarter transforms through dense intermediates; sizes here are tiny.
  std::vector<double> t1(static_cast<std::size_t>(m) * n * n * n, 0.0);
  auto i4 = [](int a, int b, int cc, int d, int nb, int nc, int nd) {
    return ((static_cast<std::size_t>(a) * nb + b) * nc + cc) * nd + d;
  };
  for (int p = 0; p < m; ++p)
    for (int mu = 0; mu < n; ++mu) {
      const double cp = c(mu, p);
      if (cp == 0.0) continue;
      for (int nu = 0; nu < n; ++nu)
        for (int la = 0; la < n; ++la)
          for (int si = 0; si < n; ++si)
            t1[i4(p, nu, la, si, n, n, n)] +=
                cp * eri(static_cast<std::size_t>(mu), static_cast<std::size_t>(nu), static_cast<std::size_t>(la),
                         static_cast<std::size_t>(si));
    }
  std::vector<double> t2(static_cast<std::size_t>(m) * m * n * n, 0.0);
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q)
      for (int nu = 0; nu < n; ++nu) {
        const double cq = c(nu, q);
        for (int la = 0; la < n; ++la)
          for (int si = 0; si < n; ++si) t2[i4(p, q, la, si, m, n, n)] += cq * t1[i4(p, nu, la, si, n, n, n)];
      }
  std::vector<double> t3(static_cast<std::size_t>(m) * m * m * n, 0.0);
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q)
      for (int r = 0; r < m; ++r)
        for (int la = 0; la < n; ++la) {
          const double cr = c(la, r);
          for (int si = 0; si < n; ++si) t3[i4(p, q, r, si, m, m, n)] += cr * t2[i4(p, q, la, si, m, n, n)];
        }
  Tensor4 out(m);
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q)
      for (int r = 0; r < m; ++r)
        for (int s = 0; s < m; ++s) {
          double v = 0.0;
          for (int si = 0; si < n; ++si) v += c(si, s) * t3[i4(p, q, r, si, m, m, n)];
          out(p, q, r, s) = v;
        }
  return out;
}

}  // namespace

ActiveSpace to_mo_and_freeze(const molint::IntegralSet& ints, const Mat& c, int n_frozen_core) {
  const int n_occ = ints.n_electrons / 2;
  if (n_frozen_core < 0 || n_frozen_core >= n_occ) {
    throw InputError("frozen core count must be in [0, " + std::to_string(n_occ - 1) + "], got " +
                     std::to_string(n_frozen_core));
  }
  const auto n = c.rows();
  const auto m = c.cols() - n_frozen_core;
  ActiveSpace as;
  as.n_frozen_core = n_frozen_core;
  as.n_active_electrons = ints.n_electrons - 2 * n_frozen_core;
  for (int k = n_frozen_core; k < c.cols(); ++k) as.active.push_back(k);
  as.e_nuc = ints.e_nuc;
  const Mat c_core = c.leftCols(n_frozen_core);
  as.core_density_ao = n_frozen_core > 0 ? Mat(2.0 * c_core * c_core.transpose()) : Mat::Zero(n, n);
  as.mo_active = c.rightCols(m);
  Mat h_ao = ints.h_core;
  if (n_frozen_core > 0) {
    const Mat g_core = two_electron_fock(ints, as.core_density_ao);
    as.core_energy = as.core_density_ao.cwiseProduct(ints.h_core).sum() + 0.5 * as.core_density_ao.cwiseProduct(g_core).sum();
    h_ao += g_core;
  }
  as.h_eff = as.mo_active.transpose() * h_ao * as.mo_active;
  as.h_eff = 0.5 * (as.h_eff + as.h_eff.transpose()).eval();
  as.g_active = transform_eri(ints.eri, as.mo_active);
  return as;
}

ActiveSpace to_mo_and_freeze(const molint::IntegralSet& integrals, const ScfResult& scf, int n_frozen_core) {
  return to_mo_and_freeze(integrals, scf.mo_coefficients, n_frozen_core);
}

void write_fcidump(const ActiveSpace& as, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  const int m = as.n_orbitals();
  out << " &FCI NORB=" << m << ",NELEC=" << as.n_active_electrons << ",MS2=0,\n  ORBSYM=";
  for (int i = 0; i < m; ++i) out << "1,";
  out << "\n  ISYM=1,\n &END\n";
  out << std::scientific << std::setprecision(16);
  auto line = [&](double v, int i, int j, int k, int l) {
    out << std::setw(24) << v << ' ' << std::setw(4) << i << ' ' << std::setw(4) << j << ' ' << std::setw(4) << k
        << ' ' << std::setw(4) << l << '\n';
  };
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= i; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l <= k; ++l) {
          if (i * (i + 1) / 2 + j < k * (k + 1) / 2 + l) continue;
          const double v = as.g_active(i, j, k, l);
          if (std::abs(v) > 1e-14) line(v, i + 1, j + 1, k + 1, l + 1);
        }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= i; ++j) {
      const double v = as.h_eff(i, j);
      if (std::abs(v) > 1e-14) line(v, i + 1, j + 1, 0, 0);
    }
  line(as.constant(), 0, 0, 0, 0);
}

}  // namespace solvq::scf

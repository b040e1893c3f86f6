// McMurchie-Davidson integrals over contracted Cartesian Gaussians (s, p).
#include "solvq/molint/integrals.hpp"

#include "solvq/molint/boys.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace solvq::molint {

EriTensor::EriTensor(std::size_t n) : n_(n) {
  const std::size_t npair = n * (n + 1) / 2;
  data_.assign(npair * (npair + 1) / 2, 0.0);
}

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxL = 4;  // (pp|pp)
constexpr int kRDim = kMaxL + 1;

/// 1-D Hermite expansion coefficients E^{ij}_t for i <= 3, j <= 3.
struct Hermite1D {
  double e[4][4][9] = {};
};

void fill_hermite(Hermite1D& h, int imax, int jmax, double a, double b, double ax, double bx) {
  const double p = a + b;
  const double x = ax - bx;
  const double xpa = -b / p * x;
  const double xpb = a / p * x;
  const double inv2p = 0.5 / p;
  h = Hermite1D{};
  h.e[0][0][0] = std::exp(-a * b / p * x * x);
  for (int i = 0; i <= imax; ++i) {
    for (int j = 0; j <= jmax; ++j) {
      if (i == 0 && j == 0) continue;
      for (int t = 0; t <= i + j; ++t) {
        if (i > 0) {
          const auto& prev = h.e[i - 1][j];
          h.e[i][j][t] = (t > 0 ? inv2p * prev[t - 1] : 0.0) + xpa * prev[t] + (t + 1) * prev[t + 1];
        } else {
          const auto& prev = h.e[i][j - 1];
          h.e[i][j][t] = (t > 0 ? inv2p * prev[t - 1] : 0.0) + xpb * prev[t] + (t + 1) * prev[t + 1];
        }
      }
    }
  }
}

/// Hermite Coulomb integrals R_{tuv}(p, PC) for t+u+v <= l.
struct HermiteR {
  double r[kRDim][kRDim][kRDim] = {};
};

void fill_hermite_r(HermiteR& out, int l, double p, const Vec3& pc) {
  double aux[kRDim][kRDim][kRDim][kRDim] = {};
  std::array<double, kRDim> f{};
  boys(p * pc.squaredNorm(), std::span<double>(f.data(), static_cast<std::size_t>(l) + 1));
  double fac = 1.0;
  for (int n = 0; n <= l; ++n) {
    aux[n][0][0][0] = fac * f[static_cast<std::size_t>(n)];
    fac *= -2.0 * p;
  }
  for (int order = 1; order <= l; ++order) {
    for (int t = 0; t <= order; ++t) {
      for (int u = 0; u <= order - t; ++u) {
        const int v = order - t - u;
        for (int n = 0; n <= l - order; ++n) {
          double val;
          if (t > 0) {
            val = pc.x() * aux[n + 1][t - 1][u][v] + (t > 1 ? (t - 1) * aux[n + 1][t - 2][u][v] : 0.0);
          } else if (u > 0) {
            val = pc.y() * aux[n + 1][t][u - 1][v] + (u > 1 ? (u - 1) * aux[n + 1][t][u - 2][v] : 0.0);
          } else {
            val = pc.z() * aux[n + 1][t][u][v - 1] + (v > 1 ? (v - 1) * aux[n + 1][t][u][v - 2] : 0.0);
          }
          aux[n][t][u][v] = val;
        }
      }
    }
  }
  for (int t = 0; t <= l; ++t)
    for (int u = 0; u <= l - t; ++u)
      for (int v = 0; v <= l - t - u; ++v) out.r[t][u][v] = aux[0][t][u][v];
}

/// Primitive product data for a pair of contracted functions.
struct PrimPair {
  double p = 0.0;
  Vec3 center;
  double coef = 0.0;  // c_a * c_b
  std::array<std::array<double, 3>, 3> e{};  // e[axis][t], t <= 2
};

struct FunctionPair {
  std::size_t mu = 0, nu = 0;
  std::array<int, 3> lsum{};  // per-axis l_mu + l_nu
  int ltot = 0;
  std::vector<PrimPair> prims;
};

FunctionPair make_pair(const BasisSet& basis, std::size_t mu, std::size_t nu) {
  const auto& fa = basis.functions()[mu];
  const auto& fb = basis.functions()[nu];
  const auto& sa = basis.shells()[fa.shell];
  const auto& sb = basis.shells()[fb.shell];
  FunctionPair fp;
  fp.mu = mu;
  fp.nu = nu;
  for (int k = 0; k < 3; ++k) {
    fp.lsum[static_cast<std::size_t>(k)] = fa.powers[static_cast<std::size_t>(k)] + fb.powers[static_cast<std::size_t>(k)];
    fp.ltot += fp.lsum[static_cast<std::size_t>(k)];
  }
  Hermite1D h;
  for (std::size_t i = 0; i < sa.exponents.size(); ++i) {
    for (std::size_t j = 0; j < sb.exponents.size(); ++j) {
      const double a = sa.exponents[i];
      const double b = sb.exponents[j];
      PrimPair pp;
      pp.p = a + b;
      pp.center = (a * sa.center + b * sb.center) / pp.p;
      pp.coef = sa.coefficients[i] * sb.coefficients[j];
      for (int k = 0; k < 3; ++k) {
        const int la = fa.powers[static_cast<std::size_t>(k)];
        const int lb = fb.powers[static_cast<std::size_t>(k)];
        fill_hermite(h, la, lb, a, b, sa.center[k], sb.center[k]);
        for (int t = 0; t <= la + lb; ++t) pp.e[static_cast<std::size_t>(k)][static_cast<std::size_t>(t)] = h.e[la][lb][t];
      }
      fp.prims.push_back(pp);
    }
  }
  return fp;
}

std::vector<FunctionPair> all_pairs(const BasisSet& basis) {
  std::vector<FunctionPair> pairs;
  const std::size_t n = basis.n_basis();
  pairs.reserve(n * (n + 1) / 2);
  for (std::size_t mu = 0; mu < n; ++mu)
    for (std::size_t nu = 0; nu <= mu; ++nu) pairs.push_back(make_pair(basis, mu, nu));
  return pairs;
}

/// -\int chi_mu chi_nu / |r - c| for a pair.
double point_potential(const FunctionPair& fp, const Vec3& c) {
  HermiteR rt;
  double total = 0.0;
  for (const auto& pp : fp.prims) {
    fill_hermite_r(rt, fp.ltot, pp.p, pp.center - c);
    double sum = 0.0;
    for (int t = 0; t <= fp.lsum[0]; ++t)
      for (int u = 0; u <= fp.lsum[1]; ++u)
        for (int v = 0; v <= fp.lsum[2]; ++v)
          sum += pp.e[0][static_cast<std::size_t>(t)] * pp.e[1][static_cast<std::size_t>(u)] *
                 pp.e[2][static_cast<std::size_t>(v)] * rt.r[t][u][v];
    total += pp.coef * 2.0 * kPi / pp.p * sum;
  }
  return -total;
}

double overlap_1d(const Hermite1D& h, int i, int j, double p) {
  if (i < 0 || j < 0) return 0.0;
  return h.e[i][j][0] * std::sqrt(kPi / p);
}

void one_electron(const BasisSet& basis, Mat& s, Mat& t) {
  const std::size_t n = basis.n_basis();
  s = Mat::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  t = s;
  Hermite1D h[3];
  for (std::size_t mu = 0; mu < n; ++mu) {
    for (std::size_t nu = 0; nu <= mu; ++nu) {
      const auto& fa = basis.functions()[mu];
      const auto& fb = basis.functions()[nu];
      const auto& sa = basis.shells()[fa.shell];
      const auto& sb = basis.shells()[fb.shell];
      double sval = 0.0, tval = 0.0;
      for (std::size_t i = 0; i < sa.exponents.size(); ++i) {
        for (std::size_t j = 0; j < sb.exponents.size(); ++j) {
          const double a = sa.exponents[i];
          const double b = sb.exponents[j];
          const double p = a + b;
          double s1[3], t1[3];
          for (int k = 0; k < 3; ++k) {
            const int la = fa.powers[static_cast<std::size_t>(k)];
            const int lb = fb.powers[static_cast<std::size_t>(k)];
            fill_hermite(h[k], la, lb + 2, a, b, sa.center[k], sb.center[k]);
            s1[k] = overlap_1d(h[k], la, lb, p);
            t1[k] = -0.5 * (lb * (lb - 1) * overlap_1d(h[k], la, lb - 2, p) -
                            2.0 * b * (2 * lb + 1) * overlap_1d(h[k], la, lb, p) +
                            4.0 * b * b * overlap_1d(h[k], la, lb + 2, p));
          }
          const double c = sa.coefficients[i] * sb.coefficients[j];
          sval += c * s1[0] * s1[1] * s1[2];
          tval += c * (t1[0] * s1[1] * s1[2] + s1[0] * t1[1] * s1[2] + s1[0] * s1[1] * t1[2]);
        }
      }
      const auto r = static_cast<Eigen::Index>(mu);
      const auto q = static_cast<Eigen::Index>(nu);
      s(r, q) = s(q, r) = sval;
      t(r, q) = t(q, r) = tval;
    }
  }
}

double eri_pair(const FunctionPair& ab, const FunctionPair& cd) {
  HermiteR rt;
  const int l = ab.ltot + cd.ltot;
  double total = 0.0;
  for (const auto& p1 : ab.prims) {
    for (const auto& p2 : cd.prims) {
      const double p = p1.p;
      const double q = p2.p;
      const double alpha = p * q / (p + q);
      fill_hermite_r(rt, l, alpha, p1.center - p2.center);
      double sum = 0.0;
      for (int t = 0; t <= ab.lsum[0]; ++t)
        for (int u = 0; u <= ab.lsum[1]; ++u)
          for (int v = 0; v <= ab.lsum[2]; ++v) {
            const double eab = p1.e[0][static_cast<std::size_t>(t)] * p1.e[1][static_cast<std::size_t>(u)] *
                               p1.e[2][static_cast<std::size_t>(v)];
            if (eab == 0.0) continue;
            double inner = 0.0;
            for (int tau = 0; tau <= cd.lsum[0]; ++tau)
              for (int nu = 0; nu <= cd.lsum[1]; ++nu)
                for (int phi = 0; phi <= cd.lsum[2]; ++phi) {
                  const double ecd = p2.e[0][static_cast<std::size_t>(tau)] * p2.e[1][static_cast<std::size_t>(nu)] *
                                     p2.e[2][static_cast<std::size_t>(phi)];
                  const double sign = ((tau + nu + phi) % 2 == 0) ? 1.0 : -1.0;
                  inner += sign * ecd * rt.r[t + tau][u + nu][v + phi];
                }
            sum += eab * inner;
          }
      total += p1.coef * p2.coef * 2.0 * std::pow(kPi, 2.5) / (p * q * std::sqrt(p + q)) * sum;
    }
  }
  return total;
}

}  // namespace

IntegralSet compute_integrals(const Molecule& molecule, const BasisSet& basis) {
  for (const auto& sh : basis.shells()) {
    if (sh.atom >= molecule.atoms.size()) throw InputError("basis shell references a missing atom");
  }
  IntegralSet out;
  out.e_nuc = molecule.nuclear_repulsion();
  out.n_electrons = molecule.n_electrons();
  one_electron(basis, out.overlap, out.kinetic);

  const std::size_t n = basis.n_basis();
  const auto pairs = all_pairs(basis);
  out.nuclear_attraction = Mat::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (const auto& fp : pairs) {
    double v = 0.0;
    for (const auto& atom : molecule.atoms) v += atom.charge * point_potential(fp, atom.position);
    const auto r = static_cast<Eigen::Index>(fp.mu);
    const auto q = static_cast<Eigen::Index>(fp.nu);
    out.nuclear_attraction(r, q) = out.nuclear_attraction(q, r) = v;
  }
  out.h_core = out.kinetic + out.nuclear_attraction;

  out.eri = EriTensor(n);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      out.eri.set(pairs[i].mu, pairs[i].nu, pairs[j].mu, pairs[j].nu, eri_pair(pairs[i], pairs[j]));
    }
  }
  return out;
}

SurfacePotentials potential_integrals(const Molecule& molecule, const BasisSet& basis,
                                      std::span<const Vec3> points) {
  SurfacePotentials out;
  const std::size_t n = basis.n_basis();
  const auto pairs = all_pairs(basis);
  out.nuclear = Vec::Zero(static_cast<Eigen::Index>(points.size()));
  out.electronic.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    double vn = 0.0;
    for (const auto& atom : molecule.atoms) {
      const double d = (atom.position - points[i]).norm();
      if (d < 1e-8) {
        throw InputError("surface point " + std::to_string(i) + " coincides with a nucleus");
      }
      vn += atom.charge / d;
    }
    out.nuclear[static_cast<Eigen::Index>(i)] = vn;
    Mat v(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (const auto& fp : pairs) {
      const double val = point_potential(fp, points[i]);
      v(static_cast<Eigen::Index>(fp.mu), static_cast<Eigen::Index>(fp.nu)) = val;
      v(static_cast<Eigen::Index>(fp.nu), static_cast<Eigen::Index>(fp.mu)) = val;
    }
    out.electronic.push_back(std::move(v));
  }
  return out;
}

void attach_surface(IntegralSet& integrals, const Molecule& molecule, const BasisSet& basis,
                    std::span<const Vec3> points) {
  auto pot = potential_integrals(molecule, basis, points);
  integrals.tessera_potential = std::move(pot.electronic);
  integrals.v_nuc_tess = std::move(pot.nuclear);
}

double evaluate_function(const BasisSet& basis, std::size_t index, const Vec3& r) {
  const auto& f = basis.functions().at(index);
  const auto& sh = basis.shells()[f.shell];
  const Vec3 d = r - sh.center;
  double angular = 1.0;
  for (int k = 0; k < 3; ++k) {
    if (f.powers[static_cast<std::size_t>(k)] == 1) angular *= d[k];
  }
  double radial = 0.0;
  for (std::size_t i = 0; i < sh.exponents.size(); ++i) {
    radial += sh.coefficients[i] * std::exp(-sh.exponents[i] * d.squaredNorm());
  }
  return angular * radial;
}

}  // namespace solvq::molint

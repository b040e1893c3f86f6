#include "solvq/cavity/cavity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace solvq::cavity {

namespace {

constexpr double kSurfaceTol = 1e-9;

struct Triangle {
  Vec3 a, b, c;  // unit vectors
};

std::vector<Triangle> icosahedron_faces() {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::array<Vec3, 12> v = {Vec3(-1, phi, 0), Vec3(1, phi, 0),  Vec3(-1, -phi, 0), Vec3(1, -phi, 0),
                            Vec3(0, -1, phi), Vec3(0, 1, phi),  Vec3(0, -1, -phi), Vec3(0, 1, -phi),
                            Vec3(phi, 0, -1), Vec3(phi, 0, 1),  Vec3(-phi, 0, -1), Vec3(-phi, 0, 1)};
  for (auto& x : v) x.normalize();
  constexpr std::array<std::array<int, 3>, 20> f = {{{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                                                     {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                                                     {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                                                     {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}}};
  std::vector<Triangle> out;
  for (const auto& t : f) out.push_back({v[t[0]], v[t[1]], v[t[2]]});
  return out;
}

/// Splits a (spherical) triangle into n^2 pieces on the flat chord triangle,
/// then projects corners back to the unit sphere.
std::vector<Triangle> subdivide(const Triangle& t, int n) {
  std::vector<Triangle> out;
  out.reserve(static_cast<std::size_t>(n) * n);
  auto point = [&](int i, int j) -> Vec3 {
    const Vec3 p = t.a + (t.b - t.a) * (static_cast<double>(i) / n) + (t.c - t.a) * (static_cast<double>(j) / n);
    return p.normalized();
  };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n - i; ++j) {
      out.push_back({point(i, j), point(i + 1, j), point(i, j + 1)});
      if (i + j < n - 1) out.push_back({point(i + 1, j), point(i + 1, j + 1), point(i, j + 1)});
    }
  }
  return out;
}

/// Solid angle of a spherical triangle with unit-vector corners.
double solid_angle(const Triangle& t) {
  const double num = std::abs(t.a.dot(t.b.cross(t.c)));
  const double den = 1.0 + t.a.dot(t.b) + t.b.dot(t.c) + t.c.dot(t.a);
  return 2.0 * std::atan2(num, den);
}

bool buried(const Vec3& p, std::size_t owner, const std::vector<Sphere>& spheres) {
  for (std::size_t j = 0; j < spheres.size(); ++j) {
    if (j == owner) continue;
    const double d = (p - spheres[j].center).norm() - spheres[j].radius;
    if (d < -kSurfaceTol) return true;
    // Coincident surfaces: the lower-index sphere owns the shared patch.
    if (std::abs(d) <= kSurfaceTol && j < owner) return true;
  }
  return false;
}

}  // namespace

double Cavity::total_area() const {
  double a = 0.0;
  for (const auto& t : tesserae) a += t.area;
  return a;
}

std::vector<Vec3> Cavity::points() const {
  std::vector<Vec3> p;
  p.reserve(tesserae.size());
  for (const auto& t : tesserae) p.push_back(t.center);
  return p;
}

std::map<std::string, double> default_radii() {
  return {{"H", 1.20}, {"He", 1.40}, {"Be", 1.53}, {"O", 1.52}};
}

Cavity build_cavity(const std::vector<Sphere>& spheres, int subdivision_level, int exposure_samples) {
  if (subdivision_level < 1 || subdivision_level > 5) {
    throw InputError("cavity subdivision level must be in [1, 5], got " + std::to_string(subdivision_level));
  }
  if (exposure_samples < 1) throw InputError("cavity exposure sampling must be >= 1");
  for (const auto& s : spheres) {
    if (!(s.radius > 0.0)) throw InputError("cavity sphere radius must be positive");
  }
  Cavity cav;
  cav.spheres = spheres;
  std::vector<Triangle> unit_mesh;
  for (const auto& face : icosahedron_faces()) {
    for (const auto& t : subdivide(face, subdivision_level)) unit_mesh.push_back(t);
  }
  for (std::size_t k = 0; k < spheres.size(); ++k) {
    const auto& sph = spheres[k];
    const double r2 = sph.radius * sph.radius;
    for (const auto& tri : unit_mesh) {
      const double full_area = solid_angle(tri) * r2;
      const auto subs = subdivide(tri, exposure_samples);
      double exposed = 0.0;
      double sampled = 0.0;
      Vec3 weighted = Vec3::Zero();
      for (const auto& s : subs) {
        const double w = solid_angle(s);
        const Vec3 sdir = (s.a + s.b + s.c).normalized();
        sampled += w;
        if (!buried(sph.center + sph.radius * sdir, k, spheres)) {
          exposed += w;
          weighted += w * sdir;
        }
      }
      if (exposed <= 0.0) continue;
      Tessera t;
      t.sphere = k;
      const double fraction = exposed / sampled;
      t.area = fraction > 1.0 - 1e-14 ? full_area : full_area * fraction;
      t.normal = weighted.normalized();
      t.center = sph.center + sph.radius * t.normal;
      cav.tesserae.push_back(t);
    }
  }
  if (cav.tesserae.empty()) throw InputError("cavity has no exposed tesserae");
  return cav;
}

Cavity build_cavity(const molint::Molecule& molecule, const CavityOptions& options) {
  if (!(options.scale > 0.0)) throw InputError("cavity radius scale must be positive");
  std::vector<Sphere> spheres;
  for (const auto& atom : molecule.atoms) {
    auto it = options.radii.find(atom.symbol);
    if (it == options.radii.end()) {
      throw InputError("no cavity radius defined for element " + atom.symbol);
    }
    spheres.push_back({atom.position, it->second * options.scale / kBohrInAngstrom});
  }
  return build_cavity(spheres, options.subdivision_level, options.exposure_samples);
}

Cavity transformed(const Cavity& cavity, const Mat3& rotation, const Vec3& shift) {
  Cavity out = cavity;
  for (auto& s : out.spheres) s.center = rotation * s.center + shift;
  for (auto& t : out.tesserae) {
    t.center = rotation * t.center + shift;
    t.normal = rotation * t.normal;
  }
  return out;
}

void write_cavity_csv(const Cavity& cavity, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << "index,x,y,z,area,nx,ny,nz\n";
  out << std::setprecision(17);
  for (std::size_t i = 0; i < cavity.tesserae.size(); ++i) {
    const auto& t = cavity.tesserae[i];
    out << i << ',' << t.center.x() << ',' << t.center.y() << ',' << t.center.z() << ',' << t.area << ','
        << t.normal.x() << ',' << t.normal.y() << ',' << t.normal.z() << '\n';
  }
}

Cavity read_cavity_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  Cavity cav;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    std::size_t idx = 0;
    Tessera t;
    if (!(row >> idx >> t.center.x() >> t.center.y() >> t.center.z() >> t.area >> t.normal.x() >>
          t.normal.y() >> t.normal.z())) {
      throw InputError("malformed cavity row: " + line);
    }
    cav.tesserae.push_back(t);
  }
  return cav;
}

}  // namespace solvq::cavity

#pragma once

#include "solvq/molint/molecule.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace solvq::cavity {

struct Tessera {
  Vec3 center;   // representative point s_i, bohr
  double area = 0.0;  // bohr^2
  Vec3 normal;   // outward unit normal
  std::size_t sphere = 0;
};

struct Sphere {
  Vec3 center;
  double radius = 0.0;  // bohr
};

struct Cavity {
  std::vector<Tessera> tesserae;
  std::vector<Sphere> spheres;

  std::size_t size() const { return tesserae.size(); }
  double total_area() const;
  std::vector<Vec3> points() const;
};

struct CavityOptions {
  /// Element symbol -> radius in angstrom.
  std::map<std::string, double> radii;
  double scale = 1.2;
  /// Each icosahedron face is split into level^2 triangles (20 level^2 per sphere).
  int subdivision_level = 4;
  /// Sub-sampling factor used to estimate partial exposure (samples^2 per tessera).
  int exposure_samples = 4;
};

/// Bondi radii (H 1.20, He 1.40, O 1.52) plus Be 1.53, in angstrom.
std::map<std::string, double> default_radii();

/// Union of atom-centred spheres tessellated by subdivided icosahedra.
/// Tesserae whose samples are all buried in another sphere are dropped;
/// partially buried tesserae keep the exposed fraction of their area. The
/// representative point of every tessera is the area-weighted centroid of its
/// exposed samples, projected onto the sphere.
Cavity build_cavity(const molint::Molecule& molecule, const CavityOptions& options);

/// Cavity built from explicit spheres (Born-ion tests, custom cavities).
Cavity build_cavity(const std::vector<Sphere>& spheres, int subdivision_level, int exposure_samples = 4);

/// Rigid motion applied to every tessera and sphere.
Cavity transformed(const Cavity& cavity, const Mat3& rotation, const Vec3& shift);

/// CSV columns: index,x,y,z,area,nx,ny,nz (bohr).
void write_cavity_csv(const Cavity& cavity, const std::filesystem::path& path);
Cavity read_cavity_csv(const std::filesystem::path& path);

}  // namespace solvq::cavity

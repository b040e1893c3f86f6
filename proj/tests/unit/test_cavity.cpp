#include "solvq/cavity/pcm.hpp"
#include "test_support.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace solvq;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kPi = std::numbers::pi;

/// Point charge q at `at` inside the cavity: potential on every tessera.
Vec point_charge_potential(const cavity::Cavity& cav, const Vec3& at, double q = 1.0) {
  Vec v(static_cast<Eigen::Index>(cav.size()));
  for (std::size_t i = 0; i < cav.size(); ++i) v(static_cast<Eigen::Index>(i)) = q / (cav.tesserae[i].center - at).norm();
  return v;
}

struct BornResult {
  double energy;
  double charge_sum;
};

BornResult born(int level, double radius, double eps) {
  const auto cav = cavity::build_cavity({{Vec3::Zero(), radius}}, level);
  const auto resp = cavity::build_response(cav, eps);
  const Vec v = point_charge_potential(cav, Vec3::Zero());
  const Vec q = cavity::apparent_charges(resp, v);
  return {0.5 * q.dot(v), q.sum()};
}

}  // namespace

TEST_CASE("Single sphere mesh: counts, exact area, outward normals", "[cavity]") {
  for (int level = 1; level <= 5; ++level) {
    const auto cav = cavity::build_cavity({{Vec3(0.3, -0.1, 2.0), 1.7}}, level);
    CHECK(cav.size() == static_cast<std::size_t>(20 * level * level));
    CHECK_THAT(cav.total_area(), WithinRel(4.0 * kPi * 1.7 * 1.7, 1e-12));
    for (const auto& t : cav.tesserae) {
      CHECK_THAT((t.center - Vec3(0.3, -0.1, 2.0)).norm(), WithinAbs(1.7, 1e-12));
      CHECK_THAT(t.normal.norm(), WithinAbs(1.0, 1e-12));
      CHECK((t.center - Vec3(0.3, -0.1, 2.0)).normalized().dot(t.normal) > 1.0 - 1e-12);
    }
  }
}

TEST_CASE("Born ion: energy and Gauss law at every mesh level", "[cavity][born]") {
  const double r = 2.0;
  const double eps = 46.7;
  const double exact = -(1.0 - 1.0 / eps) / (2.0 * r);
  double previous = INFINITY;
  for (int level = 1; level <= 5; ++level) {
    const auto b = born(level, r, eps);
    const double err = std::abs(b.energy - exact) / std::abs(exact);
    INFO("level " << level << " relative error " << err);
    CHECK(err < (level == 1 ? 0.005 : 2e-4));
    CHECK_THAT(b.charge_sum, WithinRel(-(1.0 - 1.0 / eps), 0.003));
    if (level >= 2) CHECK(err <= previous);
    previous = err;
  }
  // Off-centre charge: the image energy rises but stays finite and negative.
  const auto cav = cavity::build_cavity({{Vec3::Zero(), r}}, 4);
  const auto resp = cavity::build_response(cav, eps);
  const Vec v = point_charge_potential(cav, Vec3(0.5, 0, 0));
  const Vec q = cavity::apparent_charges(resp, v);
  CHECK(0.5 * q.dot(v) < exact);
  CHECK_THAT(q.sum(), WithinRel(-(1.0 - 1.0 / eps), 0.003));
}

TEST_CASE("Response limits: vacuum, conductor and ordering in epsilon", "[cavity][property]") {
  const auto cav = cavity::build_cavity({{Vec3::Zero(), 2.0}}, 3);
  const Vec v = point_charge_potential(cav, Vec3(0.2, 0.1, -0.3));
  const auto vac = cavity::build_response(cav, 1.0);
  CHECK(vac.Q.cwiseAbs().maxCoeff() == 0.0);
  const auto cond = cavity::build_response(cav, INFINITY);
  CHECK_THAT(cavity::apparent_charges(cond, v).sum(), WithinRel(-1.0, 0.003));
  double last = 0.0;
  for (double eps : {1.5, 2.0, 4.8, 46.7, 78.4, 1e6}) {
    const double u = 0.5 * v.dot(cavity::build_response(cav, eps).Q * v);
    CHECK(u < last);
    last = u;
  }
  const double u_cond = 0.5 * v.dot(cond.Q * v);
  CHECK_THAT(last, WithinRel(u_cond, 1e-5));
  CHECK_THROWS_AS(cavity::build_response(cav, 0.5), InputError);
}

TEST_CASE("Symmetrized response is symmetric and close to the raw one", "[cavity]") {
  const auto mol = testing::molecule("h2o");
  const auto cav = cavity::build_cavity(mol, cavity::CavityOptions{cavity::default_radii()});
  const auto raw = cavity::build_response(cav, 46.7);
  const auto sym = cavity::build_response(cav, 46.7, true);
  CHECK((sym.Q - sym.Q.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((raw.Q - sym.Q).norm() / raw.Q.norm() < 0.05);
  CHECK(sym.symmetrized);
}

TEST_CASE("Molecular cavities: golden tessera counts and areas at level 4", "[cavity][golden]") {
  struct Golden {
    const char* name;
    std::size_t count;
    double area;
  };
  const Golden golden[] = {{"h3p", 572, 143.3465623353},
                           {"beh2", 628, 198.9654990806},
                           {"h2o", 554, 178.9090676923},
                           {"heh", 424, 139.8463723778}};
  for (const auto& g : golden) {
    INFO(g.name);
    const auto cav = cavity::build_cavity(testing::molecule(g.name), cavity::CavityOptions{cavity::default_radii()});
    CHECK(cav.size() == g.count);
    CHECK_THAT(cav.total_area(), WithinRel(g.area, 1e-9));
  }
}

TEST_CASE("Cavity is invariant under rigid motions", "[cavity][property]") {
  std::mt19937_64 rng(5);
  const auto mol = testing::molecule("h2o");
  const cavity::CavityOptions opts{cavity::default_radii()};
  const auto cav = cavity::build_cavity(mol, opts);
  const auto resp = cavity::build_response(cav, 46.7);
  const Vec v = point_charge_potential(cav, mol.atoms[0].position, 8.0);
  const double u0 = 0.5 * v.dot(resp.Q * v);
  for (int trial = 0; trial < 3; ++trial) {
    const Mat3 rot = testing::random_rotation(rng);
    const Vec3 shift(1.0, -2.0, 0.5 * trial);
    // Moving the finished mesh is exact.
    const auto moved = cavity::transformed(cav, rot, shift);
    const auto rm = cavity::build_response(moved, 46.7);
    const Vec vm = point_charge_potential(moved, rot * mol.atoms[0].position + shift, 8.0);
    CHECK_THAT(0.5 * vm.dot(rm.Q * vm), WithinRel(u0, 1e-10));
    // Rebuilding from the moved molecule uses a differently oriented
    // icosahedron, so agreement is at the discretization level.
    const auto rebuilt = cavity::build_cavity(molint::transformed(mol, rot, shift), opts);
    const auto rr = cavity::build_response(rebuilt, 46.7);
    const Vec vr = point_charge_potential(rebuilt, rot * mol.atoms[0].position + shift, 8.0);
    CHECK_THAT(0.5 * vr.dot(rr.Q * vr), WithinRel(u0, 2e-3));
    CHECK_THAT(rebuilt.total_area(), WithinRel(cav.total_area(), 2e-2));
  }
}

TEST_CASE("Duplicate and enclosed spheres do not add surface", "[cavity]") {
  const cavity::Sphere s{Vec3(0, 0, 0), 2.0};
  const auto single = cavity::build_cavity({s}, 3);
  const auto twice = cavity::build_cavity({s, s}, 3);
  CHECK(twice.size() == single.size());
  CHECK_THAT(twice.total_area(), WithinRel(single.total_area(), 1e-12));
  const auto enclosed = cavity::build_cavity({s, {Vec3(0.2, 0, 0), 0.5}}, 3);
  CHECK(enclosed.size() == single.size());
  // Two far-apart spheres: both complete.
  const auto apart = cavity::build_cavity({s, {Vec3(10, 0, 0), 1.0}}, 2);
  CHECK(apart.size() == 160u);
  CHECK_THAT(apart.total_area(), WithinRel(4 * kPi * 5.0, 1e-12));
  // Overlapping spheres: area between the larger sphere and the sum.
  const auto lens = cavity::build_cavity({s, {Vec3(2.5, 0, 0), 2.0}}, 4);
  const double cap = 2 * kPi * 2.0 * (2.0 - 1.25);  // each sphere loses a cap of height R - d/2
  CHECK_THAT(lens.total_area(), WithinRel(2 * (4 * kPi * 4.0) - 2 * cap, 0.01));
}

TEST_CASE("Calderon matrices reject coincident tesserae and bad options", "[cavity][input]") {
  cavity::Cavity cav;
  cav.tesserae.push_back({Vec3(1, 0, 0), 0.1, Vec3(1, 0, 0), 0});
  cav.tesserae.push_back({Vec3(1, 0, 0), 0.1, Vec3(1, 0, 0), 0});
  CHECK_THROWS_AS(cavity::calderon_matrices(cav), InputError);
  CHECK_THROWS_AS(cavity::build_cavity({{Vec3::Zero(), 1.0}}, 0), InputError);
  CHECK_THROWS_AS(cavity::build_cavity({{Vec3::Zero(), 1.0}}, 6), InputError);
  CHECK_THROWS_AS(cavity::build_cavity({{Vec3::Zero(), -1.0}}, 2), InputError);
  cavity::CavityOptions missing;
  CHECK_THROWS_AS(cavity::build_cavity(testing::molecule("h2o"), missing), InputError);
}

TEST_CASE("Cavity CSV round trip", "[cavity][io]") {
  const auto cav = cavity::build_cavity(testing::molecule("h3p"), cavity::CavityOptions{cavity::default_radii()});
  const auto path = std::filesystem::temp_directory_path() / "solvq_cavity_roundtrip.csv";
  cavity::write_cavity_csv(cav, path);
  const auto back = cavity::read_cavity_csv(path);
  REQUIRE(back.size() == cav.size());
  for (std::size_t i = 0; i < cav.size(); ++i) {
    CHECK(back.tesserae[i].center == cav.tesserae[i].center);
    CHECK(back.tesserae[i].area == cav.tesserae[i].area);
    CHECK(back.tesserae[i].normal == cav.tesserae[i].normal);
  }
  std::filesystem::remove(path);
}

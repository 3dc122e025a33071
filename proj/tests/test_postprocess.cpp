#include <cmath>
#include <sstream>

#include "convect/postprocess.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace convect;
using namespace convect::test;

namespace {

TwoLevelMesh cube(int divisions) {
  return build_two_level_mesh(AxisPartition::uniform(1.0, divisions),
                              AxisPartition::uniform(1.0, divisions),
                              AxisPartition::uniform(1.0, divisions));
}

std::vector<double> nodal(const TwoLevelMesh& m, double (*f)(const Vec3&)) {
  std::vector<double> v(m.fine_nodes.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(m.fine_nodes[i]);
  return v;
}

}  // namespace

TEST_CASE("wall flux: linear and quadratic profiles are differentiated exactly") {
  const auto mesh = cube(3);
  const auto linear = nodal(mesh, [](const Vec3& p) { return 1.0 - p.x; });
  auto w = wall_heat_flux(mesh, linear);
  for (double f : w.flux) CHECK(f == doctest::Approx(-1.0).epsilon(1e-13));
  const auto quadratic = nodal(mesh, [](const Vec3& p) { return (1.0 - p.x) * (1.0 - p.x); });
  w = wall_heat_flux(mesh, quadratic);
  for (double f : w.flux) CHECK(f == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("wall flux: graded benchmark spacing keeps linear exactness") {
  const AxisPartition graded{{0.0, 3.0 / 16.0, 13.0 / 16.0, 1.0}, {5, 12, 5}};
  const auto mesh = build_two_level_mesh(graded, AxisPartition::uniform(1.0, 2),
                                         AxisPartition::uniform(1.0, 2));
  const auto linear = nodal(mesh, [](const Vec3& p) { return 1.0 - p.x; });
  const auto w = wall_heat_flux(mesh, linear);
  for (double f : w.flux) CHECK(f == doctest::Approx(-1.0).epsilon(1e-13));
}

TEST_CASE("nusselt: conduction gives exactly one") {
  const auto mesh = cube(4);
  const auto theta = nodal(mesh, [](const Vec3& p) { return 1.0 - p.x; });
  const auto r = nusselt(mesh, theta);
  CHECK(r.nu_overall == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(r.nu_av_mid == doctest::Approx(1.0).epsilon(1e-13));
  for (double v : r.nu_av) CHECK(v == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("nusselt: exact for fields affine in all coordinates") {
  const auto mesh = cube(3);
  const auto theta = nodal(mesh, [](const Vec3& p) { return 0.3 - 0.7 * p.x + 0.2 * p.y - 0.1 * p.z; });
  const auto r = nusselt(mesh, theta);
  CHECK(r.nu_overall == doctest::Approx(0.7).epsilon(1e-13));
  for (double v : r.nu_av) CHECK(v == doctest::Approx(0.7).epsilon(1e-13));
}

TEST_CASE("nusselt: the emitted curve integrates back to the overall number") {
  const auto mesh = cube(3);
  const auto theta = nodal(mesh, [](const Vec3& p) {
    return (1.0 - p.x) * (0.8 + 0.3 * std::sin(3.0 * p.y) * std::cos(2.0 * p.z));
  });
  const auto r = nusselt(mesh, theta);
  double trapz = 0.0;
  for (std::size_t i = 0; i + 1 < r.z.size(); ++i)
    trapz += 0.5 * (r.z[i + 1] - r.z[i]) * (r.nu_av[i] + r.nu_av[i + 1]);
  CHECK(trapz == doctest::Approx(r.nu_overall).epsilon(1e-12));
}

TEST_CASE("uy_max profile: zero field, manufactured argmax, node locations") {
  const auto mesh = cube(3);
  std::vector<double> uy(mesh.fine_nodes.size(), 0.0);
  auto r = uy_max_profile(mesh, uy);
  CHECK_FALSE(r.midplane_fallback);
  for (double v : r.uy_max) CHECK(v == 0.0);

  // bump at a chosen lattice node on the mid-height plane
  const int iy_mid = mesh.nfy() / 2;
  const int ix = 1, iz = 2;
  uy[static_cast<std::size_t>(mesh.fine_id(ix, iy_mid, iz))] = 3.5;
  r = uy_max_profile(mesh, uy);
  CHECK(r.peak == 3.5);
  CHECK(r.peak_location.x == mesh.fine_lines[0][static_cast<std::size_t>(ix)]);
  CHECK(r.peak_location.y == 0.5);
  CHECK(r.peak_location.z == mesh.fine_lines[2][static_cast<std::size_t>(iz)]);
  CHECK(r.uy_max[static_cast<std::size_t>(iz)] == 3.5);
}

TEST_CASE("uy_max profile falls back with a warning off the mid-height lattice") {
  const AxisPartition odd{{0.0, 0.3, 1.0}, {1, 1}};
  const auto mesh = build_two_level_mesh(AxisPartition::uniform(1.0, 2), odd,
                                         AxisPartition::uniform(1.0, 2));
  const std::vector<double> uy(mesh.fine_nodes.size(), 0.0);
  const auto r = uy_max_profile(mesh, uy);
  CHECK(r.midplane_fallback);
}

TEST_CASE("symmetry permutations are involutions") {
  const auto mesh = cube(3);
  for (Level level : {Level::Fine, Level::Coarse}) {
    const auto mz = mirror_z_permutation(mesh, level);
    const auto ce = centro_permutation(mesh, level);
    for (std::size_t i = 0; i < mz.size(); ++i) {
      CHECK(mz[static_cast<std::size_t>(mz[i])] == static_cast<int>(i));
      CHECK(ce[static_cast<std::size_t>(ce[i])] == static_cast<int>(i));
    }
  }
}

TEST_CASE("symmetry defects: rest state and manufactured symmetric fields") {
  const auto mesh = cube(3);
  const std::vector<double> zero(mesh.fine_nodes.size(), 0.0);
  const std::vector<double> zero_c(mesh.coarse_nodes.size(), 0.0);

  // u = 0 everywhere: all velocity defects vanish identically
  auto theta = nodal(mesh, [](const Vec3& p) { return std::sin(3.14159 * p.z * (1.0 - p.z)); });
  auto d = symmetry_defects(mesh, {&zero, &zero, &zero}, theta, zero_c);
  CHECK(d.z_mirror_ux == 0.0);
  CHECK(d.z_mirror_uy == 0.0);
  CHECK(d.z_mirror_uz == 0.0);
  // the even-in-z manufactured field has no z-mirror defect
  CHECK(d.z_mirror_theta <= 1e-14);

  // theta = 1 - x is exactly centro-antisymmetric in the 1 - theta sense
  theta = nodal(mesh, [](const Vec3& p) { return 1.0 - p.x; });
  d = symmetry_defects(mesh, {&zero, &zero, &zero}, theta, zero_c);
  CHECK(d.centro_theta <= 1e-14);
}

TEST_CASE("symmetry defects reject an asymmetric lattice") {
  const AxisPartition odd{{0.0, 0.3, 1.0}, {1, 1}};
  const auto mesh = build_two_level_mesh(AxisPartition::uniform(1.0, 2),
                                         AxisPartition::uniform(1.0, 2), odd);
  const std::vector<double> zero(mesh.fine_nodes.size(), 0.0);
  const std::vector<double> zero_c(mesh.coarse_nodes.size(), 0.0);
  CHECK_THROWS(symmetry_defects(mesh, {&zero, &zero, &zero}, zero, zero_c));
}

TEST_CASE("csv writers emit the documented tables") {
  const auto mesh = cube(2);
  const auto theta = nodal(mesh, [](const Vec3& p) { return 1.0 - p.x; });
  const auto nu = nusselt(mesh, theta);
  std::ostringstream out;
  write_nu_av_csv(out, nu, 0xfeed);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line.substr(0, 13) == "# config_hash");
  std::getline(in, line);
  CHECK(line == "z,nu_av");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == mesh.nfz());
}

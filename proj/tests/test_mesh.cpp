#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "convect/mesh.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace convect;

namespace {

BrickMacro unit_brick() {
  BrickMacro b;
  b.corner = {0, 1, 2, 3, 4, 5, 6, 7};
  b.origin = {0.0, 0.0, 0.0};
  b.extent = {1.0, 1.0, 1.0};
  return b;
}

double brick_tet_volume(const BrickMacro& b, const Tetra& t) {
  // corner ids of a standalone brick are the labels themselves
  return signed_volume(b.corner_coord(t.nodes[0]), b.corner_coord(t.nodes[1]),
                       b.corner_coord(t.nodes[2]), b.corner_coord(t.nodes[3]));
}

std::set<std::array<int, 4>> vertex_sets(const std::array<Tetra, 6>& tets) {
  std::set<std::array<int, 4>> s;
  for (const Tetra& t : tets) {
    std::array<int, 4> n = t.nodes;
    std::sort(n.begin(), n.end());
    s.insert(n);
  }
  return s;
}

AxisPartition graded_small() { return {{0.0, 0.25, 1.0}, {1, 2}}; }

}  // namespace

TEST_CASE("split_brick: unit cube gives six positive tets of volume 1/6") {
  const auto tets = split_brick(unit_brick());
  std::set<int> shapes;
  for (const Tetra& t : tets) {
    CHECK(brick_tet_volume(unit_brick(), t) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    shapes.insert(t.shape);
  }
  CHECK(shapes == std::set<int>{1, 2, 3, 4, 5, 6});
}

TEST_CASE("split_brick: anisotropic brick keeps the V/6 identity") {
  BrickMacro b = unit_brick();
  b.extent = {2.0, 1.0, 0.5};
  for (const Tetra& t : split_brick(b))
    CHECK(brick_tet_volume(b, t) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("split_brick: both construction orders give the identical six-tet set") {
  const auto a = split_brick(unit_brick(), ConstructionOrder::TopVertexFirst);
  const auto b = split_brick(unit_brick(), ConstructionOrder::BottomEdgeFirst);
  CHECK(vertex_sets(a) == vertex_sets(b));
}

TEST_CASE("split_brick: degenerate brick is rejected") {
  BrickMacro b = unit_brick();
  b.extent.z = 0.0;
  CHECK_THROWS(split_brick(b));
}

TEST_CASE("split_brick: the two prism triples are mirror images through the brick center") {
  BrickMacro b = unit_brick();
  b.origin = {0.5, -1.0, 2.0};
  b.extent = {2.0, 1.0, 0.5};
  const auto tets = split_brick(b);
  const Vec3 center = b.origin + b.extent * 0.5;
  // image of each corner label under the inversion p -> 2 center - p
  auto image_label = [&](int label) {
    const Vec3 q = center * 2.0 - b.corner_coord(label);
    for (int l = 0; l < 8; ++l) {
      const Vec3 c = b.corner_coord(l);
      if (norm(c - q) < 1e-12) return l;
    }
    FAIL("inversion image is not a brick corner");
    return -1;
  };
  // prism membership: the diagonal plane splits corners {A,D} from {F,G};
  // classify each tet by which exclusive corner it touches.
  const auto sets = vertex_sets(tets);
  int matched = 0;
  for (const Tetra& t : tets) {
    std::array<int, 4> img;
    for (int i = 0; i < 4; ++i) img[static_cast<std::size_t>(i)] = image_label(t.nodes[static_cast<std::size_t>(i)]);
    std::sort(img.begin(), img.end());
    CHECK(sets.count(img) == 1);  // the mirrored vertex set is again one of the six
    ++matched;
  }
  CHECK(matched == 6);
  // and the inversion maps prism-1 tets (touching A or D) onto prism-2 tets
  for (const Tetra& t : tets) {
    const bool prism1 = std::count(t.nodes.begin(), t.nodes.end(), 0) ||
                        std::count(t.nodes.begin(), t.nodes.end(), 3);
    std::array<int, 4> img;
    for (int i = 0; i < 4; ++i) img[static_cast<std::size_t>(i)] = image_label(t.nodes[static_cast<std::size_t>(i)]);
    const bool img_prism1 = std::count(img.begin(), img.end(), 0) ||
                            std::count(img.begin(), img.end(), 3);
    CHECK(prism1 != img_prism1);
  }
}

TEST_CASE("counts: one brick and the 2x2x2 brick box") {
  const auto one = build_two_level_mesh(AxisPartition::uniform(1.0, 1),
                                        AxisPartition::uniform(1.0, 1),
                                        AxisPartition::uniform(1.0, 1));
  CHECK(one.coarse_node_count() == 8);
  CHECK(one.fine_node_count() == 27);
  CHECK(one.coarse_tets.size() == 6);
  CHECK(one.fine_tets.size() == 48);

  const auto box = build_two_level_mesh(AxisPartition::uniform(1.0, 2),
                                        AxisPartition::uniform(1.0, 2),
                                        AxisPartition::uniform(1.0, 2));
  CHECK(box.coarse_node_count() == 27);
  CHECK(box.fine_node_count() == 125);
  CHECK(box.coarse_tets.size() == 48);
  CHECK(box.fine_tets.size() == 384);
}

TEST_CASE("refinement: eight children partition each parent at V/8") {
  const auto mesh = build_two_level_mesh(graded_small(), AxisPartition::uniform(2.0, 2),
                                         AxisPartition::uniform(0.5, 1));
  for (std::size_t ct = 0; ct < mesh.coarse_tets.size(); ++ct) {
    const Tetra& parent = mesh.coarse_tets[ct];
    const Vec3 p0 = mesh.coarse_nodes[static_cast<std::size_t>(parent.nodes[0])];
    const Vec3 p1 = mesh.coarse_nodes[static_cast<std::size_t>(parent.nodes[1])];
    const Vec3 p2 = mesh.coarse_nodes[static_cast<std::size_t>(parent.nodes[2])];
    const Vec3 p3 = mesh.coarse_nodes[static_cast<std::size_t>(parent.nodes[3])];
    const double pv = signed_volume(p0, p1, p2, p3);
    double sum = 0.0;
    for (int c : mesh.children[ct]) {
      const Tetra& child = mesh.fine_tets[static_cast<std::size_t>(c)];
      CHECK(child.parent == static_cast<int>(ct));
      CHECK(child.shape == parent.shape);
      const double cv = signed_volume(mesh.fine_nodes[static_cast<std::size_t>(child.nodes[0])],
                                      mesh.fine_nodes[static_cast<std::size_t>(child.nodes[1])],
                                      mesh.fine_nodes[static_cast<std::size_t>(child.nodes[2])],
                                      mesh.fine_nodes[static_cast<std::size_t>(child.nodes[3])]);
      CHECK(cv == doctest::Approx(pv / 8.0).epsilon(1e-12));
      sum += cv;
    }
    CHECK(sum == doctest::Approx(pv).epsilon(1e-12));

    // the children's closed union contains the parent's centroid and vertices
    auto contained = [&](const Vec3& x) {
      for (int c : mesh.children[ct]) {
        const Tetra& child = mesh.fine_tets[static_cast<std::size_t>(c)];
        const Vec3& q0 = mesh.fine_nodes[static_cast<std::size_t>(child.nodes[0])];
        const Vec3& q1 = mesh.fine_nodes[static_cast<std::size_t>(child.nodes[1])];
        const Vec3& q2 = mesh.fine_nodes[static_cast<std::size_t>(child.nodes[2])];
        const Vec3& q3 = mesh.fine_nodes[static_cast<std::size_t>(child.nodes[3])];
        const double v = signed_volume(q0, q1, q2, q3);
        const double l1 = signed_volume(q0, x, q2, q3) / v;
        const double l2 = signed_volume(q0, q1, x, q3) / v;
        const double l3 = signed_volume(q0, q1, q2, x) / v;
        const double l0 = 1.0 - l1 - l2 - l3;
        if (l0 >= -1e-10 && l1 >= -1e-10 && l2 >= -1e-10 && l3 >= -1e-10) return true;
      }
      return false;
    };
    CHECK(contained((p0 + p1 + p2 + p3) * 0.25));
    CHECK(contained(p0));
    CHECK(contained(p1));
    CHECK(contained(p2));
    CHECK(contained(p3));
  }
}

TEST_CASE("global volume matches the box for a graded anisotropic mesh") {
  const auto mesh = build_two_level_mesh(graded_small(), AxisPartition::uniform(2.0, 3),
                                         AxisPartition::uniform(0.5, 2));
  double total = 0.0;
  for (const Tetra& t : mesh.fine_tets)
    total += signed_volume(mesh.fine_nodes[static_cast<std::size_t>(t.nodes[0])],
                           mesh.fine_nodes[static_cast<std::size_t>(t.nodes[1])],
                           mesh.fine_nodes[static_cast<std::size_t>(t.nodes[2])],
                           mesh.fine_nodes[static_cast<std::size_t>(t.nodes[3])]);
  CHECK(total == doctest::Approx(1.0 * 2.0 * 0.5).epsilon(1e-12));
}

TEST_CASE("shape census: each generic shape appears eight times per brick") {
  const auto mesh = build_two_level_mesh(AxisPartition::uniform(1.0, 2),
                                         AxisPartition::uniform(1.0, 2),
                                         AxisPartition::uniform(1.0, 2));
  for (std::size_t brick = 0; brick < mesh.bricks.size(); ++brick) {
    std::map<int, int> census;
    for (std::size_t ct = brick * 6; ct < brick * 6 + 6; ++ct)
      for (int child : mesh.children[ct])
        census[mesh.fine_tets[static_cast<std::size_t>(child)].shape] += 1;
    REQUIRE(census.size() == 6);
    for (const auto& [shape, count] : census) {
      CHECK(shape >= 1);
      CHECK(shape <= 6);
      CHECK(count == 8);
    }
  }
}

TEST_CASE("refined mesh equals the directly built half-resolution mesh") {
  const AxisPartition px = graded_small();
  const AxisPartition py = AxisPartition::uniform(1.0, 2);
  const AxisPartition pz{{0.0, 0.5, 1.0}, {2, 1}};
  const auto mesh = build_two_level_mesh(px, py, pz);

  auto doubled = [](AxisPartition p) {
    for (int& d : p.divisions) d *= 2;
    return p;
  };
  const auto direct = build_two_level_mesh(doubled(px), doubled(py), doubled(pz));

  REQUIRE(direct.coarse_node_count() == mesh.fine_node_count());
  // same lattice dimensions, so ids are comparable index triples
  std::set<std::array<int, 4>> refined, built;
  for (const Tetra& t : mesh.fine_tets) {
    std::array<int, 4> n = t.nodes;
    std::sort(n.begin(), n.end());
    refined.insert(n);
  }
  for (const Tetra& t : direct.coarse_tets) {
    std::array<int, 4> n = t.nodes;
    std::sort(n.begin(), n.end());
    built.insert(n);
  }
  CHECK(refined == built);
}

TEST_CASE("boundary classification: isothermal walls win corners") {
  const auto mesh = build_two_level_mesh(AxisPartition::uniform(1.0, 1),
                                         AxisPartition::uniform(1.0, 1),
                                         AxisPartition::uniform(1.0, 1));
  CHECK(mesh.fine_tag[static_cast<std::size_t>(mesh.fine_id(0, 1, 1))] == BoundaryTag::Left);
  CHECK(mesh.fine_tag[static_cast<std::size_t>(mesh.fine_id(2, 2, 2))] == BoundaryTag::Right);
  CHECK(mesh.fine_tag[static_cast<std::size_t>(mesh.fine_id(0, 0, 0))] == BoundaryTag::Left);
  CHECK(mesh.fine_tag[static_cast<std::size_t>(mesh.fine_id(1, 1, 1))] == BoundaryTag::Interior);
  CHECK(mesh.fine_tag[static_cast<std::size_t>(mesh.fine_id(1, 0, 1))] == BoundaryTag::Other);
  CHECK(mesh.coarse_tag[static_cast<std::size_t>(mesh.coarse_id(0, 0, 0))] == BoundaryTag::Left);
  CHECK(mesh.coarse_tag[static_cast<std::size_t>(mesh.coarse_id(1, 1, 1))] == BoundaryTag::Right);
}

TEST_CASE("validate_mesh: clean meshes report no violations") {
  const auto mesh = build_two_level_mesh(AxisPartition::uniform(1.0, 3),
                                         AxisPartition::uniform(1.0, 3),
                                         AxisPartition::uniform(1.0, 3));
  const MeshValidation r = validate_mesh(mesh);
  CHECK(r.ok());
  CHECK(r.total_volume == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("validate_mesh: a perturbed tet vertex breaks conformity") {
  auto mesh = build_two_level_mesh(AxisPartition::uniform(1.0, 1),
                                   AxisPartition::uniform(1.0, 1),
                                   AxisPartition::uniform(1.0, 1));
  // re-point one vertex of one fine tet at a node off the shared face
  Tetra& t = mesh.fine_tets[0];
  const int victim = t.nodes[0];
  t.nodes[0] = (victim + 5) % mesh.fine_node_count();
  const MeshValidation r = validate_mesh(mesh);
  CHECK_FALSE(r.ok());
}

TEST_CASE("validate_mesh: empty mesh reports 'no elements'") {
  TwoLevelMesh empty;
  const MeshValidation r = validate_mesh(empty);
  REQUIRE(r.violations.size() >= 1);
  CHECK(r.violations.front() == "no elements");
}

TEST_CASE("mesh export carries the documented tables") {
  const auto mesh = build_two_level_mesh(AxisPartition::uniform(1.0, 1),
                                         AxisPartition::uniform(1.0, 1),
                                         AxisPartition::uniform(1.0, 1));
  std::ostringstream out;
  export_mesh(out, mesh, 0x1234abcdu);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "# convect mesh 1");
  std::getline(in, line);
  CHECK(line.substr(0, 13) == "# config_hash");
  std::getline(in, line);
  CHECK(line == "counts 27 8 6 48");
  std::getline(in, line);
  CHECK(line == "nodes");
  int nodes = 0, coarse = 0, tets = 0, section = 0;
  while (std::getline(in, line)) {
    if (line == "coarse_nodes") { section = 1; continue; }
    if (line == "tets") { section = 2; continue; }
    if (section == 0) ++nodes;
    if (section == 1) ++coarse;
    if (section == 2) ++tets;
  }
  CHECK(nodes == 27);
  CHECK(coarse == 8);
  CHECK(tets == 54);
}

TEST_CASE("snapshot export: node rows carry ux uy uz [p] theta") {
  const auto mesh = build_two_level_mesh(AxisPartition::uniform(1.0, 1),
                                         AxisPartition::uniform(1.0, 1),
                                         AxisPartition::uniform(1.0, 1));
  const std::size_t nf = mesh.fine_nodes.size();
  std::vector<double> ux(nf, 1.0), uy(nf, 2.0), uz(nf, 3.0), theta(nf, 4.0);
  std::vector<double> p(mesh.coarse_nodes.size(), 5.0);
  SnapshotFields f;
  f.ux = &ux;
  f.uy = &uy;
  f.uz = &uz;
  f.theta = &theta;
  f.p = &p;
  std::ostringstream out;
  export_mesh(out, mesh, 0u, &f);

  std::vector<char> is_coarse(nf, 0);
  for (int c : mesh.coarse_to_fine) is_coarse[static_cast<std::size_t>(c)] = 1;

  std::istringstream in(out.str());
  std::string line;
  while (std::getline(in, line) && line != "nodes") {
  }
  for (std::size_t i = 0; i < nf; ++i) {
    REQUIRE(std::getline(in, line));
    std::istringstream row(line);
    std::vector<std::string> cols;
    std::string tok;
    while (row >> tok) cols.push_back(tok);
    // id x y z tag + ux uy uz [p] theta
    REQUIRE(cols.size() == (is_coarse[i] ? 10u : 9u));
    CHECK(cols[5] == "1");
    CHECK(cols.back() == "4");  // theta is always the last column
    if (is_coarse[i]) CHECK(cols[8] == "5");
  }
}

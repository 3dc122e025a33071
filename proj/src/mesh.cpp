#include "convect/mesh.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <unordered_map>

namespace convect {

namespace {

// Corner labels A..H as indices 0..7.
enum : int { A = 0, B = 1, C = 2, D = 3, E = 4, F = 5, G = 6, H = 7 };

// Inversion through the brick center: A<->G, B<->H, C<->E, D<->F. This is the
// improper isometry that carries one prism's three tetrahedra onto the other's.
constexpr int kInvert[8] = {G, H, E, F, C, D, A, B};

// Shape ids of a label quad and its inversion image pair up as I<->VI, II<->V,
// III<->IV.
constexpr int kInvertShape[7] = {0, 6, 5, 4, 3, 2, 1};

struct LabelTet {
  std::array<int, 4> labels;
  int shape;  // 1..6
};

// Prism H,E,B,C,D,A sub-divided through {DE, DB, HB} (top vertex-to-bottom
// edge construction); shapes per the generic-element figure.
constexpr LabelTet kPrism1Tets[3] = {
    {{B, C, H, D}, 1},  // I
    {{A, B, E, D}, 2},  // II
    {{E, B, H, D}, 3},  // III
};

// Prism H,E,F,B,C,G sub-divided through {FH, FC, HB} (bottom edge-to-top
// vertex construction).
constexpr LabelTet kPrism2Tets[3] = {
    {{C, H, B, F}, 4},  // IV
    {{G, H, C, F}, 5},  // V
    {{H, E, B, F}, 6},  // VI
};

LabelTet invert(const LabelTet& t) {
  return {{kInvert[t.labels[0]], kInvert[t.labels[1]], kInvert[t.labels[2]], kInvert[t.labels[3]]},
          kInvertShape[t.shape]};
}

}  // namespace

std::array<Tetra, 6> split_brick(const BrickMacro& brick, ConstructionOrder order) {
  require(brick.extent.x > 0.0 && brick.extent.y > 0.0 && brick.extent.z > 0.0,
          "degenerate brick: all extents must be positive");

  LabelTet tets[6];
  if (order == ConstructionOrder::TopVertexFirst) {
    for (int i = 0; i < 3; ++i) {
      tets[i] = kPrism1Tets[i];
      tets[3 + i] = invert(kPrism1Tets[i]);
    }
  } else {
    for (int i = 0; i < 3; ++i) {
      tets[i] = kPrism2Tets[i];
      tets[3 + i] = invert(kPrism2Tets[i]);
    }
  }

  std::array<Tetra, 6> out;
  for (const LabelTet& lt : tets) {
    std::array<int, 4> lab = lt.labels;
    std::sort(lab.begin(), lab.end());
    double vol = signed_volume(brick.corner_coord(lab[0]), brick.corner_coord(lab[1]),
                               brick.corner_coord(lab[2]), brick.corner_coord(lab[3]));
    if (vol < 0.0) std::swap(lab[2], lab[3]);
    Tetra t;
    t.nodes = {brick.corner[lab[0]], brick.corner[lab[1]], brick.corner[lab[2]],
               brick.corner[lab[3]]};
    t.level = Level::Coarse;
    t.shape = static_cast<std::int8_t>(lt.shape);
    t.parent = -1;
    out[static_cast<std::size_t>(lt.shape - 1)] = t;
  }
  return out;
}

void classify_boundary(TwoLevelMesh& mesh, double rel_tol) {
  const auto asp = mesh.aspect();
  auto classify = [&](const Vec3& p) {
    const double tx = rel_tol * asp[0];
    const double ty = rel_tol * asp[1];
    const double tz = rel_tol * asp[2];
    if (std::abs(p.x) <= tx) return BoundaryTag::Left;
    if (std::abs(p.x - asp[0]) <= tx) return BoundaryTag::Right;
    const bool wall = std::abs(p.y) <= ty || std::abs(p.y - asp[1]) <= ty ||
                      std::abs(p.z) <= tz || std::abs(p.z - asp[2]) <= tz;
    return wall ? BoundaryTag::Other : BoundaryTag::Interior;
  };
  mesh.fine_tag.resize(mesh.fine_nodes.size());
  for (std::size_t i = 0; i < mesh.fine_nodes.size(); ++i)
    mesh.fine_tag[i] = classify(mesh.fine_nodes[i]);
  mesh.coarse_tag.resize(mesh.coarse_nodes.size());
  for (std::size_t i = 0; i < mesh.coarse_nodes.size(); ++i)
    mesh.coarse_tag[i] = classify(mesh.coarse_nodes[i]);
}

namespace {

// The seven lattice edge directions of the tetrahedralization, as fine-index
// deltas: axes, one face diagonal per face orientation, and the HB-type body
// diagonal. The interior diagonal of a refined tet must be one of these (up to
// sign) for the fine mesh to reproduce the structured stencil.
constexpr int kStencil[7][3] = {
    {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, -1}, {0, 1, -1}, {1, -1, 0}, {1, -1, -1},
};

bool is_stencil_direction(const std::array<int, 3>& d) {
  for (const auto& s : kStencil) {
    if ((d[0] == s[0] && d[1] == s[1] && d[2] == s[2]) ||
        (d[0] == -s[0] && d[1] == -s[1] && d[2] == -s[2]))
      return true;
  }
  return false;
}

}  // namespace

TwoLevelMesh build_two_level_mesh(const AxisPartition& px, const AxisPartition& py,
                                  const AxisPartition& pz, ConstructionOrder order) {
  TwoLevelMesh m;
  m.coarse_lines = {build_axis_partition(px), build_axis_partition(py), build_axis_partition(pz)};
  for (int a = 0; a < 3; ++a) m.fine_lines[a] = refine_gridlines(m.coarse_lines[a]);

  const int nfx = m.nfx(), nfy = m.nfy(), nfz = m.nfz();
  const int ncx = m.ncx(), ncy = m.ncy(), ncz = m.ncz();

  m.fine_nodes.resize(static_cast<std::size_t>(nfx) * nfy * nfz);
  for (int iz = 0; iz < nfz; ++iz)
    for (int iy = 0; iy < nfy; ++iy)
      for (int ix = 0; ix < nfx; ++ix)
        m.fine_nodes[static_cast<std::size_t>(m.fine_id(ix, iy, iz))] = {
            m.fine_lines[0][ix], m.fine_lines[1][iy], m.fine_lines[2][iz]};

  m.coarse_nodes.resize(static_cast<std::size_t>(ncx) * ncy * ncz);
  m.coarse_to_fine.resize(m.coarse_nodes.size());
  for (int iz = 0; iz < ncz; ++iz)
    for (int iy = 0; iy < ncy; ++iy)
      for (int ix = 0; ix < ncx; ++ix) {
        const int c = m.coarse_id(ix, iy, iz);
        const int f = m.fine_id(2 * ix, 2 * iy, 2 * iz);
        m.coarse_nodes[static_cast<std::size_t>(c)] = m.fine_nodes[static_cast<std::size_t>(f)];
        m.coarse_to_fine[static_cast<std::size_t>(c)] = f;
      }

  classify_boundary(m);

  // Bricks and the six coarse tets of each.
  m.bricks.reserve(static_cast<std::size_t>(ncx - 1) * (ncy - 1) * (ncz - 1));
  m.coarse_tets.reserve(m.bricks.capacity() * 6);
  for (int k = 0; k + 1 < ncz; ++k)
    for (int j = 0; j + 1 < ncy; ++j)
      for (int i = 0; i + 1 < ncx; ++i) {
        BrickMacro b;
        b.corner = {m.coarse_id(i, j, k),         m.coarse_id(i + 1, j, k),
                    m.coarse_id(i + 1, j + 1, k), m.coarse_id(i, j + 1, k),
                    m.coarse_id(i, j, k + 1),     m.coarse_id(i + 1, j, k + 1),
                    m.coarse_id(i + 1, j + 1, k + 1), m.coarse_id(i, j + 1, k + 1)};
        b.origin = {m.coarse_lines[0][i], m.coarse_lines[1][j], m.coarse_lines[2][k]};
        b.extent = {m.coarse_lines[0][i + 1] - m.coarse_lines[0][i],
                    m.coarse_lines[1][j + 1] - m.coarse_lines[1][j],
                    m.coarse_lines[2][k + 1] - m.coarse_lines[2][k]};
        m.bricks.push_back(b);
        for (const Tetra& t : split_brick(b, order)) m.coarse_tets.push_back(t);
      }

  // Midpoint refinement: each coarse tet yields 4 corner children plus the 4
  // tets of its interior octahedron, split along the unique diagonal whose
  // fine-index direction belongs to the lattice stencil.
  m.fine_tets.reserve(m.coarse_tets.size() * 8);
  m.children.resize(m.coarse_tets.size());
  for (std::size_t ct = 0; ct < m.coarse_tets.size(); ++ct) {
    const Tetra& parent = m.coarse_tets[ct];
    std::array<std::array<int, 3>, 4> vidx;  // parent vertices on the fine lattice
    std::array<int, 4> vid;
    for (int v = 0; v < 4; ++v) {
      const auto ci = m.coarse_index(parent.nodes[static_cast<std::size_t>(v)]);
      vidx[static_cast<std::size_t>(v)] = {2 * ci[0], 2 * ci[1], 2 * ci[2]};
      vid[static_cast<std::size_t>(v)] =
          m.fine_id(2 * ci[0], 2 * ci[1], 2 * ci[2]);
    }
    // Edge midpoints, indexed by the vertex pair (a, b), a < b.
    auto mid_index = [&](int a, int b) {
      const auto& p = vidx[static_cast<std::size_t>(a)];
      const auto& q = vidx[static_cast<std::size_t>(b)];
      return std::array<int, 3>{(p[0] + q[0]) / 2, (p[1] + q[1]) / 2, (p[2] + q[2]) / 2};
    };
    auto mid_id = [&](int a, int b) {
      const auto mi = mid_index(a, b);
      return m.fine_id(mi[0], mi[1], mi[2]);
    };

    auto push_child = [&](std::array<int, 4> nodes, int slot) {
      std::sort(nodes.begin(), nodes.end());
      const double vol = signed_volume(m.fine_nodes[static_cast<std::size_t>(nodes[0])],
                                       m.fine_nodes[static_cast<std::size_t>(nodes[1])],
                                       m.fine_nodes[static_cast<std::size_t>(nodes[2])],
                                       m.fine_nodes[static_cast<std::size_t>(nodes[3])]);
      if (vol < 0.0) std::swap(nodes[2], nodes[3]);
      Tetra t;
      t.nodes = nodes;
      t.level = Level::Fine;
      t.shape = parent.shape;
      t.parent = static_cast<int>(ct);
      m.children[ct][static_cast<std::size_t>(slot)] = static_cast<int>(m.fine_tets.size());
      m.fine_tets.push_back(t);
    };

    // Corner children.
    push_child({vid[0], mid_id(0, 1), mid_id(0, 2), mid_id(0, 3)}, 0);
    push_child({vid[1], mid_id(0, 1), mid_id(1, 2), mid_id(1, 3)}, 1);
    push_child({vid[2], mid_id(0, 2), mid_id(1, 2), mid_id(2, 3)}, 2);
    push_child({vid[3], mid_id(0, 3), mid_id(1, 3), mid_id(2, 3)}, 3);

    // The three opposite-edge pairings of the octahedron diagonal.
    static constexpr int kPairing[3][2][2] = {
        {{0, 1}, {2, 3}}, {{0, 2}, {1, 3}}, {{0, 3}, {1, 2}}};
    int chosen = -1;
    for (int pcand = 0; pcand < 3; ++pcand) {
      const auto m1 = mid_index(kPairing[pcand][0][0], kPairing[pcand][0][1]);
      const auto m2 = mid_index(kPairing[pcand][1][0], kPairing[pcand][1][1]);
      const std::array<int, 3> d = {m2[0] - m1[0], m2[1] - m1[1], m2[2] - m1[2]};
      if (is_stencil_direction(d)) {
        require(chosen < 0, "refine_to_fine: ambiguous interior diagonal");
        chosen = pcand;
      }
    }
    require(chosen >= 0, "refine_to_fine: no lattice-aligned interior diagonal");

    const int d0 = mid_id(kPairing[chosen][0][0], kPairing[chosen][0][1]);
    const int d1 = mid_id(kPairing[chosen][1][0], kPairing[chosen][1][1]);
    // Remaining four midpoints form the equatorial quad; consecutive quad
    // vertices share exactly one parent vertex.
    std::array<std::array<int, 2>, 4> quad;
    int nq = 0;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) {
        const bool is_diag = (a == kPairing[chosen][0][0] && b == kPairing[chosen][0][1]) ||
                             (a == kPairing[chosen][1][0] && b == kPairing[chosen][1][1]);
        if (!is_diag) quad[static_cast<std::size_t>(nq++)] = {a, b};
      }
    auto shares_vertex = [](const std::array<int, 2>& e1, const std::array<int, 2>& e2) {
      return e1[0] == e2[0] || e1[0] == e2[1] || e1[1] == e2[0] || e1[1] == e2[1];
    };
    if (!shares_vertex(quad[0], quad[1])) std::swap(quad[1], quad[2]);
    if (!shares_vertex(quad[1], quad[2])) std::swap(quad[2], quad[3]);

    for (int e = 0; e < 4; ++e) {
      const auto& qa = quad[static_cast<std::size_t>(e)];
      const auto& qb = quad[static_cast<std::size_t>((e + 1) % 4)];
      push_child({d0, d1, mid_id(qa[0], qa[1]), mid_id(qb[0], qb[1])}, 4 + e);
    }
  }

  return m;
}

double TwoLevelMesh::h_min_fine() const {
  double h = fine_lines[0][1] - fine_lines[0][0];
  for (int a = 0; a < 3; ++a)
    for (std::size_t i = 0; i + 1 < fine_lines[a].size(); ++i)
      h = std::min(h, fine_lines[a][i + 1] - fine_lines[a][i]);
  return h;
}

namespace {

std::uint64_t face_key(int a, int b, int c) {
  int v[3] = {a, b, c};
  std::sort(v, v + 3);
  return (static_cast<std::uint64_t>(v[0]) << 42) | (static_cast<std::uint64_t>(v[1]) << 21) |
         static_cast<std::uint64_t>(v[2]);
}

std::uint64_t tet_key(std::array<int, 4> n) {
  std::sort(n.begin(), n.end());
  std::uint64_t h = 1469598103934665603ull;
  for (int v : n) {
    h ^= static_cast<std::uint64_t>(v);
    h *= 1099511628211ull;
  }
  return h;
}

constexpr int kFaces[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};

}  // namespace

MeshValidation validate_mesh(const TwoLevelMesh& mesh) {
  MeshValidation r;
  if (mesh.fine_tets.empty() || mesh.coarse_tets.empty()) {
    r.violations.push_back("no elements");
    return r;
  }
  r.box_volume = mesh.volume();
  require(mesh.fine_node_count() < (1 << 21), "validate_mesh: node ids exceed face-key budget");

  auto tet_volume = [&](const Tetra& t, const std::vector<Vec3>& nodes) {
    return signed_volume(nodes[static_cast<std::size_t>(t.nodes[0])],
                         nodes[static_cast<std::size_t>(t.nodes[1])],
                         nodes[static_cast<std::size_t>(t.nodes[2])],
                         nodes[static_cast<std::size_t>(t.nodes[3])]);
  };

  // Volumes of the fine partition; compensated summation keeps the total
  // meaningful against the 1e-12 relative bound on large meshes.
  double total = 0.0, comp = 0.0;
  r.min_tet_volume = r.max_tet_volume = tet_volume(mesh.fine_tets[0], mesh.fine_nodes);
  for (std::size_t i = 0; i < mesh.fine_tets.size(); ++i) {
    const double v = tet_volume(mesh.fine_tets[i], mesh.fine_nodes);
    if (v <= 0.0)
      r.violations.push_back("fine tet " + std::to_string(i) + " has non-positive volume");
    const double y = v - comp;
    const double t = total + y;
    comp = (t - total) - y;
    total = t;
    r.min_tet_volume = std::min(r.min_tet_volume, v);
    r.max_tet_volume = std::max(r.max_tet_volume, v);
  }
  r.total_volume = total;
  if (std::abs(total - r.box_volume) > 1e-12 * r.box_volume)
    r.violations.push_back("fine mesh volume does not match box volume");

  // Six equal-volume tets per brick; builder emits them brick-by-brick.
  if (mesh.coarse_tets.size() != mesh.bricks.size() * 6) {
    r.violations.push_back("coarse tet count is not 6 per brick");
  } else {
    for (std::size_t b = 0; b < mesh.bricks.size(); ++b) {
      const double expect = mesh.bricks[b].volume() / 6.0;
      for (int t = 0; t < 6; ++t) {
        const double v = tet_volume(mesh.coarse_tets[b * 6 + static_cast<std::size_t>(t)],
                                    mesh.coarse_nodes);
        if (std::abs(v - expect) > 1e-14 * expect)
          r.violations.push_back("brick " + std::to_string(b) + " tet volume != V/6");
      }
    }
  }

  // Eight children partitioning each parent.
  if (mesh.children.size() != mesh.coarse_tets.size()) {
    r.violations.push_back("parent/children map size mismatch");
  } else {
    for (std::size_t ct = 0; ct < mesh.coarse_tets.size(); ++ct) {
      const double pv = tet_volume(mesh.coarse_tets[ct], mesh.coarse_nodes);
      double sum = 0.0;
      for (int c : mesh.children[ct]) {
        const Tetra& child = mesh.fine_tets[static_cast<std::size_t>(c)];
        if (child.parent != static_cast<int>(ct))
          r.violations.push_back("child of coarse tet " + std::to_string(ct) +
                                 " has wrong parent id");
        if (child.shape != mesh.coarse_tets[ct].shape)
          r.violations.push_back("child of coarse tet " + std::to_string(ct) +
                                 " has wrong shape id");
        sum += tet_volume(child, mesh.fine_nodes);
      }
      if (std::abs(sum - pv) > 1e-12 * pv)
        r.violations.push_back("children of coarse tet " + std::to_string(ct) +
                               " do not partition it");
    }
  }

  // Face conformity and duplicates, per level.
  auto check_faces = [&](const std::vector<Tetra>& tets, const std::vector<Vec3>& nodes,
                         const char* lvl) {
    std::unordered_map<std::uint64_t, int> faces;
    std::unordered_map<std::uint64_t, int> dup;
    faces.reserve(tets.size() * 4);
    for (const Tetra& t : tets) {
      for (const auto& f : kFaces)
        ++faces[face_key(t.nodes[static_cast<std::size_t>(f[0])],
                         t.nodes[static_cast<std::size_t>(f[1])],
                         t.nodes[static_cast<std::size_t>(f[2])])];
      if (++dup[tet_key(t.nodes)] > 1)
        r.violations.push_back(std::string(lvl) + " mesh contains a duplicate tet");
    }
    const auto asp = mesh.aspect();
    auto on_common_wall = [&](const Vec3& p0, const Vec3& p1, const Vec3& p2) {
      const double wall[3][2] = {{0.0, asp[0]}, {0.0, asp[1]}, {0.0, asp[2]}};
      const double co[3][3] = {{p0.x, p1.x, p2.x}, {p0.y, p1.y, p2.y}, {p0.z, p1.z, p2.z}};
      for (int a = 0; a < 3; ++a)
        for (int s = 0; s < 2; ++s) {
          const double tol = 1e-12 * asp[a];
          if (std::abs(co[a][0] - wall[a][s]) <= tol && std::abs(co[a][1] - wall[a][s]) <= tol &&
              std::abs(co[a][2] - wall[a][s]) <= tol)
            return true;
        }
      return false;
    };
    std::size_t bad = 0;
    for (const Tetra& t : tets) {
      for (const auto& f : kFaces) {
        const int n0 = t.nodes[static_cast<std::size_t>(f[0])];
        const int n1 = t.nodes[static_cast<std::size_t>(f[1])];
        const int n2 = t.nodes[static_cast<std::size_t>(f[2])];
        const int count = faces[face_key(n0, n1, n2)];
        if (count > 2) {
          ++bad;
        } else if (count == 1 && !on_common_wall(nodes[static_cast<std::size_t>(n0)],
                                                 nodes[static_cast<std::size_t>(n1)],
                                                 nodes[static_cast<std::size_t>(n2)])) {
          ++bad;
        }
      }
    }
    if (bad > 0)
      r.violations.push_back(std::string(lvl) + " mesh has " + std::to_string(bad) +
                             " non-conforming faces");
  };
  check_faces(mesh.fine_tets, mesh.fine_nodes, "fine");
  check_faces(mesh.coarse_tets, mesh.coarse_nodes, "coarse");

  // Orphan nodes.
  std::vector<char> used(mesh.fine_nodes.size(), 0);
  for (const Tetra& t : mesh.fine_tets)
    for (int n : t.nodes) used[static_cast<std::size_t>(n)] = 1;
  std::size_t orphans = 0;
  for (char u : used) orphans += (u == 0);
  if (orphans > 0)
    r.violations.push_back(std::to_string(orphans) + " fine nodes belong to no tet");

  // Coarse nodes must coincide with their fine counterparts.
  for (std::size_t c = 0; c < mesh.coarse_nodes.size(); ++c) {
    const Vec3& pf = mesh.fine_nodes[static_cast<std::size_t>(mesh.coarse_to_fine[c])];
    const Vec3& pc = mesh.coarse_nodes[c];
    if (pf.x != pc.x || pf.y != pc.y || pf.z != pc.z) {
      r.violations.push_back("coarse node " + std::to_string(c) +
                             " does not coincide with a fine node");
    }
  }

  return r;
}

void export_mesh(std::ostream& out, const TwoLevelMesh& mesh, std::uint64_t config_hash,
                 const SnapshotFields* fields) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "# convect %s 1\n# config_hash %016llx\n",
                fields ? "snapshot" : "mesh", static_cast<unsigned long long>(config_hash));
  out << buf;
  std::snprintf(buf, sizeof buf, "counts %d %d %zu %zu\n", mesh.fine_node_count(),
                mesh.coarse_node_count(), mesh.coarse_tets.size(), mesh.fine_tets.size());
  out << buf;

  std::vector<int> fine_to_coarse(mesh.fine_nodes.size(), -1);
  for (std::size_t c = 0; c < mesh.coarse_to_fine.size(); ++c)
    fine_to_coarse[static_cast<std::size_t>(mesh.coarse_to_fine[c])] = static_cast<int>(c);

  out << "nodes\n";
  for (std::size_t i = 0; i < mesh.fine_nodes.size(); ++i) {
    const Vec3& p = mesh.fine_nodes[i];
    int n = std::snprintf(buf, sizeof buf, "%zu %.17g %.17g %.17g %s", i, p.x, p.y, p.z,
                          to_string(mesh.fine_tag[i]));
    if (fields) {
      n += std::snprintf(buf + n, sizeof buf - static_cast<std::size_t>(n),
                         " %.17g %.17g %.17g", (*fields->ux)[i], (*fields->uy)[i],
                         (*fields->uz)[i]);
      const int c = fine_to_coarse[i];
      if (c >= 0)
        n += std::snprintf(buf + n, sizeof buf - static_cast<std::size_t>(n), " %.17g",
                           (*fields->p)[static_cast<std::size_t>(c)]);
      n += std::snprintf(buf + n, sizeof buf - static_cast<std::size_t>(n), " %.17g",
                         (*fields->theta)[i]);
    }
    out << buf << '\n';
  }

  out << "coarse_nodes\n";
  for (std::size_t c = 0; c < mesh.coarse_to_fine.size(); ++c) {
    std::snprintf(buf, sizeof buf, "%zu %d", c, mesh.coarse_to_fine[c]);
    out << buf << '\n';
  }

  out << "tets\n";
  std::size_t id = 0;
  for (const Tetra& t : mesh.coarse_tets) {
    std::snprintf(buf, sizeof buf, "%zu coarse %d %d %d %d %d -1", id++, int(t.shape),
                  mesh.coarse_to_fine[static_cast<std::size_t>(t.nodes[0])],
                  mesh.coarse_to_fine[static_cast<std::size_t>(t.nodes[1])],
                  mesh.coarse_to_fine[static_cast<std::size_t>(t.nodes[2])],
                  mesh.coarse_to_fine[static_cast<std::size_t>(t.nodes[3])]);
    out << buf << '\n';
  }
  for (const Tetra& t : mesh.fine_tets) {
    std::snprintf(buf, sizeof buf, "%zu fine %d %d %d %d %d %d", id++, int(t.shape), t.nodes[0],
                  t.nodes[1], t.nodes[2], t.nodes[3], t.parent);
    out << buf << '\n';
  }
}

}  // namespace convect

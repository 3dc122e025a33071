#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "convect/axis.hpp"
#include "convect/types.hpp"

namespace convect {

/// An axis-aligned hexahedral cell of the coarse lattice. Corner labels follow
/// the A..H convention used throughout the splitting tables: A..D on the back
/// face (low z), E..H on the front face (high z), with
///   A = origin,            B = A + (dx,0,0),  C = A + (dx,dy,0), D = A + (0,dy,0),
///   E = A + (0,0,dz),      F = A + (dx,0,dz), G = A + (dx,dy,dz), H = A + (0,dy,dz).
struct BrickMacro {
  std::array<int, 8> corner;  // coarse node ids in label order A..H
  Vec3 origin;
  Vec3 extent;

  Vec3 corner_coord(int label) const {
    static constexpr int ux[8] = {0, 1, 1, 0, 0, 1, 1, 0};
    static constexpr int uy[8] = {0, 0, 1, 1, 0, 0, 1, 1};
    static constexpr int uz[8] = {0, 0, 0, 0, 1, 1, 1, 1};
    return {origin.x + ux[label] * extent.x, origin.y + uy[label] * extent.y,
            origin.z + uz[label] * extent.z};
  }
  double volume() const { return extent.x * extent.y * extent.z; }
};

struct Tetra {
  std::array<int, 4> nodes;  // coarse node ids at Level::Coarse, fine ids at Level::Fine
  Level level = Level::Coarse;
  std::int8_t shape = 0;  // generic shape id, 1..6 for I..VI
  int parent = -1;        // owning coarse tet for fine tets, -1 for coarse tets
};

/// Which prism of the brick is sub-divided explicitly; the other prism's three
/// tetrahedra are its image under the inversion through the brick center. Both
/// orders produce the identical six-tet set.
enum class ConstructionOrder { TopVertexFirst, BottomEdgeFirst };

/// Splits a brick into its six tetrahedra (shape ids I..VI). Each has volume
/// V_brick / 6 and positive orientation; vertex indices are emitted sorted.
std::array<Tetra, 6> split_brick(const BrickMacro& brick,
                                 ConstructionOrder order = ConstructionOrder::TopVertexFirst);

struct TwoLevelMesh {
  // Gridlines per axis. fine = coarse with interval midpoints inserted.
  std::array<std::vector<double>, 3> coarse_lines;
  std::array<std::vector<double>, 3> fine_lines;

  std::vector<Vec3> fine_nodes;
  std::vector<Vec3> coarse_nodes;
  std::vector<BoundaryTag> fine_tag;
  std::vector<BoundaryTag> coarse_tag;
  std::vector<int> coarse_to_fine;  // identification of coarse nodes inside the fine set

  std::vector<BrickMacro> bricks;
  std::vector<Tetra> coarse_tets;
  std::vector<Tetra> fine_tets;
  std::vector<std::array<int, 8>> children;  // coarse tet id -> its 8 fine tets

  int nfx() const { return static_cast<int>(fine_lines[0].size()); }
  int nfy() const { return static_cast<int>(fine_lines[1].size()); }
  int nfz() const { return static_cast<int>(fine_lines[2].size()); }
  int ncx() const { return static_cast<int>(coarse_lines[0].size()); }
  int ncy() const { return static_cast<int>(coarse_lines[1].size()); }
  int ncz() const { return static_cast<int>(coarse_lines[2].size()); }

  int fine_node_count() const { return static_cast<int>(fine_nodes.size()); }
  int coarse_node_count() const { return static_cast<int>(coarse_nodes.size()); }

  // Nodes are ordered lexicographically by (z, y, x): x fastest, z slowest.
  int fine_id(int ix, int iy, int iz) const { return ix + nfx() * (iy + nfy() * iz); }
  int coarse_id(int ix, int iy, int iz) const { return ix + ncx() * (iy + ncy() * iz); }
  std::array<int, 3> fine_index(int id) const {
    return {id % nfx(), (id / nfx()) % nfy(), id / (nfx() * nfy())};
  }
  std::array<int, 3> coarse_index(int id) const {
    return {id % ncx(), (id / ncx()) % ncy(), id / (ncx() * ncy())};
  }

  std::array<double, 3> aspect() const {
    return {fine_lines[0].back(), fine_lines[1].back(), fine_lines[2].back()};
  }
  double volume() const {
    auto a = aspect();
    return a[0] * a[1] * a[2];
  }

  /// Shortest fine-mesh axis spacing; the CFL reference length.
  double h_min_fine() const;
};

/// Builds the full two-level discretization of the box defined by the three
/// axis partitions: coarse lattice, bricks, six coarse tets per brick, eight
/// fine tets per coarse tet, boundary tags and the node identification map.
TwoLevelMesh build_two_level_mesh(const AxisPartition& px, const AxisPartition& py,
                                  const AxisPartition& pz,
                                  ConstructionOrder order = ConstructionOrder::TopVertexFirst);

/// classify_boundary tags every node: |x| <= tol -> Left, |x - A_x| <= tol -> Right,
/// any other wall -> Other, else Interior. The isothermal walls win on shared
/// edges and corners. Called by the builder; exposed for tests.
void classify_boundary(TwoLevelMesh& mesh, double rel_tol = 1e-12);

struct MeshValidation {
  double total_volume = 0.0;
  double box_volume = 0.0;
  double min_tet_volume = 0.0;
  double max_tet_volume = 0.0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Structural diagnostics: volume partition, face conformity (every interior
/// face shared by exactly two tets), duplicate tets, orphan nodes. Returns the
/// report, never throws.
MeshValidation validate_mesh(const TwoLevelMesh& mesh);

/// ASCII export. Column orders are fixed:
///   nodes:        "id x y z tag"
///   coarse_nodes: "coarse_id fine_id"
///   tets:         "id level shape n0 n1 n2 n3 parent"
/// Fine tets reference fine node ids, coarse tets the fine ids of their
/// coinciding coarse nodes. When fields are given, node rows are extended with
/// "ux uy uz p theta"; the p column appears only at coarse-coincident nodes.
struct SnapshotFields {
  const std::vector<double>* ux = nullptr;
  const std::vector<double>* uy = nullptr;
  const std::vector<double>* uz = nullptr;
  const std::vector<double>* theta = nullptr;
  const std::vector<double>* p = nullptr;  // coarse node values
};
void export_mesh(std::ostream& out, const TwoLevelMesh& mesh, std::uint64_t config_hash,
                 const SnapshotFields* fields = nullptr);

}  // namespace convect

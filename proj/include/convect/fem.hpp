#pragma once

#include <array>
#include <vector>

#include "convect/banded.hpp"
#include "convect/mesh.hpp"
#include "convect/types.hpp"

namespace convect {

/// Per-tet volume and the constant gradients of the four barycentric basis
/// functions. The gradients sum to zero.
struct ElementGeometry {
  double volume = 0.0;
  std::array<Vec3, 4> grad;
};

std::vector<ElementGeometry> compute_element_geometry(const std::vector<Vec3>& nodes,
                                                      const std::vector<Tetra>& tets);

/// The discrete spaces of the formulation. Kind fixes the constrained-node
/// mask: V0h constrains all boundary nodes, Pi0h the isothermal walls, Ph is
/// the zero-mean coarse pressure space.
struct FunctionSpace {
  enum class Kind { Vh, V0h, Pi0h, Ph };
  Kind kind = Kind::Vh;
  Level level = Level::Fine;
  bool zero_mean = false;
  std::vector<std::uint8_t> constrained;

  static FunctionSpace make(const TwoLevelMesh& mesh, Kind kind);
};

/// A piecewise-linear field as values at mesh nodes.
struct NodalField {
  Level level = Level::Fine;
  std::vector<double> v;
};

/// Trapezoidal (vertex-rule) lumped mass: node i receives V_T / 4 from every
/// tet containing it. Entries are positive and sum to the domain volume.
std::vector<double> lumped_mass(int node_count, const std::vector<Tetra>& tets,
                                const std::vector<ElementGeometry>& geom);

/// coefficient * integral of grad(u) . grad(v), assembled into the lattice
/// band of the given level. Requires the builder's lexicographic node order.
SymBandedMatrix assemble_stiffness(const TwoLevelMesh& mesh, Level level, double coefficient);

/// Nodal action of the advection-squared form: out_m = integral of
/// (u_adv . grad(phi_m)) (u_adv . grad(f)), vertex quadrature. Symmetric PSD;
/// kills constants.
void apply_wave_operator(const std::vector<Tetra>& tets, const std::vector<ElementGeometry>& geom,
                         const std::array<const std::vector<double>*, 3>& u_adv,
                         const std::vector<double>& f, std::vector<double>& out);

/// Nodal action of the first-order advection form: out_m = integral of
/// (u_adv . grad(f)) phi_m, vertex quadrature.
void apply_advection(const std::vector<Tetra>& tets, const std::vector<ElementGeometry>& geom,
                     const std::array<const std::vector<double>*, 3>& u_adv,
                     const std::vector<double>& f, std::vector<double>& out);

/// Matrix-free kernel for the transport stage. The advecting field is frozen
/// once per stage; per tet it caches V/4 and the 16 products u(vertex_v) .
/// grad(basis_m), which both advection forms consume.
class AdvectionKernel {
 public:
  void build(const std::vector<Tetra>& tets, const std::vector<ElementGeometry>& geom,
             const std::array<const std::vector<double>*, 3>& u_adv);
  void apply_wave(const std::vector<double>& f, std::vector<double>& out) const;
  void apply_first_order(const std::vector<double>& f, std::vector<double>& out) const;

 private:
  struct TetCache {
    std::array<int, 4> nodes;
    double quarter_volume;
    std::array<double, 16> b;  // b[4*v + m] = u(vertex v) . grad(basis m)
  };
  std::vector<TetCache> cache_;
  std::size_t node_count_ = 0;
};

/// Fine-node values of a coarse P1 field: coarse nodes copy, every other fine
/// node is the midpoint of a coarse edge and averages its two endpoints.
/// src[f] holds the two coarse node ids (equal for coarse-coincident nodes).
struct CoarseFineInterp {
  std::vector<std::array<int, 2>> src;

  static CoarseFineInterp build(const TwoLevelMesh& mesh);

  void interpolate(const std::vector<double>& coarse, std::vector<double>& fine) const;
};

/// rhs_m,i = sum over fine tets of mean(p) * V_T * d(basis_m)/dx_i, where p
/// is first interpolated to fine nodes and averaged over each tet's vertices.
void pressure_gradient_rhs(const TwoLevelMesh& mesh, const std::vector<ElementGeometry>& fine_geom,
                           const CoarseFineInterp& interp, const std::vector<double>& p,
                           std::array<std::vector<double>, 3>& out);

/// res_k = sum over coarse tets, over their 8 children, of div(u) * V_child *
/// mean over the child's vertices of the coarse basis omega_k (edge-interpolated).
std::vector<double> divergence_residual(const TwoLevelMesh& mesh,
                                        const std::vector<ElementGeometry>& fine_geom,
                                        const CoarseFineInterp& interp,
                                        const std::array<const std::vector<double>*, 3>& u);

}  // namespace convect

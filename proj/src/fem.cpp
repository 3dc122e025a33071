#include "convect/fem.hpp"

namespace convect {

std::vector<ElementGeometry> compute_element_geometry(const std::vector<Vec3>& nodes,
                                                      const std::vector<Tetra>& tets) {
  std::vector<ElementGeometry> geom(tets.size());
  for (std::size_t t = 0; t < tets.size(); ++t) {
    const Vec3& p0 = nodes[static_cast<std::size_t>(tets[t].nodes[0])];
    const Vec3& p1 = nodes[static_cast<std::size_t>(tets[t].nodes[1])];
    const Vec3& p2 = nodes[static_cast<std::size_t>(tets[t].nodes[2])];
    const Vec3& p3 = nodes[static_cast<std::size_t>(tets[t].nodes[3])];
    const double vol6 = dot(p1 - p0, cross(p2 - p0, p3 - p0));
    require(vol6 > 0.0, "element geometry: tet with non-positive volume");
    ElementGeometry& g = geom[t];
    g.volume = vol6 / 6.0;
    // grad(lambda_m) = (opposite face normal) / (6 V); normals via cross
    // products of the edges emanating from the remaining vertices.
    g.grad[0] = cross(p3 - p1, p2 - p1) * (1.0 / vol6);
    g.grad[1] = cross(p2 - p0, p3 - p0) * (1.0 / vol6);
    g.grad[2] = cross(p3 - p0, p1 - p0) * (1.0 / vol6);
    g.grad[3] = cross(p1 - p0, p2 - p0) * (1.0 / vol6);
  }
  return geom;
}

FunctionSpace FunctionSpace::make(const TwoLevelMesh& mesh, Kind kind) {
  FunctionSpace s;
  s.kind = kind;
  s.level = (kind == Kind::Ph) ? Level::Coarse : Level::Fine;
  s.zero_mean = (kind == Kind::Ph);
  const auto& tags = (s.level == Level::Fine) ? mesh.fine_tag : mesh.coarse_tag;
  s.constrained.assign(tags.size(), 0);
  for (std::size_t i = 0; i < tags.size(); ++i) {
    switch (kind) {
      case Kind::Vh:
      case Kind::Ph:
        break;
      case Kind::V0h:
        s.constrained[i] = (tags[i] != BoundaryTag::Interior);
        break;
      case Kind::Pi0h:
        s.constrained[i] = (tags[i] == BoundaryTag::Left || tags[i] == BoundaryTag::Right);
        break;
    }
  }
  return s;
}

std::vector<double> lumped_mass(int node_count, const std::vector<Tetra>& tets,
                                const std::vector<ElementGeometry>& geom) {
  std::vector<double> m(static_cast<std::size_t>(node_count), 0.0);
  for (std::size_t t = 0; t < tets.size(); ++t) {
    const double w = geom[t].volume / 4.0;
    for (int n : tets[t].nodes) m[static_cast<std::size_t>(n)] += w;
  }
  return m;
}

SymBandedMatrix assemble_stiffness(const TwoLevelMesh& mesh, Level level, double coefficient) {
  const bool fine = (level == Level::Fine);
  const std::vector<Tetra>& tets = fine ? mesh.fine_tets : mesh.coarse_tets;
  const std::vector<Vec3>& nodes = fine ? mesh.fine_nodes : mesh.coarse_nodes;
  const int nx = fine ? mesh.nfx() : mesh.ncx();
  const int ny = fine ? mesh.nfy() : mesh.ncy();
  const int nz = fine ? mesh.nfz() : mesh.ncz();

  SymBandedMatrix a(static_cast<int>(nodes.size()), lattice_band_offsets(nx, ny, nz));
  const auto geom = compute_element_geometry(nodes, tets);
  for (std::size_t t = 0; t < tets.size(); ++t) {
    const ElementGeometry& g = geom[t];
    const auto& n = tets[t].nodes;
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) {
        const double v = coefficient * g.volume *
                         dot(g.grad[static_cast<std::size_t>(i)],
                             g.grad[static_cast<std::size_t>(j)]);
        if (n[static_cast<std::size_t>(i)] == n[static_cast<std::size_t>(j)] || i != j)
          a.add(n[static_cast<std::size_t>(i)], n[static_cast<std::size_t>(j)], v);
      }
  }
  return a;
}

void AdvectionKernel::build(const std::vector<Tetra>& tets,
                            const std::vector<ElementGeometry>& geom,
                            const std::array<const std::vector<double>*, 3>& u_adv) {
  node_count_ = u_adv[0]->size();
  cache_.resize(tets.size());
  const double* ux = u_adv[0]->data();
  const double* uy = u_adv[1]->data();
  const double* uz = u_adv[2]->data();
  for (std::size_t t = 0; t < tets.size(); ++t) {
    TetCache& c = cache_[t];
    c.nodes = tets[t].nodes;
    c.quarter_volume = geom[t].volume / 4.0;
    for (int v = 0; v < 4; ++v) {
      const std::size_t nv = static_cast<std::size_t>(c.nodes[static_cast<std::size_t>(v)]);
      const Vec3 u{ux[nv], uy[nv], uz[nv]};
      for (int m = 0; m < 4; ++m)
        c.b[static_cast<std::size_t>(4 * v + m)] = dot(u, geom[t].grad[static_cast<std::size_t>(m)]);
    }
  }
}

void AdvectionKernel::apply_wave(const std::vector<double>& f, std::vector<double>& out) const {
  out.assign(node_count_, 0.0);
  const double* fp = f.data();
  double* op = out.data();
  for (const TetCache& c : cache_) {
    const double f0 = fp[c.nodes[0]], f1 = fp[c.nodes[1]], f2 = fp[c.nodes[2]],
                 f3 = fp[c.nodes[3]];
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    for (int v = 0; v < 4; ++v) {
      const double* bv = &c.b[static_cast<std::size_t>(4 * v)];
      // s = u(vertex v) . grad(f) on this tet, weighted by V/4.
      const double s = c.quarter_volume * (bv[0] * f0 + bv[1] * f1 + bv[2] * f2 + bv[3] * f3);
      acc[0] += s * bv[0];
      acc[1] += s * bv[1];
      acc[2] += s * bv[2];
      acc[3] += s * bv[3];
    }
    op[c.nodes[0]] += acc[0];
    op[c.nodes[1]] += acc[1];
    op[c.nodes[2]] += acc[2];
    op[c.nodes[3]] += acc[3];
  }
}

void AdvectionKernel::apply_first_order(const std::vector<double>& f,
                                        std::vector<double>& out) const {
  out.assign(node_count_, 0.0);
  const double* fp = f.data();
  double* op = out.data();
  for (const TetCache& c : cache_) {
    const double f0 = fp[c.nodes[0]], f1 = fp[c.nodes[1]], f2 = fp[c.nodes[2]],
                 f3 = fp[c.nodes[3]];
    for (int v = 0; v < 4; ++v) {
      const double* bv = &c.b[static_cast<std::size_t>(4 * v)];
      op[c.nodes[static_cast<std::size_t>(v)]] +=
          c.quarter_volume * (bv[0] * f0 + bv[1] * f1 + bv[2] * f2 + bv[3] * f3);
    }
  }
}

void apply_wave_operator(const std::vector<Tetra>& tets, const std::vector<ElementGeometry>& geom,
                         const std::array<const std::vector<double>*, 3>& u_adv,
                         const std::vector<double>& f, std::vector<double>& out) {
  AdvectionKernel k;
  k.build(tets, geom, u_adv);
  k.apply_wave(f, out);
}

void apply_advection(const std::vector<Tetra>& tets, const std::vector<ElementGeometry>& geom,
                     const std::array<const std::vector<double>*, 3>& u_adv,
                     const std::vector<double>& f, std::vector<double>& out) {
  AdvectionKernel k;
  k.build(tets, geom, u_adv);
  k.apply_first_order(f, out);
}

CoarseFineInterp CoarseFineInterp::build(const TwoLevelMesh& mesh) {
  CoarseFineInterp it;
  it.src.resize(mesh.fine_nodes.size());
  const int nfx = mesh.nfx(), nfy = mesh.nfy(), nfz = mesh.nfz();
  auto coarse_at = [&](int ix, int iy, int iz) {
    return mesh.coarse_id(ix / 2, iy / 2, iz / 2);
  };
  for (int iz = 0; iz < nfz; ++iz)
    for (int iy = 0; iy < nfy; ++iy)
      for (int ix = 0; ix < nfx; ++ix) {
        const std::size_t f = static_cast<std::size_t>(mesh.fine_id(ix, iy, iz));
        const int ox = ix & 1, oy = iy & 1, oz = iz & 1;
        int a[3], b[3];
        if (!ox && !oy && !oz) {  // coarse node
          a[0] = b[0] = ix; a[1] = b[1] = iy; a[2] = b[2] = iz;
        } else if (ox && !oy && !oz) {  // x edge
          a[0] = ix - 1; a[1] = iy; a[2] = iz; b[0] = ix + 1; b[1] = iy; b[2] = iz;
        } else if (!ox && oy && !oz) {  // y edge
          a[0] = ix; a[1] = iy - 1; a[2] = iz; b[0] = ix; b[1] = iy + 1; b[2] = iz;
        } else if (!ox && !oy && oz) {  // z edge
          a[0] = ix; a[1] = iy; a[2] = iz - 1; b[0] = ix; b[1] = iy; b[2] = iz + 1;
        } else if (ox && oy && !oz) {  // z-face center: BD diagonal
          a[0] = ix + 1; a[1] = iy - 1; a[2] = iz; b[0] = ix - 1; b[1] = iy + 1; b[2] = iz;
        } else if (!ox && oy && oz) {  // x-face center: ED diagonal
          a[0] = ix; a[1] = iy - 1; a[2] = iz + 1; b[0] = ix; b[1] = iy + 1; b[2] = iz - 1;
        } else if (ox && !oy && oz) {  // y-face center: EB diagonal
          a[0] = ix - 1; a[1] = iy; a[2] = iz + 1; b[0] = ix + 1; b[1] = iy; b[2] = iz - 1;
        } else {  // body center: HB diagonal
          a[0] = ix - 1; a[1] = iy + 1; a[2] = iz + 1; b[0] = ix + 1; b[1] = iy - 1; b[2] = iz - 1;
        }
        it.src[f] = {coarse_at(a[0], a[1], a[2]), coarse_at(b[0], b[1], b[2])};
      }
  return it;
}

void CoarseFineInterp::interpolate(const std::vector<double>& coarse,
                                   std::vector<double>& fine) const {
  fine.resize(src.size());
  for (std::size_t f = 0; f < src.size(); ++f)
    fine[f] = 0.5 * (coarse[static_cast<std::size_t>(src[f][0])] +
                     coarse[static_cast<std::size_t>(src[f][1])]);
}

void pressure_gradient_rhs(const TwoLevelMesh& mesh, const std::vector<ElementGeometry>& fine_geom,
                           const CoarseFineInterp& interp, const std::vector<double>& p,
                           std::array<std::vector<double>, 3>& out) {
  require(p.size() == mesh.coarse_nodes.size(), "pressure_gradient_rhs: p must be coarse");
  require(interp.src.size() == mesh.fine_nodes.size(),
          "pressure_gradient_rhs: missing coarse-to-fine interpolation map");
  static thread_local std::vector<double> pf;
  interp.interpolate(p, pf);
  for (auto& o : out) o.assign(mesh.fine_nodes.size(), 0.0);
  for (std::size_t t = 0; t < mesh.fine_tets.size(); ++t) {
    const auto& n = mesh.fine_tets[t].nodes;
    const ElementGeometry& g = fine_geom[t];
    const double pbar = 0.25 * (pf[static_cast<std::size_t>(n[0])] +
                                pf[static_cast<std::size_t>(n[1])] +
                                pf[static_cast<std::size_t>(n[2])] +
                                pf[static_cast<std::size_t>(n[3])]);
    const double w = pbar * g.volume;
    for (int m = 0; m < 4; ++m) {
      const std::size_t nm = static_cast<std::size_t>(n[static_cast<std::size_t>(m)]);
      out[0][nm] += w * g.grad[static_cast<std::size_t>(m)].x;
      out[1][nm] += w * g.grad[static_cast<std::size_t>(m)].y;
      out[2][nm] += w * g.grad[static_cast<std::size_t>(m)].z;
    }
  }
}

std::vector<double> divergence_residual(const TwoLevelMesh& mesh,
                                        const std::vector<ElementGeometry>& fine_geom,
                                        const CoarseFineInterp& interp,
                                        const std::array<const std::vector<double>*, 3>& u) {
  std::vector<double> res(mesh.coarse_nodes.size(), 0.0);
  const double* ux = u[0]->data();
  const double* uy = u[1]->data();
  const double* uz = u[2]->data();
  for (std::size_t ct = 0; ct < mesh.coarse_tets.size(); ++ct) {
    for (int child : mesh.children[ct]) {
      const Tetra& tet = mesh.fine_tets[static_cast<std::size_t>(child)];
      const ElementGeometry& g = fine_geom[static_cast<std::size_t>(child)];
      double div = 0.0;
      for (int m = 0; m < 4; ++m) {
        const std::size_t nm = static_cast<std::size_t>(tet.nodes[static_cast<std::size_t>(m)]);
        const Vec3& gr = g.grad[static_cast<std::size_t>(m)];
        div += ux[nm] * gr.x + uy[nm] * gr.y + uz[nm] * gr.z;
      }
      // mean over the child's vertices of omega_k: each vertex splits its
      // weight over its two coarse interpolation sources.
      const double w = div * g.volume / 8.0;
      for (int m = 0; m < 4; ++m) {
        const auto& s = interp.src[static_cast<std::size_t>(tet.nodes[static_cast<std::size_t>(m)])];
        res[static_cast<std::size_t>(s[0])] += w;
        res[static_cast<std::size_t>(s[1])] += w;
      }
    }
  }
  return res;
}

}  // namespace convect

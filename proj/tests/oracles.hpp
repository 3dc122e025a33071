// Dense reference implementations used only by the tests. Each oracle
// recomputes its quantity through an independent path (geometric barycentric
// interpolation, adjugate-based gradients, Gaussian elimination) so the banded
// and matrix-free production code is checked against genuinely separate
// arithmetic.
#pragma once

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "convect/banded.hpp"
#include "convect/mesh.hpp"
#include "convect/types.hpp"

namespace convect::test {

class DenseMatrix {
 public:
  int n_ = 0;
  std::vector<double> a_;

  DenseMatrix() = default;
  explicit DenseMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {}
  int size() const { return n_; }
  double& at(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  double at(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

  static DenseMatrix from_banded(const SymBandedMatrix& b) {
    DenseMatrix d(b.size());
    for (int i = 0; i < b.size(); ++i)
      for (int j = 0; j < b.size(); ++j) d.at(i, j) = b.get(i, j);
    return d;
  }

  std::vector<double> multiply(const std::vector<double>& x) const {
    std::vector<double> y(static_cast<std::size_t>(n_), 0.0);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) y[static_cast<std::size_t>(i)] += at(i, j) * x[static_cast<std::size_t>(j)];
    return y;
  }

  /// Gaussian elimination with partial pivoting.
  std::vector<double> solve(std::vector<double> rhs) const {
    DenseMatrix a = *this;
    const int n = n_;
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    for (int col = 0; col < n; ++col) {
      int piv = col;
      for (int r = col + 1; r < n; ++r)
        if (std::abs(a.at(r, col)) > std::abs(a.at(piv, col))) piv = r;
      if (piv != col) {
        for (int c = 0; c < n; ++c) std::swap(a.at(col, c), a.at(piv, c));
        std::swap(rhs[static_cast<std::size_t>(col)], rhs[static_cast<std::size_t>(piv)]);
      }
      const double d = a.at(col, col);
      for (int r = col + 1; r < n; ++r) {
        const double f = a.at(r, col) / d;
        if (f == 0.0) continue;
        for (int c = col; c < n; ++c) a.at(r, c) -= f * a.at(col, c);
        rhs[static_cast<std::size_t>(r)] -= f * rhs[static_cast<std::size_t>(col)];
      }
    }
    std::vector<double> x(static_cast<std::size_t>(n), 0.0);
    for (int r = n - 1; r >= 0; --r) {
      double s = rhs[static_cast<std::size_t>(r)];
      for (int c = r + 1; c < n; ++c) s -= a.at(r, c) * x[static_cast<std::size_t>(c)];
      x[static_cast<std::size_t>(r)] = s / a.at(r, r);
    }
    return x;
  }
};

/// Basis gradients from the inverse edge matrix (adjugate route, independent
/// of the cross-product formulas in the library).
inline std::array<Vec3, 4> oracle_gradients(const Vec3& p0, const Vec3& p1, const Vec3& p2,
                                            const Vec3& p3) {
  const double e[3][3] = {{p1.x - p0.x, p1.y - p0.y, p1.z - p0.z},
                          {p2.x - p0.x, p2.y - p0.y, p2.z - p0.z},
                          {p3.x - p0.x, p3.y - p0.y, p3.z - p0.z}};
  const double det = e[0][0] * (e[1][1] * e[2][2] - e[1][2] * e[2][1]) -
                     e[0][1] * (e[1][0] * e[2][2] - e[1][2] * e[2][0]) +
                     e[0][2] * (e[1][0] * e[2][1] - e[1][1] * e[2][0]);
  double inv[3][3];
  inv[0][0] = (e[1][1] * e[2][2] - e[1][2] * e[2][1]) / det;
  inv[0][1] = -(e[0][1] * e[2][2] - e[0][2] * e[2][1]) / det;
  inv[0][2] = (e[0][1] * e[1][2] - e[0][2] * e[1][1]) / det;
  inv[1][0] = -(e[1][0] * e[2][2] - e[1][2] * e[2][0]) / det;
  inv[1][1] = (e[0][0] * e[2][2] - e[0][2] * e[2][0]) / det;
  inv[1][2] = -(e[0][0] * e[1][2] - e[0][2] * e[1][0]) / det;
  inv[2][0] = (e[1][0] * e[2][1] - e[1][1] * e[2][0]) / det;
  inv[2][1] = -(e[0][0] * e[2][1] - e[0][1] * e[2][0]) / det;
  inv[2][2] = (e[0][0] * e[1][1] - e[0][1] * e[1][0]) / det;
  // grad(lambda_k) for k = 1..3 is column k-1 of inv; lambda_0 = -sum.
  std::array<Vec3, 4> g;
  for (int k = 1; k <= 3; ++k)
    g[static_cast<std::size_t>(k)] = {inv[0][k - 1], inv[1][k - 1], inv[2][k - 1]};
  g[0] = {-(g[1].x + g[2].x + g[3].x), -(g[1].y + g[2].y + g[3].y), -(g[1].z + g[2].z + g[3].z)};
  return g;
}

inline double oracle_volume(const Vec3& p0, const Vec3& p1, const Vec3& p2, const Vec3& p3) {
  const double e[3][3] = {{p1.x - p0.x, p1.y - p0.y, p1.z - p0.z},
                          {p2.x - p0.x, p2.y - p0.y, p2.z - p0.z},
                          {p3.x - p0.x, p3.y - p0.y, p3.z - p0.z}};
  const double det = e[0][0] * (e[1][1] * e[2][2] - e[1][2] * e[2][1]) -
                     e[0][1] * (e[1][0] * e[2][2] - e[1][2] * e[2][0]) +
                     e[0][2] * (e[1][0] * e[2][1] - e[1][1] * e[2][0]);
  return det / 6.0;
}

/// Dense stiffness assembly over the given tets.
inline DenseMatrix oracle_stiffness(const std::vector<Vec3>& nodes,
                                    const std::vector<Tetra>& tets, double coeff) {
  DenseMatrix k(static_cast<int>(nodes.size()));
  for (const Tetra& t : tets) {
    const Vec3& p0 = nodes[static_cast<std::size_t>(t.nodes[0])];
    const Vec3& p1 = nodes[static_cast<std::size_t>(t.nodes[1])];
    const Vec3& p2 = nodes[static_cast<std::size_t>(t.nodes[2])];
    const Vec3& p3 = nodes[static_cast<std::size_t>(t.nodes[3])];
    const auto g = oracle_gradients(p0, p1, p2, p3);
    const double v = oracle_volume(p0, p1, p2, p3);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        k.at(t.nodes[static_cast<std::size_t>(i)], t.nodes[static_cast<std::size_t>(j)]) +=
            coeff * v * dot(g[static_cast<std::size_t>(i)], g[static_cast<std::size_t>(j)]);
  }
  return k;
}

inline std::vector<double> oracle_lumped_mass(const std::vector<Vec3>& nodes,
                                              const std::vector<Tetra>& tets) {
  std::vector<double> m(nodes.size(), 0.0);
  for (const Tetra& t : tets) {
    const double v = oracle_volume(nodes[static_cast<std::size_t>(t.nodes[0])],
                                   nodes[static_cast<std::size_t>(t.nodes[1])],
                                   nodes[static_cast<std::size_t>(t.nodes[2])],
                                   nodes[static_cast<std::size_t>(t.nodes[3])]);
    for (int n : t.nodes) m[static_cast<std::size_t>(n)] += v / 4.0;
  }
  return m;
}

/// Vertex-quadrature matrix of the wave form: W(i,j) = sum over tets and
/// vertices of (V/4) (u(v).grad_i)(u(v).grad_j).
inline DenseMatrix oracle_wave_matrix(const std::vector<Vec3>& nodes,
                                      const std::vector<Tetra>& tets,
                                      const std::array<const std::vector<double>*, 3>& u) {
  DenseMatrix w(static_cast<int>(nodes.size()));
  for (const Tetra& t : tets) {
    const auto g = oracle_gradients(nodes[static_cast<std::size_t>(t.nodes[0])],
                                    nodes[static_cast<std::size_t>(t.nodes[1])],
                                    nodes[static_cast<std::size_t>(t.nodes[2])],
                                    nodes[static_cast<std::size_t>(t.nodes[3])]);
    const double v = oracle_volume(nodes[static_cast<std::size_t>(t.nodes[0])],
                                   nodes[static_cast<std::size_t>(t.nodes[1])],
                                   nodes[static_cast<std::size_t>(t.nodes[2])],
                                   nodes[static_cast<std::size_t>(t.nodes[3])]);
    for (int vert = 0; vert < 4; ++vert) {
      const std::size_t nv = static_cast<std::size_t>(t.nodes[static_cast<std::size_t>(vert)]);
      const Vec3 uv{(*u[0])[nv], (*u[1])[nv], (*u[2])[nv]};
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          w.at(t.nodes[static_cast<std::size_t>(i)], t.nodes[static_cast<std::size_t>(j)]) +=
              (v / 4.0) * dot(uv, g[static_cast<std::size_t>(i)]) * dot(uv, g[static_cast<std::size_t>(j)]);
    }
  }
  return w;
}

/// Geometric evaluation of a coarse P1 field at an arbitrary point: find a
/// containing coarse tet and interpolate barycentrically.
inline double oracle_coarse_eval(const TwoLevelMesh& mesh, const std::vector<double>& p,
                                 const Vec3& x) {
  for (const Tetra& t : mesh.coarse_tets) {
    const Vec3& p0 = mesh.coarse_nodes[static_cast<std::size_t>(t.nodes[0])];
    const Vec3& p1 = mesh.coarse_nodes[static_cast<std::size_t>(t.nodes[1])];
    const Vec3& p2 = mesh.coarse_nodes[static_cast<std::size_t>(t.nodes[2])];
    const Vec3& p3 = mesh.coarse_nodes[static_cast<std::size_t>(t.nodes[3])];
    const double v = oracle_volume(p0, p1, p2, p3);
    const double l1 = oracle_volume(p0, x, p2, p3) / v;
    const double l2 = oracle_volume(p0, p1, x, p3) / v;
    const double l3 = oracle_volume(p0, p1, p2, x) / v;
    const double l0 = 1.0 - l1 - l2 - l3;
    const double eps = -1e-12;
    if (l0 >= eps && l1 >= eps && l2 >= eps && l3 >= eps)
      return l0 * p[static_cast<std::size_t>(t.nodes[0])] + l1 * p[static_cast<std::size_t>(t.nodes[1])] +
             l2 * p[static_cast<std::size_t>(t.nodes[2])] + l3 * p[static_cast<std::size_t>(t.nodes[3])];
  }
  fail("oracle_coarse_eval: point not found in any coarse tet");
}

/// Dense mixed pressure-gradient integral per the quadrature description:
/// out[c][m] = sum over fine tets of mean-vertex-value(p) * V * grad_m[c].
inline std::array<std::vector<double>, 3> oracle_pressure_gradient(
    const TwoLevelMesh& mesh, const std::vector<double>& p) {
  std::array<std::vector<double>, 3> out;
  for (auto& o : out) o.assign(mesh.fine_nodes.size(), 0.0);
  for (const Tetra& t : mesh.fine_tets) {
    const Vec3& p0 = mesh.fine_nodes[static_cast<std::size_t>(t.nodes[0])];
    const Vec3& p1 = mesh.fine_nodes[static_cast<std::size_t>(t.nodes[1])];
    const Vec3& p2 = mesh.fine_nodes[static_cast<std::size_t>(t.nodes[2])];
    const Vec3& p3 = mesh.fine_nodes[static_cast<std::size_t>(t.nodes[3])];
    const double pbar = 0.25 * (oracle_coarse_eval(mesh, p, p0) + oracle_coarse_eval(mesh, p, p1) +
                                oracle_coarse_eval(mesh, p, p2) + oracle_coarse_eval(mesh, p, p3));
    const auto g = oracle_gradients(p0, p1, p2, p3);
    const double v = oracle_volume(p0, p1, p2, p3);
    for (int m = 0; m < 4; ++m) {
      const std::size_t nm = static_cast<std::size_t>(t.nodes[static_cast<std::size_t>(m)]);
      out[0][nm] += pbar * v * g[static_cast<std::size_t>(m)].x;
      out[1][nm] += pbar * v * g[static_cast<std::size_t>(m)].y;
      out[2][nm] += pbar * v * g[static_cast<std::size_t>(m)].z;
    }
  }
  return out;
}

/// Dense mixed divergence integral: per coarse tet, per child, the constant
/// div(u) times V_child times the vertex-mean of the geometrically evaluated
/// coarse basis omega_k.
inline std::vector<double> oracle_divergence(const TwoLevelMesh& mesh,
                                             const std::array<const std::vector<double>*, 3>& u) {
  std::vector<double> res(mesh.coarse_nodes.size(), 0.0);
  for (std::size_t ct = 0; ct < mesh.coarse_tets.size(); ++ct) {
    const Tetra& parent = mesh.coarse_tets[ct];
    for (int k = 0; k < 4; ++k) {
      std::vector<double> omega(mesh.coarse_nodes.size(), 0.0);
      omega[static_cast<std::size_t>(parent.nodes[static_cast<std::size_t>(k)])] = 1.0;
      for (int child : mesh.children[ct]) {
        const Tetra& tet = mesh.fine_tets[static_cast<std::size_t>(child)];
        const Vec3& p0 = mesh.fine_nodes[static_cast<std::size_t>(tet.nodes[0])];
        const Vec3& p1 = mesh.fine_nodes[static_cast<std::size_t>(tet.nodes[1])];
        const Vec3& p2 = mesh.fine_nodes[static_cast<std::size_t>(tet.nodes[2])];
        const Vec3& p3 = mesh.fine_nodes[static_cast<std::size_t>(tet.nodes[3])];
        const auto g = oracle_gradients(p0, p1, p2, p3);
        const double v = oracle_volume(p0, p1, p2, p3);
        double div = 0.0;
        for (int m = 0; m < 4; ++m) {
          const std::size_t nm = static_cast<std::size_t>(tet.nodes[static_cast<std::size_t>(m)]);
          div += (*u[0])[nm] * g[static_cast<std::size_t>(m)].x +
                 (*u[1])[nm] * g[static_cast<std::size_t>(m)].y +
                 (*u[2])[nm] * g[static_cast<std::size_t>(m)].z;
        }
        const double wbar = 0.25 * (oracle_coarse_eval(mesh, omega, p0) +
                                    oracle_coarse_eval(mesh, omega, p1) +
                                    oracle_coarse_eval(mesh, omega, p2) +
                                    oracle_coarse_eval(mesh, omega, p3));
        res[static_cast<std::size_t>(parent.nodes[static_cast<std::size_t>(k)])] += div * v * wbar;
      }
    }
  }
  return res;
}

inline std::vector<double> random_vector(std::size_t n, unsigned seed, double lo = -1.0,
                                         double hi = 1.0) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = dist(gen);
  return v;
}

}  // namespace convect::test

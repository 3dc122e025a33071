#pragma once

#include <vector>

#include "convect/types.hpp"

namespace convect {

/// Symmetric sparse matrix stored as the main diagonal plus its nonzero upper
/// diagonals. On the structured node lattice the P1 stencil produces exactly
/// 7 upper offsets (15 nonzero diagonals in total); degenerate lattices with
/// coinciding strides merge offsets. diag[k][i] holds A(i, i + offsets[k])
/// and is zero-padded past the matrix edge.
class SymBandedMatrix {
 public:
  SymBandedMatrix() = default;
  SymBandedMatrix(int n, std::vector<int> upper_offsets);

  int size() const { return n_; }
  const std::vector<int>& offsets() const { return offsets_; }  // includes 0 first
  int bandwidth() const { return offsets_.empty() ? 0 : offsets_.back(); }

  /// Accumulates A(i, j) += v; requires j - i to be a stored offset (fails
  /// fast on entries outside the band pattern). Only the upper triangle is
  /// stored; callers pass i <= j.
  void add(int i, int j, double v);

  double get(int i, int j) const;  // 0 outside the band
  double& diag_entry(int k, int i) { return diag_[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]; }
  double diag_entry(int k, int i) const { return diag_[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]; }

  /// y = A x, touching only the stored diagonals.
  void multiply(const std::vector<double>& x, std::vector<double>& y) const;

  /// Symmetry-preserving Dirichlet enforcement: for every constrained node j,
  /// rhs_i -= A(i, j) * value_j for free i, then row/column j are cleared,
  /// A(j, j) = 1 and rhs_j = value_j.
  void apply_dirichlet_symmetric(std::vector<double>& rhs, const std::vector<std::uint8_t>& mask,
                                 const std::vector<double>& values);

  /// Same constraint structure with all values zero applied to the matrix
  /// only; returns the rhs correction vector c with c_i = sum_j A(i, j) g_j
  /// over constrained j (computed before clearing), so later right-hand sides
  /// can be fixed as rhs -= c without re-assembling.
  std::vector<double> apply_dirichlet_matrix(const std::vector<std::uint8_t>& mask,
                                             const std::vector<double>& values);

 private:
  int n_ = 0;
  std::vector<int> offsets_;                // offsets_[0] == 0
  std::vector<std::vector<double>> diag_;   // one array per offset
};

/// The upper band offsets of the P1 stencil on an nx*ny*nz lattice ordered
/// lexicographically by (z, y, x): {1, nx-1, nx, nx*ny - nx, nx*ny - 1, nx*ny,
/// nx*ny + nx - 1}, deduplicated and sorted.
std::vector<int> lattice_band_offsets(int nx, int ny, int nz);

}  // namespace convect

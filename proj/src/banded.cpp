#include "convect/banded.hpp"

#include <algorithm>

namespace convect {

SymBandedMatrix::SymBandedMatrix(int n, std::vector<int> upper_offsets) : n_(n) {
  std::sort(upper_offsets.begin(), upper_offsets.end());
  upper_offsets.erase(std::unique(upper_offsets.begin(), upper_offsets.end()),
                      upper_offsets.end());
  require(!upper_offsets.empty() && upper_offsets.front() > 0,
          "upper offsets must be positive");
  offsets_.push_back(0);
  offsets_.insert(offsets_.end(), upper_offsets.begin(), upper_offsets.end());
  diag_.assign(offsets_.size(), std::vector<double>(static_cast<std::size_t>(n_), 0.0));
}

void SymBandedMatrix::add(int i, int j, double v) {
  if (i > j) std::swap(i, j);
  const int off = j - i;
  for (std::size_t k = 0; k < offsets_.size(); ++k) {
    if (offsets_[k] == off) {
      diag_[k][static_cast<std::size_t>(i)] += v;
      return;
    }
  }
  fail("banded assembly: entry (" + std::to_string(i) + "," + std::to_string(j) +
       ") falls outside the stored diagonals");
}

double SymBandedMatrix::get(int i, int j) const {
  if (i > j) std::swap(i, j);
  const int off = j - i;
  for (std::size_t k = 0; k < offsets_.size(); ++k)
    if (offsets_[k] == off) return diag_[k][static_cast<std::size_t>(i)];
  return 0.0;
}

void SymBandedMatrix::multiply(const std::vector<double>& x, std::vector<double>& y) const {
  const std::size_t n = static_cast<std::size_t>(n_);
  y.assign(n, 0.0);
  const double* xp = x.data();
  double* yp = y.data();
  {
    const double* d = diag_[0].data();
    for (std::size_t i = 0; i < n; ++i) yp[i] = d[i] * xp[i];
  }
  for (std::size_t k = 1; k < offsets_.size(); ++k) {
    const std::size_t off = static_cast<std::size_t>(offsets_[k]);
    const double* d = diag_[k].data();
    for (std::size_t i = 0; i + off < n; ++i) {
      yp[i] += d[i] * xp[i + off];
      yp[i + off] += d[i] * xp[i];
    }
  }
}

std::vector<double> SymBandedMatrix::apply_dirichlet_matrix(
    const std::vector<std::uint8_t>& mask, const std::vector<double>& values) {
  const std::size_t n = static_cast<std::size_t>(n_);
  std::vector<double> correction(n, 0.0);
  // Column sweep: accumulate A(i, j) g_j into free rows i before clearing.
  for (std::size_t j = 0; j < n; ++j) {
    if (!mask[j]) continue;
    const double g = values[j];
    for (std::size_t k = 1; k < offsets_.size(); ++k) {
      const std::size_t off = static_cast<std::size_t>(offsets_[k]);
      if (j + off < n && !mask[j + off]) correction[j + off] += diag_[k][j] * g;
      if (j >= off && !mask[j - off]) correction[j - off] += diag_[k][j - off] * g;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!mask[j]) continue;
    for (std::size_t k = 1; k < offsets_.size(); ++k) {
      const std::size_t off = static_cast<std::size_t>(offsets_[k]);
      if (j + off < n) diag_[k][j] = 0.0;
      if (j >= off) diag_[k][j - off] = 0.0;
    }
    diag_[0][j] = 1.0;
  }
  return correction;
}

void SymBandedMatrix::apply_dirichlet_symmetric(std::vector<double>& rhs,
                                                const std::vector<std::uint8_t>& mask,
                                                const std::vector<double>& values) {
  const std::vector<double> correction = apply_dirichlet_matrix(mask, values);
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    if (mask[i])
      rhs[i] = values[i];
    else
      rhs[i] -= correction[i];
  }
}

std::vector<int> lattice_band_offsets(int nx, int ny, int nz) {
  require(nx >= 2 && ny >= 2 && nz >= 2, "lattice needs at least two nodes per axis");
  const int sx = 1, sy = nx, sz = nx * ny;
  std::vector<int> off = {sx, sy - sx, sy, sz - sy, sz - sx, sz, sz + sy - sx};
  std::sort(off.begin(), off.end());
  off.erase(std::unique(off.begin(), off.end()), off.end());
  (void)nz;
  return off;
}

}  // namespace convect

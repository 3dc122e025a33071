#pragma once

#include <array>
#include <vector>

#include "convect/banded.hpp"
#include "convect/fem.hpp"
#include "convect/types.hpp"

namespace convect {

struct CgReport {
  int iterations = 0;
  double rel_residual = 0.0;
  bool converged = false;
};

/// Two-sided diagonal scaling A~ = D^{-1/2} A D^{-1/2} bringing the main
/// diagonal to unity. Returns s = diag(D^{-1/2}); a solution of the scaled
/// system maps back as x = s .* x~, and right-hand sides map as b~ = s .* b.
/// Fails on non-positive diagonal entries.
std::vector<double> symmetric_scale(SymBandedMatrix& a);

/// Spec-shaped convenience: scales the matrix and one right-hand side.
std::vector<double> symmetric_scale(SymBandedMatrix& a, std::vector<double>& rhs);

/// Hestenes-Stiefel conjugate gradients on an SPD banded matrix. x carries the
/// initial guess. Stops when |r| <= tol * |b| (or immediately when b = 0).
CgReport cghs_solve(const SymBandedMatrix& a, const std::vector<double>& b,
                    std::vector<double>& x, double tol, int max_iter);

/// Three independent CG states advanced in lockstep over one shared matrix
/// (the segregated velocity components).
std::array<CgReport, 3> cghs_solve3(const SymBandedMatrix& a,
                                    const std::array<const std::vector<double>*, 3>& b,
                                    const std::array<std::vector<double>*, 3>& x, double tol,
                                    int max_iter);

/// Banded Cholesky factor L L^T of a symmetric positive definite matrix, with
/// fill-in confined to the band.
class BandedCholesky {
 public:
  /// Factors the leading principal submatrix of size n (pass a.size() for the
  /// whole matrix). Throws if a pivot is not positive.
  void factor(const SymBandedMatrix& a, int n);
  void solve(const std::vector<double>& rhs, std::vector<double>& x) const;
  int size() const { return n_; }

 private:
  int n_ = 0;
  int w_ = 0;                 // lower bandwidth
  std::vector<double> band_;  // row-major, band_[i*(w+1) + (j - i + w)], j in [i-w, i]
};

/// Direct solver for the singular pure-Neumann problem: one unknown (the
/// last-indexed node) is pinned to zero, the reduced system is solved by
/// Cholesky, and the lumped-mass mean of the result is subtracted.
class NeumannZeroMeanSolver {
 public:
  NeumannZeroMeanSolver() = default;
  /// a: the (singular) Neumann matrix; mass: the lumped mass vector defining
  /// the discrete mean; compatibility_tol bounds |sum(rhs)| / |rhs|.
  NeumannZeroMeanSolver(const SymBandedMatrix& a, std::vector<double> mass,
                        double compatibility_tol = 1e-8);

  /// Solves A phi = rhs for the zero-mean phi. Throws on incompatible rhs.
  std::vector<double> solve(const std::vector<double>& rhs) const;

  double domain_volume() const { return volume_; }

 private:
  BandedCholesky chol_;
  std::vector<double> mass_;
  double volume_ = 0.0;
  double compat_tol_ = 1e-8;
  int n_ = 0;
};

/// Everything the pressure projection needs from the discretization.
struct PressureOperators {
  const TwoLevelMesh* mesh = nullptr;
  const std::vector<ElementGeometry>* fine_geom = nullptr;
  const CoarseFineInterp* interp = nullptr;
  const std::vector<double>* fine_mass = nullptr;        // lumped, fine nodes
  const std::vector<double>* coarse_mass = nullptr;      // lumped, coarse nodes
  const std::vector<std::uint8_t>* velocity_mask = nullptr;  // 1 on Gamma
  const NeumannZeroMeanSolver* preconditioner = nullptr;
};

struct PressureProjectionResult {
  std::vector<double> p;  // zero-mean coarse pressure
  CgReport report;
  double divergence_norm = 0.0;  // |integral of omega_k div(u)| after projection
};

/// Uzawa-type preconditioned CG on the pressure unknown for the operator
/// p -> dt * divergence_residual(Z M^{-1} pressure_gradient_rhs(p)), with Z
/// zeroing boundary velocity nodes. On return u holds the projected velocity
/// u_star - dt M^{-1} G p with boundary values re-zeroed. The iteration stops
/// when the Euclidean norm of the weak divergence residual is <= tol.
PressureProjectionResult pressure_pcg(const PressureOperators& ops,
                                      std::array<std::vector<double>, 3>& u,
                                      const std::vector<double>& p_init, double dt, double tol,
                                      int max_iter);

}  // namespace convect

#include "convect/solvers.hpp"

#include <algorithm>
#include <cmath>

namespace convect {

namespace {

double dot_v(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm_v(const std::vector<double>& a) { return std::sqrt(dot_v(a, a)); }

}  // namespace

std::vector<double> symmetric_scale(SymBandedMatrix& a) {
  const int n = a.size();
  std::vector<double> s(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double d = a.diag_entry(0, i);
    require(d > 0.0, "symmetric scaling requires a positive diagonal");
    s[static_cast<std::size_t>(i)] = 1.0 / std::sqrt(d);
  }
  const auto& offsets = a.offsets();
  for (std::size_t k = 0; k < offsets.size(); ++k) {
    const int off = offsets[k];
    for (int i = 0; i + off < n; ++i)
      a.diag_entry(static_cast<int>(k), i) *=
          s[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(i + off)];
  }
  return s;
}

std::vector<double> symmetric_scale(SymBandedMatrix& a, std::vector<double>& rhs) {
  std::vector<double> s = symmetric_scale(a);
  for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] *= s[i];
  return s;
}

CgReport cghs_solve(const SymBandedMatrix& a, const std::vector<double>& b,
                    std::vector<double>& x, double tol, int max_iter) {
  CgReport rep;
  const double bnorm = norm_v(b);
  if (bnorm == 0.0) {
    x.assign(b.size(), 0.0);
    rep.converged = true;
    return rep;
  }
  std::vector<double> r(b.size()), d, q;
  a.multiply(x, r);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
  double rs = dot_v(r, r);
  if (std::sqrt(rs) <= tol * bnorm) {
    rep.converged = true;
    rep.rel_residual = std::sqrt(rs) / bnorm;
    return rep;
  }
  d = r;
  for (int it = 1; it <= max_iter; ++it) {
    a.multiply(d, q);
    const double dq = dot_v(d, q);
    if (dq <= 0.0) break;  // loss of positive definiteness
    const double alpha = rs / dq;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += alpha * d[i];
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= alpha * q[i];
    const double rs_new = dot_v(r, r);
    rep.iterations = it;
    rep.rel_residual = std::sqrt(rs_new) / bnorm;
    if (rep.rel_residual <= tol) {
      rep.converged = true;
      return rep;
    }
    const double beta = rs_new / rs;
    rs = rs_new;
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = r[i] + beta * d[i];
  }
  return rep;
}

std::array<CgReport, 3> cghs_solve3(const SymBandedMatrix& a,
                                    const std::array<const std::vector<double>*, 3>& b,
                                    const std::array<std::vector<double>*, 3>& x, double tol,
                                    int max_iter) {
  std::array<CgReport, 3> rep;
  std::array<double, 3> bnorm;
  std::array<std::vector<double>, 3> r, d, q;
  std::array<double, 3> rs{};
  std::array<bool, 3> active{};
  for (int c = 0; c < 3; ++c) {
    bnorm[static_cast<std::size_t>(c)] = norm_v(*b[static_cast<std::size_t>(c)]);
    if (bnorm[static_cast<std::size_t>(c)] == 0.0) {
      x[static_cast<std::size_t>(c)]->assign(b[static_cast<std::size_t>(c)]->size(), 0.0);
      rep[static_cast<std::size_t>(c)].converged = true;
      continue;
    }
    auto& rc = r[static_cast<std::size_t>(c)];
    a.multiply(*x[static_cast<std::size_t>(c)], rc);
    for (std::size_t i = 0; i < rc.size(); ++i)
      rc[i] = (*b[static_cast<std::size_t>(c)])[i] - rc[i];
    rs[static_cast<std::size_t>(c)] = dot_v(rc, rc);
    rep[static_cast<std::size_t>(c)].rel_residual =
        std::sqrt(rs[static_cast<std::size_t>(c)]) / bnorm[static_cast<std::size_t>(c)];
    if (rep[static_cast<std::size_t>(c)].rel_residual <= tol) {
      rep[static_cast<std::size_t>(c)].converged = true;
      continue;
    }
    d[static_cast<std::size_t>(c)] = rc;
    active[static_cast<std::size_t>(c)] = true;
  }
  for (int it = 1; it <= max_iter; ++it) {
    bool any = false;
    for (std::size_t c = 0; c < 3; ++c) {
      if (!active[c]) continue;
      any = true;
      a.multiply(d[c], q[c]);
      const double dq = dot_v(d[c], q[c]);
      if (dq <= 0.0) {
        active[c] = false;
        continue;
      }
      const double alpha = rs[c] / dq;
      auto& xc = *x[c];
      for (std::size_t i = 0; i < xc.size(); ++i) xc[i] += alpha * d[c][i];
      for (std::size_t i = 0; i < r[c].size(); ++i) r[c][i] -= alpha * q[c][i];
      const double rs_new = dot_v(r[c], r[c]);
      rep[c].iterations = it;
      rep[c].rel_residual = std::sqrt(rs_new) / bnorm[c];
      if (rep[c].rel_residual <= tol) {
        rep[c].converged = true;
        active[c] = false;
        continue;
      }
      const double beta = rs_new / rs[c];
      rs[c] = rs_new;
      for (std::size_t i = 0; i < d[c].size(); ++i) d[c][i] = r[c][i] + beta * d[c][i];
    }
    if (!any) break;
  }
  return rep;
}

void BandedCholesky::factor(const SymBandedMatrix& a, int n) {
  require(n >= 1 && n <= a.size(), "BandedCholesky: bad reduced size");
  n_ = n;
  w_ = std::min(a.bandwidth(), n - 1);
  const std::size_t stride = static_cast<std::size_t>(w_) + 1;
  band_.assign(static_cast<std::size_t>(n_) * stride, 0.0);
  auto at = [&](int i, int j) -> double& {
    return band_[static_cast<std::size_t>(i) * stride + static_cast<std::size_t>(j - i + w_)];
  };
  for (int i = 0; i < n_; ++i)
    for (int j = std::max(0, i - w_); j <= i; ++j) at(i, j) = a.get(i, j);
  for (int j = 0; j < n_; ++j) {
    double diag = at(j, j);
    for (int k = std::max(0, j - w_); k < j; ++k) diag -= at(j, k) * at(j, k);
    require(diag > 0.0, "BandedCholesky: matrix is not positive definite");
    const double ljj = std::sqrt(diag);
    at(j, j) = ljj;
    const int iend = std::min(n_ - 1, j + w_);
    for (int i = j + 1; i <= iend; ++i) {
      double s = at(i, j);
      for (int k = std::max(0, i - w_); k < j; ++k) s -= at(i, k) * at(j, k);
      at(i, j) = s / ljj;
    }
  }
}

void BandedCholesky::solve(const std::vector<double>& rhs, std::vector<double>& x) const {
  const std::size_t stride = static_cast<std::size_t>(w_) + 1;
  auto at = [&](int i, int j) {
    return band_[static_cast<std::size_t>(i) * stride + static_cast<std::size_t>(j - i + w_)];
  };
  x.assign(static_cast<std::size_t>(n_), 0.0);
  for (int i = 0; i < n_; ++i) {
    double s = rhs[static_cast<std::size_t>(i)];
    for (int k = std::max(0, i - w_); k < i; ++k) s -= at(i, k) * x[static_cast<std::size_t>(k)];
    x[static_cast<std::size_t>(i)] = s / at(i, i);
  }
  for (int i = n_ - 1; i >= 0; --i) {
    double s = x[static_cast<std::size_t>(i)];
    const int kend = std::min(n_ - 1, i + w_);
    for (int k = i + 1; k <= kend; ++k) s -= at(k, i) * x[static_cast<std::size_t>(k)];
    x[static_cast<std::size_t>(i)] = s / at(i, i);
  }
}

NeumannZeroMeanSolver::NeumannZeroMeanSolver(const SymBandedMatrix& a, std::vector<double> mass,
                                             double compatibility_tol)
    : mass_(std::move(mass)), compat_tol_(compatibility_tol), n_(a.size()) {
  require(n_ >= 2, "Neumann solver needs at least two unknowns");
  for (double m : mass_) volume_ += m;
  // Pin the last-indexed unknown: factor the leading (N-1)x(N-1) block.
  chol_.factor(a, n_ - 1);
}

std::vector<double> NeumannZeroMeanSolver::solve(const std::vector<double>& rhs) const {
  double sum = 0.0;
  for (double v : rhs) sum += v;
  const double scale = std::max(norm_v(rhs), 1e-300);
  require(std::abs(sum) <= compat_tol_ * scale,
          "Neumann problem: incompatible right-hand side (nonzero mean)");

  std::vector<double> reduced(rhs.begin(), rhs.end() - 1);
  std::vector<double> phi(static_cast<std::size_t>(n_), 0.0);
  std::vector<double> sol;
  chol_.solve(reduced, sol);
  std::copy(sol.begin(), sol.end(), phi.begin());

  double mean = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) mean += mass_[i] * phi[i];
  mean /= volume_;
  for (double& v : phi) v -= mean;
  return phi;
}

namespace {

// S p = dt * D(Z M^{-1} G p): the weak divergence of the velocity increment
// driven by p. Symmetric positive semi-definite with the constant nullspace.
struct SchurOperator {
  const PressureOperators& ops;
  double dt;
  mutable std::array<std::vector<double>, 3> grad;

  std::vector<double> apply(const std::vector<double>& p) const {
    pressure_gradient_rhs(*ops.mesh, *ops.fine_geom, *ops.interp, p, grad);
    const auto& mass = *ops.fine_mass;
    const auto& mask = *ops.velocity_mask;
    for (auto& g : grad)
      for (std::size_t i = 0; i < g.size(); ++i) g[i] = mask[i] ? 0.0 : g[i] / mass[i];
    std::vector<double> out = divergence_residual(
        *ops.mesh, *ops.fine_geom, *ops.interp, {&grad[0], &grad[1], &grad[2]});
    for (double& v : out) v *= dt;
    return out;
  }
};

}  // namespace

PressureProjectionResult pressure_pcg(const PressureOperators& ops,
                                      std::array<std::vector<double>, 3>& u,
                                      const std::vector<double>& p_init, double dt, double tol,
                                      int max_iter) {
  PressureProjectionResult res;
  const SchurOperator schur{ops, dt, {}};

  // u_star must vanish on Gamma; enforcing it here also zeroes the right-hand
  // side on the two boundary-locked corner pressure modes, which the Schur
  // operator cannot reach.
  for (auto& c : u)
    for (std::size_t i = 0; i < c.size(); ++i)
      if ((*ops.velocity_mask)[i]) c[i] = 0.0;

  std::vector<double> b =
      divergence_residual(*ops.mesh, *ops.fine_geom, *ops.interp, {&u[0], &u[1], &u[2]});

  res.p = p_init;
  res.p.resize(ops.mesh->coarse_nodes.size(), 0.0);
  std::vector<double> r = schur.apply(res.p);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];

  // The residual is compatible by construction; strip the roundoff drift in
  // the constant direction before handing it to the Neumann solver.
  const auto precondition = [&](std::vector<double> rhs) {
    double mean = 0.0;
    for (double v : rhs) mean += v;
    mean /= static_cast<double>(rhs.size());
    for (double& v : rhs) v -= mean;
    return ops.preconditioner->solve(rhs);
  };

  double rnorm = norm_v(r);
  if (rnorm > tol) {
    std::vector<double> z = precondition(r);
    std::vector<double> d = z;
    double rho = dot_v(r, z);
    for (int it = 1; it <= max_iter; ++it) {
      const std::vector<double> q = schur.apply(d);
      const double dq = dot_v(d, q);
      if (dq <= 0.0) break;
      const double alpha = rho / dq;
      for (std::size_t i = 0; i < res.p.size(); ++i) res.p[i] += alpha * d[i];
      for (std::size_t i = 0; i < r.size(); ++i) r[i] -= alpha * q[i];
      res.report.iterations = it;
      rnorm = norm_v(r);
      if (rnorm <= tol) break;
      z = precondition(r);
      const double rho_new = dot_v(r, z);
      const double beta = rho_new / rho;
      rho = rho_new;
      for (std::size_t i = 0; i < d.size(); ++i) d[i] = z[i] + beta * d[i];
    }
  }
  res.report.converged = (rnorm <= tol);
  res.report.rel_residual = rnorm;
  res.divergence_norm = rnorm;

  // Projected velocity: u -= dt M^{-1} G p on free nodes, boundary re-zeroed.
  std::array<std::vector<double>, 3> grad;
  pressure_gradient_rhs(*ops.mesh, *ops.fine_geom, *ops.interp, res.p, grad);
  const auto& mass = *ops.fine_mass;
  const auto& mask = *ops.velocity_mask;
  for (int c = 0; c < 3; ++c) {
    auto& uc = u[static_cast<std::size_t>(c)];
    const auto& gc = grad[static_cast<std::size_t>(c)];
    for (std::size_t i = 0; i < uc.size(); ++i)
      uc[i] = mask[i] ? 0.0 : uc[i] - dt * gc[i] / mass[i];
  }

  // Zero lumped-mass mean, exactly as the Neumann step does.
  const auto& cmass = *ops.coarse_mass;
  double mean = 0.0, vol = 0.0;
  for (std::size_t i = 0; i < res.p.size(); ++i) {
    mean += cmass[i] * res.p[i];
    vol += cmass[i];
  }
  mean /= vol;
  for (double& v : res.p) v -= mean;
  return res;
}

}  // namespace convect

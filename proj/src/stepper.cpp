#include "convect/stepper.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "convect/model.hpp"

namespace convect {

namespace {

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double norm2_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

double relative_change(const std::vector<double>& now, const std::vector<double>& before) {
  const double diff = norm2_diff(now, before);
  const double scale = norm2(now);
  if (scale == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return diff / scale;
}

}  // namespace

Stepper::Stepper(const TwoLevelMesh& mesh, const RunConfig& cfg)
    : mesh_(mesh), cfg_(cfg), hash_(config_hash(cfg)) {
  fine_geom_ = compute_element_geometry(mesh_.fine_nodes, mesh_.fine_tets);
  fine_mass_ = lumped_mass(mesh_.fine_node_count(), mesh_.fine_tets, fine_geom_);
  {
    const auto coarse_geom = compute_element_geometry(mesh_.coarse_nodes, mesh_.coarse_tets);
    coarse_mass_ = lumped_mass(mesh_.coarse_node_count(), mesh_.coarse_tets, coarse_geom);
  }
  interp_ = CoarseFineInterp::build(mesh_);

  const std::size_t nf = static_cast<std::size_t>(mesh_.fine_node_count());
  wall_mask_.assign(nf, 0);
  theta_mask_.assign(nf, 0);
  theta_bc_.assign(nf, 0.0);
  zeros_.assign(nf, 0.0);
  for (std::size_t i = 0; i < nf; ++i) {
    const BoundaryTag tag = mesh_.fine_tag[i];
    wall_mask_[i] = (tag != BoundaryTag::Interior);
    if (tag == BoundaryTag::Left) {
      theta_mask_[i] = 1;
      theta_bc_[i] = 1.0;
    } else if (tag == BoundaryTag::Right) {
      theta_mask_[i] = 1;
    }
  }

  // Temperature system (M/dt + K), hot/cold wall Dirichlet, then unit diagonal.
  a_theta_ = assemble_stiffness(mesh_, Level::Fine, 1.0);
  for (int i = 0; i < a_theta_.size(); ++i)
    a_theta_.diag_entry(0, i) += fine_mass_[static_cast<std::size_t>(i)] / cfg_.dt;
  theta_bc_correction_ = a_theta_.apply_dirichlet_matrix(theta_mask_, theta_bc_);
  theta_scale_ = symmetric_scale(a_theta_);

  // Velocity system (M/dt + Pr K), no-slip everywhere; zero values leave no
  // rhs correction.
  a_vel_ = assemble_stiffness(mesh_, Level::Fine, cfg_.pr);
  for (int i = 0; i < a_vel_.size(); ++i)
    a_vel_.diag_entry(0, i) += fine_mass_[static_cast<std::size_t>(i)] / cfg_.dt;
  a_vel_.apply_dirichlet_matrix(wall_mask_, zeros_);
  vel_scale_ = symmetric_scale(a_vel_);

  // Pressure preconditioner: coarse pure-Neumann Laplacian, Cholesky-factored
  // once with the last unknown pinned.
  neumann_ = assemble_stiffness(mesh_, Level::Coarse, 1.0);
  neumann_solver_ = NeumannZeroMeanSolver(neumann_, coarse_mass_, 1e-6);

  pressure_ops_.mesh = &mesh_;
  pressure_ops_.fine_geom = &fine_geom_;
  pressure_ops_.interp = &interp_;
  pressure_ops_.fine_mass = &fine_mass_;
  pressure_ops_.coarse_mass = &coarse_mass_;
  pressure_ops_.velocity_mask = &wall_mask_;
  pressure_ops_.preconditioner = &neumann_solver_;

  h_min_ = mesh_.h_min_fine();
  tau_ = cfg_.dt / cfg_.q;
}

SplitState Stepper::initialize() const {
  SplitState s;
  const std::size_t nf = static_cast<std::size_t>(mesh_.fine_node_count());
  for (auto& c : s.u) c.assign(nf, 0.0);
  s.theta = theta_bc_;  // 0 in the interior, 1 on the hot wall
  s.p.assign(static_cast<std::size_t>(mesh_.coarse_node_count()), 0.0);
  return s;
}

void Stepper::pressure_step(SplitState& s, StepDiagnostics* diag) const {
  PressureProjectionResult res =
      pressure_pcg(pressure_ops_, s.u, s.p, cfg_.dt, cfg_.pcg_tol, cfg_.pcg_max_iter);
  require(res.report.converged, "pressure projection did not converge (residual " +
                                    std::to_string(res.divergence_norm) + ")");
  s.p = std::move(res.p);
  if (diag) {
    diag->pcg_iterations = res.report.iterations;
    diag->divergence_norm = res.divergence_norm;
  }
}

void Stepper::transport_step(SplitState& s, StepDiagnostics* diag) const {
  double umax2 = 0.0;
  const std::size_t nf = s.theta.size();
  for (std::size_t i = 0; i < nf; ++i) {
    const double m2 =
        s.u[0][i] * s.u[0][i] + s.u[1][i] * s.u[1][i] + s.u[2][i] * s.u[2][i];
    if (m2 > umax2) umax2 = m2;
  }
  const double cfl = tau_ * std::sqrt(umax2) / h_min_;
  if (diag) {
    diag->cfl = cfl;
    diag->cfl_warning = cfl > 1.0;
  }
  if (umax2 == 0.0) return;  // transport is the identity

  static thread_local AdvectionKernel kernel;
  kernel.build(mesh_.fine_tets, fine_geom_, {&s.u[0], &s.u[1], &s.u[2]});

  static thread_local std::vector<double> prev, cur, work;
  auto transport_field = [&](std::vector<double>& f, bool is_theta) {
    cur = f;
    // Initialization substep: one explicit lumped-mass step of the
    // first-order transport equation.
    kernel.apply_first_order(cur, work);
    prev = cur;
    for (std::size_t i = 0; i < nf; ++i) cur[i] -= tau_ * work[i] / fine_mass_[i];
    if (is_theta)
      for (std::size_t i = 0; i < nf; ++i)
        if (theta_mask_[i]) cur[i] = theta_bc_[i];
    // Second-order wave scheme for the remaining substeps.
    for (int k = 1; k < cfg_.q; ++k) {
      kernel.apply_wave(cur, work);
      for (std::size_t i = 0; i < nf; ++i) {
        const double next = 2.0 * cur[i] - prev[i] - tau_ * tau_ * work[i] / fine_mass_[i];
        prev[i] = cur[i];
        cur[i] = next;
      }
      if (is_theta)
        for (std::size_t i = 0; i < nf; ++i)
          if (theta_mask_[i]) cur[i] = theta_bc_[i];
    }
    f = cur;
  };

  transport_field(s.theta, true);
  for (auto& comp : s.u) transport_field(comp, false);
}

void Stepper::solve_temperature(SplitState& s, StepDiagnostics* diag) const {
  const std::size_t nf = s.theta.size();
  static thread_local std::vector<double> b, x;
  b.resize(nf);
  for (std::size_t i = 0; i < nf; ++i) {
    if (theta_mask_[i])
      b[i] = theta_bc_[i];
    else
      b[i] = fine_mass_[i] / cfg_.dt * s.theta[i] - theta_bc_correction_[i];
    b[i] *= theta_scale_[i];
  }
  x.resize(nf);
  for (std::size_t i = 0; i < nf; ++i) x[i] = s.theta[i] / theta_scale_[i];
  const CgReport rep = cghs_solve(a_theta_, b, x, cfg_.cg_tol, cfg_.cg_max_iter);
  require(rep.converged, "temperature diffusion solve did not converge");
  for (std::size_t i = 0; i < nf; ++i)
    s.theta[i] = theta_mask_[i] ? theta_bc_[i] : x[i] * theta_scale_[i];
  if (diag) diag->theta_iterations = rep.iterations;
}

void Stepper::solve_velocity(SplitState& s, StepDiagnostics* diag) const {
  const std::size_t nf = s.theta.size();
  const double buoyancy = cfg_.ra * cfg_.pr;
  static thread_local std::array<std::vector<double>, 3> b, x;
  for (int c = 0; c < 3; ++c) {
    auto& bc = b[static_cast<std::size_t>(c)];
    auto& xc = x[static_cast<std::size_t>(c)];
    bc.resize(nf);
    xc.resize(nf);
    const auto& uc = s.u[static_cast<std::size_t>(c)];
    for (std::size_t i = 0; i < nf; ++i) {
      double v = wall_mask_[i] ? 0.0 : fine_mass_[i] / cfg_.dt * uc[i];
      if (c == kBuoyancyAxis && !wall_mask_[i]) v += buoyancy * fine_mass_[i] * s.theta[i];
      bc[i] = v * vel_scale_[i];
      xc[i] = uc[i] / vel_scale_[i];
    }
  }
  const auto reps = cghs_solve3(a_vel_, {&b[0], &b[1], &b[2]}, {&x[0], &x[1], &x[2]},
                                cfg_.cg_tol, cfg_.cg_max_iter);
  int iters = 0;
  for (int c = 0; c < 3; ++c) {
    require(reps[static_cast<std::size_t>(c)].converged,
            "velocity diffusion solve did not converge");
    iters = std::max(iters, reps[static_cast<std::size_t>(c)].iterations);
    auto& uc = s.u[static_cast<std::size_t>(c)];
    const auto& xc = x[static_cast<std::size_t>(c)];
    for (std::size_t i = 0; i < nf; ++i) uc[i] = wall_mask_[i] ? 0.0 : xc[i] * vel_scale_[i];
  }
  if (diag) diag->u_iterations = iters;
}

void Stepper::diffusion_step(SplitState& s, StepDiagnostics* diag) const {
  solve_temperature(s, diag);  // temperature first; its converged value feeds
  solve_velocity(s, diag);     // the buoyancy source of the velocity systems
}

StepDiagnostics Stepper::advance(SplitState& s) const {
  StepDiagnostics diag;
  pressure_step(s, &diag);
  transport_step(s, &diag);
  diffusion_step(s, &diag);
  s.step += 1;
  s.t = s.step * cfg_.dt;
  diag.step = s.step;
  diag.t = s.t;
  double tmin = s.theta[0], tmax = s.theta[0];
  for (double v : s.theta) {
    tmin = std::min(tmin, v);
    tmax = std::max(tmax, v);
  }
  diag.theta_min = tmin;
  diag.theta_max = tmax;
  return diag;
}

SteadyRunResult Stepper::run_to_steady(
    SplitState& s,
    const std::function<void(const SplitState&, const StepDiagnostics&)>& on_step) const {
  SteadyRunResult result;
  const int limit = cfg_.fixed_steps > 0 ? cfg_.fixed_steps : cfg_.max_steps;
  static thread_local std::array<std::vector<double>, 3> u_old;
  static thread_local std::vector<double> theta_old;
  while (s.step < limit) {
    for (int c = 0; c < 3; ++c) u_old[static_cast<std::size_t>(c)] = s.u[static_cast<std::size_t>(c)];
    theta_old = s.theta;
    StepDiagnostics diag = advance(s);
    for (int c = 0; c < 3; ++c)
      diag.du[static_cast<std::size_t>(c)] =
          relative_change(s.u[static_cast<std::size_t>(c)], u_old[static_cast<std::size_t>(c)]);
    diag.dtheta = relative_change(s.theta, theta_old);
    ++result.steps_taken;
    if (on_step) on_step(s, diag);
    if (cfg_.fixed_steps == 0) {
      bool steady = diag.du[0] <= cfg_.eps_steady && diag.du[1] <= cfg_.eps_steady &&
                    diag.du[2] <= cfg_.eps_steady;
      if (cfg_.steady_check_theta) steady = steady && diag.dtheta <= cfg_.eps_steady;
      if (steady) {
        result.steady = true;
        return result;
      }
    }
  }
  result.steady = (cfg_.fixed_steps > 0);  // a fixed-length run completed as requested
  return result;
}

double Stepper::pressure_mean(const SplitState& s) const {
  double mean = 0.0, vol = 0.0;
  for (std::size_t i = 0; i < s.p.size(); ++i) {
    mean += coarse_mass_[i] * s.p[i];
    vol += coarse_mass_[i];
  }
  return std::abs(mean) / vol;
}

namespace {
constexpr char kCheckpointMagic[8] = {'C', 'V', 'C', 'K', 'P', 'T', '0', '1'};
}

void Stepper::save_checkpoint(const std::string& path, const SplitState& s) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(out.good(), "cannot open checkpoint file for writing: " + path);
  out.write(kCheckpointMagic, sizeof kCheckpointMagic);
  const std::uint64_t nf = s.theta.size(), nc = s.p.size();
  const std::int64_t step = s.step;
  out.write(reinterpret_cast<const char*>(&hash_), sizeof hash_);
  out.write(reinterpret_cast<const char*>(&step), sizeof step);
  out.write(reinterpret_cast<const char*>(&s.t), sizeof s.t);
  out.write(reinterpret_cast<const char*>(&nf), sizeof nf);
  out.write(reinterpret_cast<const char*>(&nc), sizeof nc);
  for (const auto& c : s.u)
    out.write(reinterpret_cast<const char*>(c.data()), static_cast<std::streamsize>(nf * 8));
  out.write(reinterpret_cast<const char*>(s.theta.data()), static_cast<std::streamsize>(nf * 8));
  out.write(reinterpret_cast<const char*>(s.p.data()), static_cast<std::streamsize>(nc * 8));
  require(out.good(), "checkpoint write failed: " + path);
}

SplitState Stepper::load_checkpoint(const std::string& path) const {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), "cannot open checkpoint file: " + path);
  char magic[8];
  in.read(magic, sizeof magic);
  require(in.good() && std::memcmp(magic, kCheckpointMagic, sizeof magic) == 0,
          "not a checkpoint file: " + path);
  std::uint64_t hash = 0, nf = 0, nc = 0;
  std::int64_t step = 0;
  double t = 0.0;
  in.read(reinterpret_cast<char*>(&hash), sizeof hash);
  in.read(reinterpret_cast<char*>(&step), sizeof step);
  in.read(reinterpret_cast<char*>(&t), sizeof t);
  in.read(reinterpret_cast<char*>(&nf), sizeof nf);
  in.read(reinterpret_cast<char*>(&nc), sizeof nc);
  require(hash == hash_, "checkpoint belongs to a different configuration: " + path);
  require(nf == static_cast<std::uint64_t>(mesh_.fine_node_count()) &&
              nc == static_cast<std::uint64_t>(mesh_.coarse_node_count()),
          "checkpoint mesh sizes do not match: " + path);
  SplitState s;
  s.step = static_cast<int>(step);
  s.t = t;
  for (auto& c : s.u) {
    c.resize(nf);
    in.read(reinterpret_cast<char*>(c.data()), static_cast<std::streamsize>(nf * 8));
  }
  s.theta.resize(nf);
  in.read(reinterpret_cast<char*>(s.theta.data()), static_cast<std::streamsize>(nf * 8));
  s.p.resize(nc);
  in.read(reinterpret_cast<char*>(s.p.data()), static_cast<std::streamsize>(nc * 8));
  require(in.good(), "checkpoint read failed: " + path);
  return s;
}

}  // namespace convect

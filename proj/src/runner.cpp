#include "convect/runner.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "convect/postprocess.hpp"
#include "convect/stepper.hpp"

namespace convect {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct RunStats {
  double max_div_residual = 0.0;
  double max_cfl = 0.0;
  int max_pcg_iterations = 0;
  int max_theta_iterations = 0;
  int max_u_iterations = 0;
  int cfl_warnings = 0;
  StepDiagnostics last;
};

void write_snapshot(const std::string& path, const TwoLevelMesh& mesh, const SplitState& s,
                    std::uint64_t hash) {
  std::ofstream out(path, std::ios::trunc);
  require(out.good(), "cannot open snapshot file: " + path);
  SnapshotFields f;
  f.ux = &s.u[0];
  f.uy = &s.u[1];
  f.uz = &s.u[2];
  f.theta = &s.theta;
  f.p = &s.p;
  export_mesh(out, mesh, hash, &f);
  require(out.good(), "snapshot write failed: " + path);
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& log) {
  const std::uint64_t hash = config_hash(cfg);

  TwoLevelMesh mesh;
  try {
    mesh = build_two_level_mesh(cfg.part_x, cfg.part_y, cfg.part_z);
  } catch (const std::exception& e) {
    log << "error: mesh construction failed: " << e.what() << "\n";
    return kConfigError;
  }
  const MeshValidation check = validate_mesh(mesh);
  if (!check.ok()) {
    log << "error: mesh validation failed:\n";
    for (const auto& v : check.violations) log << "  " << v << "\n";
    return kSolverError;
  }
  log << "mesh: " << mesh.nfx() << "x" << mesh.nfy() << "x" << mesh.nfz() << " fine nodes, "
      << mesh.fine_tets.size() << " fine tets, " << mesh.coarse_tets.size() << " coarse tets\n";

  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec) {
    log << "error: cannot create output directory " << cfg.out_dir << "\n";
    return kIoError;
  }
  auto path = [&](const char* name) { return cfg.out_dir + "/" + name; };

  if (!cfg.restart.empty() && !std::filesystem::exists(cfg.restart)) {
    log << "error: restart checkpoint not found: " << cfg.restart << "\n";
    return kIoError;
  }

  try {
    Stepper stepper(mesh, cfg);
    SplitState state =
        cfg.restart.empty() ? stepper.initialize() : stepper.load_checkpoint(cfg.restart);
    if (!cfg.restart.empty())
      log << "restarted from " << cfg.restart << " at step " << state.step << "\n";

    std::ofstream diag_out(path("diagnostics.csv"), std::ios::trunc);
    require(diag_out.good(), "cannot open diagnostics.csv");
    {
      char buf[96];
      std::snprintf(buf, sizeof buf, "# config_hash %016llx\n",
                    static_cast<unsigned long long>(hash));
      diag_out << buf;
    }
    diag_out << "step,t,cfl,pcg_iters,div_residual,theta_iters,u_iters,du_x,du_y,du_z,dtheta,"
                "theta_min,theta_max\n";

    RunStats stats;
    const auto on_step = [&](const SplitState& s, const StepDiagnostics& d) {
      char buf[512];
      std::snprintf(buf, sizeof buf,
                    "%d,%.17g,%.17g,%d,%.17g,%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", d.step,
                    d.t, d.cfl, d.pcg_iterations, d.divergence_norm, d.theta_iterations,
                    d.u_iterations, d.du[0], d.du[1], d.du[2], d.dtheta, d.theta_min, d.theta_max);
      diag_out << buf;
      stats.max_div_residual = std::max(stats.max_div_residual, d.divergence_norm);
      stats.max_cfl = std::max(stats.max_cfl, d.cfl);
      stats.max_pcg_iterations = std::max(stats.max_pcg_iterations, d.pcg_iterations);
      stats.max_theta_iterations = std::max(stats.max_theta_iterations, d.theta_iterations);
      stats.max_u_iterations = std::max(stats.max_u_iterations, d.u_iterations);
      stats.cfl_warnings += d.cfl_warning ? 1 : 0;
      stats.last = d;
      if (cfg.snapshot_every > 0 && d.step % cfg.snapshot_every == 0) {
        char name[64];
        std::snprintf(name, sizeof name, "snapshot_%06d.snap", d.step);
        write_snapshot(path(name), mesh, s, hash);
      }
      if (cfg.checkpoint_every > 0 && d.step % cfg.checkpoint_every == 0)
        stepper.save_checkpoint(path("checkpoint.bin"), s);
      if (d.step % 200 == 0)
        log << "step " << d.step << "  t=" << d.t << "  du=(" << d.du[0] << "," << d.du[1] << ","
            << d.du[2] << ")  dtheta=" << d.dtheta << "  pcg=" << d.pcg_iterations << "\n";
    };

    const SteadyRunResult result = stepper.run_to_steady(state, on_step);
    log << (result.steady ? "steady state reached" : "stopped before steady state")
        << " after " << state.step << " steps (t = " << state.t << ")\n";

    // Artifacts report the solenoidal stage field: one more pressure
    // sub-step projects away the final step's un-projected buoyancy impulse.
    StepDiagnostics proj;
    stepper.pressure_step(state, &proj);
    stats.max_div_residual = std::max(stats.max_div_residual, proj.divergence_norm);

    write_snapshot(path("fields.snap"), mesh, state, hash);

    const NusseltReport nu = nusselt(mesh, state.theta);
    const PeakReport peaks = uy_max_profile(mesh, state.u[1]);
    {
      std::ofstream out(path("nu_av.csv"), std::ios::trunc);
      require(out.good(), "cannot open nu_av.csv");
      write_nu_av_csv(out, nu, hash);
    }
    {
      std::ofstream out(path("uy_max.csv"), std::ios::trunc);
      require(out.good(), "cannot open uy_max.csv");
      write_uy_max_csv(out, peaks, hash);
    }

    bool have_defects = false;
    SymmetryDefects defects;
    try {
      defects = symmetry_defects(mesh, {&state.u[0], &state.u[1], &state.u[2]}, state.theta,
                                 state.p);
      have_defects = true;
    } catch (const std::exception&) {
      // asymmetric lattice: defects are not defined for this run
    }

    {
      std::ofstream out(path("summary.txt"), std::ios::trunc);
      require(out.good(), "cannot open summary.txt");
      char buf[96];
      std::snprintf(buf, sizeof buf, "# config_hash %016llx\n",
                    static_cast<unsigned long long>(hash));
      out << buf;
      out << "ra = " << fmt(cfg.ra) << "\n";
      out << "pr = " << fmt(cfg.pr) << "\n";
      out << "fine_nodes = " << mesh.nfx() << " " << mesh.nfy() << " " << mesh.nfz() << "\n";
      out << "dt = " << fmt(cfg.dt) << "\n";
      out << "q = " << cfg.q << "\n";
      out << "eps_steady = " << fmt(cfg.eps_steady) << "\n";
      out << "steps = " << state.step << "\n";
      out << "t_final = " << fmt(state.t) << "\n";
      out << "steady = " << (result.steady ? 1 : 0) << "\n";
      out << "nu_overall = " << fmt(nu.nu_overall) << "\n";
      out << "nu_av_mid = " << fmt(nu.nu_av_mid) << "\n";
      out << "uy_max_peak = " << fmt(peaks.peak) << "\n";
      out << "uy_max_peak_x = " << fmt(peaks.peak_location.x) << "\n";
      out << "uy_max_peak_y = " << fmt(peaks.peak_location.y) << "\n";
      out << "uy_max_peak_z = " << fmt(peaks.peak_location.z) << "\n";
      out << "final_du_x = " << fmt(stats.last.du[0]) << "\n";
      out << "final_du_y = " << fmt(stats.last.du[1]) << "\n";
      out << "final_du_z = " << fmt(stats.last.du[2]) << "\n";
      out << "final_dtheta = " << fmt(stats.last.dtheta) << "\n";
      out << "theta_min = " << fmt(stats.last.theta_min) << "\n";
      out << "theta_max = " << fmt(stats.last.theta_max) << "\n";
      out << "pressure_mean = " << fmt(stepper.pressure_mean(state)) << "\n";
      if (have_defects) {
        out << "defect_z_ux = " << fmt(defects.z_mirror_ux) << "\n";
        out << "defect_z_uy = " << fmt(defects.z_mirror_uy) << "\n";
        out << "defect_z_uz = " << fmt(defects.z_mirror_uz) << "\n";
        out << "defect_z_theta = " << fmt(defects.z_mirror_theta) << "\n";
        out << "defect_z_p = " << fmt(defects.z_mirror_p) << "\n";
        out << "defect_c_ux = " << fmt(defects.centro_ux) << "\n";
        out << "defect_c_uy = " << fmt(defects.centro_uy) << "\n";
        out << "defect_c_uz = " << fmt(defects.centro_uz) << "\n";
        out << "defect_c_p = " << fmt(defects.centro_p) << "\n";
        out << "defect_c_theta = " << fmt(defects.centro_theta) << "\n";
      }
      require(out.good(), "summary write failed");
    }

    // Windowed solver diagnostics live apart from the summary: a restarted
    // run's maxima cover only its own step range.
    {
      std::ofstream out(path("run_stats.txt"), std::ios::trunc);
      require(out.good(), "cannot open run_stats.txt");
      char buf[96];
      std::snprintf(buf, sizeof buf, "# config_hash %016llx\n",
                    static_cast<unsigned long long>(hash));
      out << buf;
      out << "first_step = " << state.step - result.steps_taken << "\n";
      out << "last_step = " << state.step << "\n";
      out << "max_div_residual = " << fmt(stats.max_div_residual) << "\n";
      out << "max_pcg_iters = " << stats.max_pcg_iterations << "\n";
      out << "max_theta_iters = " << stats.max_theta_iterations << "\n";
      out << "max_u_iters = " << stats.max_u_iterations << "\n";
      out << "max_cfl = " << fmt(stats.max_cfl) << "\n";
      out << "cfl_warnings = " << stats.cfl_warnings << "\n";
    }

    const double p_mean = stepper.pressure_mean(state);
    if (p_mean > cfg.mean_tol)
      log << "warning: pressure mean " << p_mean << " exceeds mean_tol " << cfg.mean_tol << "\n";

    return result.steady ? kOk : kNotConverged;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kSolverError;
  }
}

}  // namespace convect

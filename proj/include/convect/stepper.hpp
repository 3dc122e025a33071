#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "convect/config.hpp"
#include "convect/fem.hpp"
#include "convect/mesh.hpp"
#include "convect/solvers.hpp"

namespace convect {

/// The split variables across one time step: fine velocity and temperature,
/// coarse zero-mean pressure, elapsed time and step counter.
struct SplitState {
  std::array<std::vector<double>, 3> u;
  std::vector<double> theta;
  std::vector<double> p;
  double t = 0.0;
  int step = 0;
};

struct StepDiagnostics {
  int step = 0;
  double t = 0.0;
  double cfl = 0.0;  // tau * max|u| / h_min of the transport stage
  bool cfl_warning = false;
  int pcg_iterations = 0;
  double divergence_norm = 0.0;
  int theta_iterations = 0;
  int u_iterations = 0;  // max over the three components
  std::array<double, 3> du = {0.0, 0.0, 0.0};  // |u_new - u_old|_2 / |u_new|_2
  double dtheta = 0.0;
  double theta_min = 0.0, theta_max = 0.0;  // over/undershoot diagnostics
};

struct SteadyRunResult {
  bool steady = false;
  int steps_taken = 0;
};

/// Marchuk-Yanenko operator splitting: per time step a pressure projection,
/// wave-equation transport with q local substeps, and implicit diffusion with
/// the buoyancy source. Owns every assembled operator; immutable during a run.
class Stepper {
 public:
  Stepper(const TwoLevelMesh& mesh, const RunConfig& cfg);

  /// u = 0, theta = 0 except theta = 1 on the hot wall, p = 0.
  SplitState initialize() const;

  void pressure_step(SplitState& s, StepDiagnostics* diag = nullptr) const;
  void transport_step(SplitState& s, StepDiagnostics* diag = nullptr) const;
  void diffusion_step(SplitState& s, StepDiagnostics* diag = nullptr) const;

  StepDiagnostics advance(SplitState& s) const;

  /// Iterates advance() until the relative per-step change of every velocity
  /// component (and of theta when configured) drops to eps_steady, or until
  /// max_steps / fixed_steps. The callback sees every step's diagnostics.
  SteadyRunResult run_to_steady(
      SplitState& s,
      const std::function<void(const SplitState&, const StepDiagnostics&)>& on_step = {}) const;

  void save_checkpoint(const std::string& path, const SplitState& s) const;
  SplitState load_checkpoint(const std::string& path) const;

  const TwoLevelMesh& mesh() const { return mesh_; }
  const RunConfig& config() const { return cfg_; }
  const std::vector<ElementGeometry>& fine_geometry() const { return fine_geom_; }
  const std::vector<double>& fine_mass() const { return fine_mass_; }
  const std::vector<double>& coarse_mass() const { return coarse_mass_; }
  const CoarseFineInterp& interp() const { return interp_; }

  /// |sum_k m_k p_k| / |Omega|, the lumped-mass mean magnitude of p.
  double pressure_mean(const SplitState& s) const;

 private:
  void solve_temperature(SplitState& s, StepDiagnostics* diag) const;
  void solve_velocity(SplitState& s, StepDiagnostics* diag) const;

  const TwoLevelMesh& mesh_;
  RunConfig cfg_;
  std::uint64_t hash_;

  std::vector<ElementGeometry> fine_geom_;
  std::vector<double> fine_mass_;
  std::vector<double> coarse_mass_;
  CoarseFineInterp interp_;

  std::vector<std::uint8_t> wall_mask_;        // Gamma (fine)
  std::vector<std::uint8_t> theta_mask_;       // Gamma_l or Gamma_r (fine)
  std::vector<double> theta_bc_;               // 1 on Gamma_l, 0 elsewhere
  std::vector<double> zeros_;

  SymBandedMatrix a_theta_;                // scaled, Dirichlet applied
  std::vector<double> theta_scale_;        // D^{-1/2} of the unscaled system
  std::vector<double> theta_bc_correction_;  // column contribution of the BC values
  SymBandedMatrix a_vel_;
  std::vector<double> vel_scale_;

  SymBandedMatrix neumann_;  // coarse Neumann stiffness (unconstrained)
  NeumannZeroMeanSolver neumann_solver_;
  PressureOperators pressure_ops_;

  double h_min_ = 0.0;
  double tau_ = 0.0;
};

}  // namespace convect

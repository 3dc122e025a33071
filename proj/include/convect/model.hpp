#pragma once

#include "convect/types.hpp"

namespace convect {

/// Dimensional quantities of the physical setup. Used only to derive the
/// dimensionless parameters; the solver itself works in the scaled variables
/// (length L_x, velocity alpha/L_x, time L_x^2/alpha, pressure rho0 alpha^2/L_x^2,
/// theta = (T - T_c)/(T_h - T_c)).
struct PhysicalScales {
  double gravity = 9.81;        // g
  double expansion = 0.0;       // beta
  double thermal_diffusivity = 0.0;  // alpha
  double kinematic_viscosity = 0.0;  // nu
  double reference_density = 1.0;    // rho0
  double t_hot = 0.0;
  double t_cold = 0.0;
  double reference_length = 1.0;  // L_x

  void validate() const;
};

struct DimensionlessParams {
  double ra = 0.0;
  double pr = 0.0;
  double aspect_x = 1.0, aspect_y = 1.0, aspect_z = 1.0;
};

/// Ra = g beta (T_h - T_c) L_x^3 / (nu alpha), Pr = nu / alpha.
DimensionlessParams nondimensionalize(const PhysicalScales& s);

/// Buoyancy acts along +y: the momentum source is Ra Pr theta in the y
/// component (gravity points along -y).
inline constexpr int kBuoyancyAxis = 1;

}  // namespace convect

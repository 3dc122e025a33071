#include "convect/model.hpp"

namespace convect {

void PhysicalScales::validate() const {
  require(thermal_diffusivity > 0.0, "thermal diffusivity must be positive");
  require(kinematic_viscosity > 0.0, "kinematic viscosity must be positive");
  require(reference_length > 0.0, "reference length must be positive");
  require(t_hot >= t_cold, "wall temperatures must satisfy T_h >= T_c");
}

DimensionlessParams nondimensionalize(const PhysicalScales& s) {
  s.validate();
  DimensionlessParams d;
  const double l3 = s.reference_length * s.reference_length * s.reference_length;
  d.ra = s.gravity * s.expansion * (s.t_hot - s.t_cold) * l3 /
         (s.kinematic_viscosity * s.thermal_diffusivity);
  d.pr = s.kinematic_viscosity / s.thermal_diffusivity;
  return d;
}

}  // namespace convect

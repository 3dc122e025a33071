#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "convect/mesh.hpp"
#include "convect/types.hpp"

namespace convect {

/// d(theta)/dx at x = 0, one sample per (y, z) wall gridline, from the
/// second-order one-sided three-point formula on the (possibly graded) x
/// gridlines. flux[iy + ny * iz].
struct WallFlux {
  int ny = 0, nz = 0;
  std::vector<double> flux;
  double at(int iy, int iz) const { return flux[static_cast<std::size_t>(iy + ny * iz)]; }
};

WallFlux wall_heat_flux(const TwoLevelMesh& mesh, const std::vector<double>& theta);

struct NusseltReport {
  double nu_overall = 0.0;
  double nu_av_mid = 0.0;              // Nu_av at the z = A_z/2 gridline
  std::vector<double> z;               // fine z gridlines
  std::vector<double> nu_av;           // y-averaged Nusselt number per gridline
};

/// Nu_av(z) = -trapz_y flux, Nu_overall = trapz_z Nu_av; minus signs applied
/// so conduction across the cavity gives Nu = 1 on the hot wall.
NusseltReport nusselt(const TwoLevelMesh& mesh, const std::vector<double>& theta);

struct PeakReport {
  std::vector<double> z;        // fine z gridlines
  std::vector<double> uy_max;   // max over x gridlines of u_y on the y = A_y/2 plane
  std::vector<double> x_at_max; // maximizing x per gridline
  double peak = 0.0;
  Vec3 peak_location;           // a mesh node
  bool midplane_fallback = false;  // y = A_y/2 was not on the lattice
};

PeakReport uy_max_profile(const TwoLevelMesh& mesh, const std::vector<double>& uy);

/// Relative L2 defects of the mirror relations: f(x,y,z) ~ f(x,y,1-z) for
/// u_x, u_y, theta, p with u_z antisymmetric, and of the centro-symmetry
/// relations about the vertical center line: u_x, u_y antisymmetric, u_z and
/// p symmetric, theta(x,y,z) ~ 1 - theta(1-x,1-y,z). Defects fall back to the
/// absolute norm when the field is numerically zero.
struct SymmetryDefects {
  double z_mirror_ux = 0.0, z_mirror_uy = 0.0, z_mirror_uz = 0.0;
  double z_mirror_theta = 0.0, z_mirror_p = 0.0;
  double centro_ux = 0.0, centro_uy = 0.0, centro_uz = 0.0;
  double centro_p = 0.0, centro_theta = 0.0;
  double max_defect() const;
};

SymmetryDefects symmetry_defects(const TwoLevelMesh& mesh,
                                 const std::array<const std::vector<double>*, 3>& u,
                                 const std::vector<double>& theta, const std::vector<double>& p);

/// Node permutation of the z-reflection (iz -> nz-1-iz) on the given level.
/// Throws if the gridlines are not symmetric. An involution.
std::vector<int> mirror_z_permutation(const TwoLevelMesh& mesh, Level level);
/// Node permutation of (ix, iy) -> (nx-1-ix, ny-1-iy).
std::vector<int> centro_permutation(const TwoLevelMesh& mesh, Level level);

void write_nu_av_csv(std::ostream& out, const NusseltReport& r, std::uint64_t config_hash);
void write_uy_max_csv(std::ostream& out, const PeakReport& r, std::uint64_t config_hash);

}  // namespace convect

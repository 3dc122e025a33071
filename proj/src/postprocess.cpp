#include "convect/postprocess.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace convect {

namespace {

double trapezoid(const std::vector<double>& x, const std::vector<double>& f) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    s += 0.5 * (x[i + 1] - x[i]) * (f[i] + f[i + 1]);
  return s;
}

int nearest_gridline(const std::vector<double>& lines, double target) {
  int best = 0;
  for (std::size_t i = 1; i < lines.size(); ++i)
    if (std::abs(lines[i] - target) < std::abs(lines[static_cast<std::size_t>(best)] - target))
      best = static_cast<int>(i);
  return best;
}

}  // namespace

WallFlux wall_heat_flux(const TwoLevelMesh& mesh, const std::vector<double>& theta) {
  require(mesh.nfx() >= 3, "wall heat flux needs at least three gridlines in x");
  const double x0 = mesh.fine_lines[0][0];
  const double x1 = mesh.fine_lines[0][1];
  const double x2 = mesh.fine_lines[0][2];
  const double h1 = x1 - x0, h2 = x2 - x1;
  // One-sided second-order weights for unequal spacings.
  const double c0 = -(2.0 * h1 + h2) / (h1 * (h1 + h2));
  const double c1 = (h1 + h2) / (h1 * h2);
  const double c2 = -h1 / (h2 * (h1 + h2));

  WallFlux w;
  w.ny = mesh.nfy();
  w.nz = mesh.nfz();
  w.flux.resize(static_cast<std::size_t>(w.ny) * w.nz);
  for (int iz = 0; iz < w.nz; ++iz)
    for (int iy = 0; iy < w.ny; ++iy) {
      const double t0 = theta[static_cast<std::size_t>(mesh.fine_id(0, iy, iz))];
      const double t1 = theta[static_cast<std::size_t>(mesh.fine_id(1, iy, iz))];
      const double t2 = theta[static_cast<std::size_t>(mesh.fine_id(2, iy, iz))];
      w.flux[static_cast<std::size_t>(iy + w.ny * iz)] = c0 * t0 + c1 * t1 + c2 * t2;
    }
  return w;
}

NusseltReport nusselt(const TwoLevelMesh& mesh, const std::vector<double>& theta) {
  const WallFlux w = wall_heat_flux(mesh, theta);
  NusseltReport r;
  r.z = mesh.fine_lines[2];
  r.nu_av.resize(r.z.size());
  std::vector<double> line(static_cast<std::size_t>(w.ny));
  for (int iz = 0; iz < w.nz; ++iz) {
    for (int iy = 0; iy < w.ny; ++iy) line[static_cast<std::size_t>(iy)] = w.at(iy, iz);
    r.nu_av[static_cast<std::size_t>(iz)] = -trapezoid(mesh.fine_lines[1], line);
  }
  r.nu_overall = trapezoid(r.z, r.nu_av);
  const int mid = nearest_gridline(r.z, 0.5 * mesh.aspect()[2]);
  r.nu_av_mid = r.nu_av[static_cast<std::size_t>(mid)];
  return r;
}

PeakReport uy_max_profile(const TwoLevelMesh& mesh, const std::vector<double>& uy) {
  PeakReport r;
  const double y_mid = 0.5 * mesh.aspect()[1];
  const int iy = nearest_gridline(mesh.fine_lines[1], y_mid);
  r.midplane_fallback =
      std::abs(mesh.fine_lines[1][static_cast<std::size_t>(iy)] - y_mid) > 1e-12 * mesh.aspect()[1];

  r.z = mesh.fine_lines[2];
  r.uy_max.resize(r.z.size());
  r.x_at_max.resize(r.z.size());
  r.peak = -std::numeric_limits<double>::infinity();
  for (int iz = 0; iz < mesh.nfz(); ++iz) {
    double best = -std::numeric_limits<double>::infinity();
    int best_ix = 0;
    for (int ix = 0; ix < mesh.nfx(); ++ix) {
      const double v = uy[static_cast<std::size_t>(mesh.fine_id(ix, iy, iz))];
      if (v > best) {
        best = v;
        best_ix = ix;
      }
    }
    r.uy_max[static_cast<std::size_t>(iz)] = best;
    r.x_at_max[static_cast<std::size_t>(iz)] = mesh.fine_lines[0][static_cast<std::size_t>(best_ix)];
    if (best > r.peak) {
      r.peak = best;
      r.peak_location = {mesh.fine_lines[0][static_cast<std::size_t>(best_ix)],
                         mesh.fine_lines[1][static_cast<std::size_t>(iy)],
                         mesh.fine_lines[2][static_cast<std::size_t>(iz)]};
    }
  }
  return r;
}

namespace {

void require_symmetric(const std::vector<double>& lines, double length, const char* axis) {
  for (std::size_t i = 0; i < lines.size(); ++i)
    require(std::abs(lines[i] + lines[lines.size() - 1 - i] - length) <= 1e-12 * length,
            std::string("symmetry defects: lattice is not symmetric along ") + axis);
}

double defect_norm(const std::vector<double>& f, const std::vector<int>& perm, double sign,
                   double offset) {
  // |f - (offset + sign * f o perm)| / |f|, absolute when |f| ~ 0.
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double d = f[i] - (offset + sign * f[static_cast<std::size_t>(perm[i])]);
    num += d * d;
    den += f[i] * f[i];
  }
  num = std::sqrt(num);
  den = std::sqrt(den);
  const double tiny = 1e-12 * std::sqrt(static_cast<double>(f.size()));
  return den < tiny ? num : num / den;
}

}  // namespace

std::vector<int> mirror_z_permutation(const TwoLevelMesh& mesh, Level level) {
  const bool fine = (level == Level::Fine);
  const auto& lines = fine ? mesh.fine_lines : mesh.coarse_lines;
  require_symmetric(lines[2], mesh.aspect()[2], "z");
  const int nx = fine ? mesh.nfx() : mesh.ncx();
  const int ny = fine ? mesh.nfy() : mesh.ncy();
  const int nz = fine ? mesh.nfz() : mesh.ncz();
  std::vector<int> perm(static_cast<std::size_t>(nx) * ny * nz);
  for (int iz = 0; iz < nz; ++iz)
    for (int iy = 0; iy < ny; ++iy)
      for (int ix = 0; ix < nx; ++ix)
        perm[static_cast<std::size_t>(ix + nx * (iy + ny * iz))] =
            ix + nx * (iy + ny * (nz - 1 - iz));
  return perm;
}

std::vector<int> centro_permutation(const TwoLevelMesh& mesh, Level level) {
  const bool fine = (level == Level::Fine);
  const auto& lines = fine ? mesh.fine_lines : mesh.coarse_lines;
  require_symmetric(lines[0], mesh.aspect()[0], "x");
  require_symmetric(lines[1], mesh.aspect()[1], "y");
  const int nx = fine ? mesh.nfx() : mesh.ncx();
  const int ny = fine ? mesh.nfy() : mesh.ncy();
  const int nz = fine ? mesh.nfz() : mesh.ncz();
  std::vector<int> perm(static_cast<std::size_t>(nx) * ny * nz);
  for (int iz = 0; iz < nz; ++iz)
    for (int iy = 0; iy < ny; ++iy)
      for (int ix = 0; ix < nx; ++ix)
        perm[static_cast<std::size_t>(ix + nx * (iy + ny * iz))] =
            (nx - 1 - ix) + nx * ((ny - 1 - iy) + ny * iz);
  return perm;
}

double SymmetryDefects::max_defect() const {
  return std::max({z_mirror_ux, z_mirror_uy, z_mirror_uz, z_mirror_theta, z_mirror_p, centro_ux,
                   centro_uy, centro_uz, centro_p, centro_theta});
}

SymmetryDefects symmetry_defects(const TwoLevelMesh& mesh,
                                 const std::array<const std::vector<double>*, 3>& u,
                                 const std::vector<double>& theta, const std::vector<double>& p) {
  SymmetryDefects d;
  const auto mz_f = mirror_z_permutation(mesh, Level::Fine);
  const auto mz_c = mirror_z_permutation(mesh, Level::Coarse);
  const auto ce_f = centro_permutation(mesh, Level::Fine);
  const auto ce_c = centro_permutation(mesh, Level::Coarse);

  d.z_mirror_ux = defect_norm(*u[0], mz_f, +1.0, 0.0);
  d.z_mirror_uy = defect_norm(*u[1], mz_f, +1.0, 0.0);
  d.z_mirror_uz = defect_norm(*u[2], mz_f, -1.0, 0.0);
  d.z_mirror_theta = defect_norm(theta, mz_f, +1.0, 0.0);
  d.z_mirror_p = defect_norm(p, mz_c, +1.0, 0.0);

  d.centro_ux = defect_norm(*u[0], ce_f, -1.0, 0.0);
  d.centro_uy = defect_norm(*u[1], ce_f, -1.0, 0.0);
  d.centro_uz = defect_norm(*u[2], ce_f, +1.0, 0.0);
  d.centro_p = defect_norm(p, ce_c, +1.0, 0.0);
  d.centro_theta = defect_norm(theta, ce_f, -1.0, 1.0);
  return d;
}

void write_nu_av_csv(std::ostream& out, const NusseltReport& r, std::uint64_t config_hash) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "# config_hash %016llx\n",
                static_cast<unsigned long long>(config_hash));
  out << buf << "z,nu_av\n";
  for (std::size_t i = 0; i < r.z.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", r.z[i], r.nu_av[i]);
    out << buf;
  }
}

void write_uy_max_csv(std::ostream& out, const PeakReport& r, std::uint64_t config_hash) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "# config_hash %016llx\n",
                static_cast<unsigned long long>(config_hash));
  out << buf << "z,uy_max\n";
  for (std::size_t i = 0; i < r.z.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", r.z[i], r.uy_max[i]);
    out << buf;
  }
}

}  // namespace convect

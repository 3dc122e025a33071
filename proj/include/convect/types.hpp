#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace convect {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3() = default;
  Vec3(double xx, double yy, double zz) : x(xx), y(yy), z(zz) {}

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

/// Signed volume of the tetrahedron (a, b, c, d).
inline double signed_volume(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  return dot(b - a, cross(c - a, d - a)) / 6.0;
}

enum class Level : std::uint8_t { Coarse = 0, Fine = 1 };

enum class BoundaryTag : std::uint8_t {
  Interior = 0,
  Left = 1,   // isothermal hot wall, x = 0
  Right = 2,  // isothermal cold wall, x = A_x
  Other = 3,  // adiabatic walls
};

inline const char* to_string(BoundaryTag t) {
  switch (t) {
    case BoundaryTag::Interior: return "interior";
    case BoundaryTag::Left: return "left";
    case BoundaryTag::Right: return "right";
    case BoundaryTag::Other: return "other";
  }
  return "?";
}

inline const char* to_string(Level l) { return l == Level::Coarse ? "coarse" : "fine"; }

[[noreturn]] inline void fail(const std::string& msg) { throw std::runtime_error(msg); }

inline void require(bool cond, const std::string& msg) {
  if (!cond) fail(msg);
}

}  // namespace convect

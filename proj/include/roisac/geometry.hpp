#pragma once

#include <stdexcept>
#include <string>

namespace roisac {

struct GeometryError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const;
  Vec3 normalized() const;
};

// Robust for vectors near parallel or antiparallel.
double angle_between(const Vec3& a, const Vec3& b);

struct Pose {
  Vec3 position;                 // m
  Vec3 boresight = {0, 0, 1};    // unit vector
  void validate() const;         // boresight unit norm within 1e-9
};

// Scalar link description between a transceiver and one target:
// d    distance in meters,
// phi  irradiance angle off the transceiver boresight,
// theta incidence angle off the target boresight.
struct LinkGeometry {
  double d = 1.0;
  double phi = 0.0;
  double theta = 0.0;
  void validate() const;
};

LinkGeometry derive_link_geometry(const Pose& tx, const Pose& target);

} // namespace roisac

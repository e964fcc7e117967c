#include "roisac/geometry.hpp"

#include <cmath>

namespace roisac {

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

Vec3 Vec3::normalized() const {
  const double n = norm();
  if (n == 0.0) throw GeometryError("cannot normalize a zero vector");
  return {x / n, y / n, z / n};
}

double angle_between(const Vec3& a, const Vec3& b) {
  // atan2 form keeps full precision near 0 and pi where acos degrades.
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

void Pose::validate() const {
  if (std::abs(boresight.norm() - 1.0) > 1e-9) {
    throw GeometryError("pose boresight must be a unit vector (|norm - 1| <= 1e-9)");
  }
}

void LinkGeometry::validate() const {
  if (!(d > 0.0)) throw GeometryError("link distance must be positive");
  if (phi < 0.0 || phi > 3.14159265358979323846 + 1e-12) {
    throw GeometryError("phi out of [0, pi]");
  }
  if (theta < 0.0 || theta > 3.14159265358979323846 + 1e-12) {
    throw GeometryError("theta out of [0, pi]");
  }
}

LinkGeometry derive_link_geometry(const Pose& tx, const Pose& target) {
  tx.validate();
  target.validate();
  const Vec3 delta = target.position - tx.position;
  const double d = delta.norm();
  if (d < 1e-12) {
    throw GeometryError("degenerate geometry: transceiver and target positions coincide");
  }
  LinkGeometry g;
  g.d = d;
  g.phi = angle_between(tx.boresight, delta);
  g.theta = angle_between(target.boresight, Vec3{0, 0, 0} - delta);
  return g;
}

} // namespace roisac

#ifndef LEORTC_ORBITAL_PROPAGATION_H_
#define LEORTC_ORBITAL_PROPAGATION_H_

#include <array>

#include "leortc/orbital/elements.h"

namespace leortc {
namespace orbital {

using Vec3 = std::array<double, 3>;

// Mean motion in rad/s for a circular orbit: n = sqrt(mu / a^3).
inline double MeanMotionRadS(double semi_major_axis_km) {
  double a = semi_major_axis_km;
  return std::sqrt(kMuKm3S2 / (a * a * a));
}

// Orbital period T = 2*pi*sqrt(a^3 / mu).
inline double OrbitPeriodS(double semi_major_axis_km) {
  return 2.0 * M_PI / MeanMotionRadS(semi_major_axis_km);
}

// Earth-centered Cartesian position (km) of a circular orbit at time t.
// Argument of latitude u = M0 + n*(t - epoch); the in-plane position is
// rotated by inclination about x, then by RAAN about z.
Vec3 Propagate(const OrbitalElements& elements, double t_s);

// Position honoring maneuver overrides.
Vec3 PropagateSatellite(const Satellite& sat, double t_s);

}  // namespace orbital
}  // namespace leortc

#endif  // LEORTC_ORBITAL_PROPAGATION_H_

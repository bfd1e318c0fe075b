#ifndef LEORTC_ORBITAL_GEOMETRY_H_
#define LEORTC_ORBITAL_GEOMETRY_H_

#include "leortc/orbital/elements.h"
#include "leortc/orbital/propagation.h"

namespace leortc {
namespace orbital {

// ECEF-style position of a terminal at time t. Longitude advances with
// Earth rotation so satellite/terminal motion stay in one frame.
Vec3 TerminalPosition(const GroundTerminal& terminal, double t_s);

struct LookAngles {
  double elevation_deg = -90.0;
  double slant_range_km = 0.0;
};

// Elevation above the terminal's local horizon and Euclidean slant range.
LookAngles ElevationAndRange(const Vec3& sat_position_km,
                             const GroundTerminal& terminal, double t_s);

// One-way propagation delay over a slant range: range / c.
inline double PropagationDelayMs(double slant_range_km) {
  return slant_range_km / kSpeedOfLightKmS * 1000.0;
}

}  // namespace orbital
}  // namespace leortc

#endif  // LEORTC_ORBITAL_GEOMETRY_H_

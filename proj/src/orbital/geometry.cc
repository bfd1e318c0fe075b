#include "leortc/orbital/geometry.h"

namespace leortc {
namespace orbital {

Vec3 TerminalPosition(const GroundTerminal& terminal, double t_s) {
  double lat = DegToRad(terminal.latitude_deg);
  double lon = DegToRad(terminal.longitude_deg + kEarthRotationDegS * t_s);
  double clat = std::cos(lat);
  return {kEarthRadiusKm * clat * std::cos(lon),
          kEarthRadiusKm * clat * std::sin(lon),
          kEarthRadiusKm * std::sin(lat)};
}

LookAngles ElevationAndRange(const Vec3& sat, const GroundTerminal& terminal,
                             double t_s) {
  Vec3 tp = TerminalPosition(terminal, t_s);
  Vec3 d = {sat[0] - tp[0], sat[1] - tp[1], sat[2] - tp[2]};
  double range = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);

  // Local vertical is the terminal position direction (spherical Earth).
  double dot = (d[0] * tp[0] + d[1] * tp[1] + d[2] * tp[2]) /
               (range * kEarthRadiusKm);
  if (dot > 1.0) dot = 1.0;
  if (dot < -1.0) dot = -1.0;

  LookAngles out;
  out.elevation_deg = RadToDeg(std::asin(dot));
  out.slant_range_km = range;
  return out;
}

}  // namespace orbital
}  // namespace leortc

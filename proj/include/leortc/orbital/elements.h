#ifndef LEORTC_ORBITAL_ELEMENTS_H_
#define LEORTC_ORBITAL_ELEMENTS_H_

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace leortc {
namespace orbital {

constexpr double kEarthRadiusKm = 6371.0;
constexpr double kMuKm3S2 = 398600.4418;       // GM of Earth
constexpr double kSpeedOfLightKmS = 299792.458;
// Sidereal rotation: 360 degrees per 86164 s.
constexpr double kEarthRotationDegS = 360.0 / 86164.0;
constexpr double kMinAltitudeKm = 300.0;
constexpr double kMaxAltitudeKm = 2000.0;

inline double DegToRad(double deg) { return deg * M_PI / 180.0; }
inline double RadToDeg(double rad) { return rad * 180.0 / M_PI; }

// Normalizes an angle in degrees to [0, 360).
inline double WrapDeg(double deg) {
  double w = std::fmod(deg, 360.0);
  if (w < 0.0) w += 360.0;
  return w;
}

// Circular-orbit element set. Angles are stored normalized to [0, 360).
struct OrbitalElements {
  double semi_major_axis_km = 0.0;
  double inclination_deg = 0.0;
  double raan_deg = 0.0;
  double mean_anomaly_at_epoch_deg = 0.0;
  double epoch_s = 0.0;

  bool Valid() const {
    double alt = semi_major_axis_km - kEarthRadiusKm;
    return alt >= kMinAltitudeKm && alt <= kMaxAltitudeKm;
  }

  void NormalizeAngles() {
    inclination_deg = WrapDeg(inclination_deg);
    raan_deg = WrapDeg(raan_deg);
    mean_anomaly_at_epoch_deg = WrapDeg(mean_anomaly_at_epoch_deg);
  }
};

struct Satellite {
  int id = 0;
  OrbitalElements elements;
  // Elements swapped into effect at given times by maneuvers, sorted by
  // apply time. Propagation picks the last entry with apply_time_s <= t.
  std::vector<std::pair<double, OrbitalElements>> overrides;

  const OrbitalElements& ElementsAt(double t_s) const {
    const OrbitalElements* e = &elements;
    for (const auto& [apply_s, ov] : overrides) {
      if (t_s >= apply_s) e = &ov;
    }
    return *e;
  }
};

enum class TopologyTag { kGridPlus };

struct Constellation {
  int planes = 0;
  int sats_per_plane = 0;
  std::vector<Satellite> satellites;
  TopologyTag topology_tag = TopologyTag::kGridPlus;

  int size() const { return static_cast<int>(satellites.size()); }
};

struct GroundTerminal {
  double latitude_deg = 0.0;    // [-90, 90]
  double longitude_deg = 0.0;   // [-180, 180)
  double min_elevation_deg = 25.0;
};

struct ManeuverSpec {
  std::vector<int> target_sat_ids;
  double delta_altitude_km = 0.0;
  double delta_raan_deg = 0.0;
  double delta_mean_anomaly_deg = 0.0;
  double apply_time_s = 0.0;
};

}  // namespace orbital
}  // namespace leortc

#endif  // LEORTC_ORBITAL_ELEMENTS_H_

#include "leortc/orbital/propagation.h"

namespace leortc {
namespace orbital {

Vec3 Propagate(const OrbitalElements& e, double t_s) {
  double n = MeanMotionRadS(e.semi_major_axis_km);
  double u = DegToRad(e.mean_anomaly_at_epoch_deg) + n * (t_s - e.epoch_s);
  double a = e.semi_major_axis_km;

  // In-plane position.
  double xp = a * std::cos(u);
  double yp = a * std::sin(u);

  // Rotate about x by inclination, then about z by RAAN.
  double inc = DegToRad(e.inclination_deg);
  double raan = DegToRad(e.raan_deg);
  double ci = std::cos(inc), si = std::sin(inc);
  double co = std::cos(raan), so = std::sin(raan);

  double x1 = xp;
  double y1 = yp * ci;
  double z1 = yp * si;

  return {co * x1 - so * y1, so * x1 + co * y1, z1};
}

Vec3 PropagateSatellite(const Satellite& sat, double t_s) {
  return Propagate(sat.ElementsAt(t_s), t_s);
}

}  // namespace orbital
}  // namespace leortc

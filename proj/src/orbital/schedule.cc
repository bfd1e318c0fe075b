#include "leortc/orbital/schedule.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "leortc/common/error.h"

namespace leortc {
namespace orbital {

int ServingSchedule::Handovers() const {
  return static_cast<int>(HandoverSeconds().size());
}

std::vector<int> ServingSchedule::HandoverSeconds() const {
  std::vector<int> seconds;
  for (int t = 1; t < duration_s; ++t) {
    if (serving_sat_id[t] >= 0 && serving_sat_id[t - 1] >= 0 &&
        serving_sat_id[t] != serving_sat_id[t - 1]) {
      seconds.push_back(t);
    }
  }
  return seconds;
}

Constellation SynthesizeWalker(int planes, int sats_per_plane,
                               double altitude_km, double inclination_deg,
                               uint64_t /*seed*/) {
  if (planes < 2 || sats_per_plane < 2) {
    throw Error(ErrorCode::kInvalidGeometry,
                "walker shell needs at least 2 planes and 2 slots per plane");
  }
  Constellation c;
  c.planes = planes;
  c.sats_per_plane = sats_per_plane;
  int total = planes * sats_per_plane;
  double phasing = 360.0 / total;
  for (int p = 0; p < planes; ++p) {
    for (int s = 0; s < sats_per_plane; ++s) {
      Satellite sat;
      sat.id = p * sats_per_plane + s;
      sat.elements.semi_major_axis_km = kEarthRadiusKm + altitude_km;
      sat.elements.inclination_deg = inclination_deg;
      sat.elements.raan_deg = WrapDeg(360.0 / planes * p);
      sat.elements.mean_anomaly_at_epoch_deg =
          WrapDeg(360.0 / sats_per_plane * s + phasing * p);
      sat.elements.epoch_s = 0.0;
      c.satellites.push_back(sat);
    }
  }
  return c;
}

Constellation ApplyManeuvers(const Constellation& constellation,
                             const std::vector<ManeuverSpec>& specs) {
  Constellation out = constellation;

  std::vector<ManeuverSpec> ordered = specs;
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const ManeuverSpec& a, const ManeuverSpec& b) {
                     return a.apply_time_s < b.apply_time_s;
                   });

  for (const ManeuverSpec& spec : ordered) {
    for (int id : spec.target_sat_ids) {
      if (id < 0 || id >= out.size()) {
        throw Error(ErrorCode::kUnknownSatellite,
                    "maneuver targets unknown satellite id " +
                        std::to_string(id));
      }
      Satellite& sat = out.satellites[id];
      OrbitalElements base = sat.ElementsAt(spec.apply_time_s);
      base.semi_major_axis_km += spec.delta_altitude_km;
      base.raan_deg = WrapDeg(base.raan_deg + spec.delta_raan_deg);
      base.mean_anomaly_at_epoch_deg =
          WrapDeg(base.mean_anomaly_at_epoch_deg + spec.delta_mean_anomaly_deg);
      sat.overrides.emplace_back(spec.apply_time_s, base);
    }
  }
  return out;
}

int GridHops(const Constellation& c, int sat_a, int sat_b) {
  int spp = c.sats_per_plane;
  int pa = sat_a / spp, sa = sat_a % spp;
  int pb = sat_b / spp, sb = sat_b % spp;
  int dp = std::abs(pa - pb);
  dp = std::min(dp, c.planes - dp);
  int ds = std::abs(sa - sb);
  ds = std::min(ds, spp - ds);
  return dp + ds;
}

namespace {

struct Access {
  int sat_id = -1;
  double delay_ms = 0.0;
};

// Minimum-delay visible satellite; ties go to the lower id.
Access BestAccess(const std::vector<Vec3>& positions,
                  const GroundTerminal& terminal, double t_s) {
  Access best;
  double best_delay = 0.0;
  for (size_t id = 0; id < positions.size(); ++id) {
    LookAngles look = ElevationAndRange(positions[id], terminal, t_s);
    if (look.elevation_deg < terminal.min_elevation_deg) continue;
    double delay = PropagationDelayMs(look.slant_range_km);
    if (best.sat_id < 0 || delay < best_delay) {
      best.sat_id = static_cast<int>(id);
      best.delay_ms = delay;
      best_delay = delay;
    }
  }
  return best;
}

}  // namespace

ServingSchedule BuildServingSchedule(const Constellation& constellation,
                                     const GroundTerminal& src,
                                     const GroundTerminal& dst, int duration_s,
                                     const ScheduleParams& params) {
  if (duration_s < 1) {
    throw Error(ErrorCode::kInvalidGeometry, "schedule duration must be >= 1");
  }
  ServingSchedule schedule;
  schedule.duration_s = duration_s;
  schedule.serving_sat_id.assign(duration_s, -1);
  schedule.delay_ms.assign(duration_s, 0.0);

  std::vector<Vec3> positions(constellation.satellites.size());
  int src_serving = -1;
  int dst_serving = -1;

  for (int t = 0; t < duration_s; ++t) {
    double ts = params.start_time_s + t;
    for (int id = 0; id < constellation.size(); ++id) {
      positions[id] = PropagateSatellite(constellation.satellites[id], ts);
    }
    Access src_best = BestAccess(positions, src, ts);
    Access dst_best = BestAccess(positions, dst, ts);

    // With zero hysteresis the schedule is the pure per-second argmin;
    // otherwise the incumbent survives until beaten by the margin.
    auto pick = [&](int incumbent, const Access& best,
                    const GroundTerminal& terminal) -> int {
      if (best.sat_id < 0) return -1;
      if (params.hysteresis_ms <= 0.0 || incumbent < 0) return best.sat_id;
      LookAngles inc_look =
          ElevationAndRange(positions[incumbent], terminal, ts);
      if (inc_look.elevation_deg < terminal.min_elevation_deg) {
        return best.sat_id;
      }
      double inc_delay = PropagationDelayMs(inc_look.slant_range_km);
      return best.delay_ms < inc_delay - params.hysteresis_ms ? best.sat_id
                                                              : incumbent;
    };

    src_serving = pick(src_serving, src_best, src);
    dst_serving = pick(dst_serving, dst_best, dst);

    if (src_serving < 0 || dst_serving < 0) {
      schedule.serving_sat_id[t] = -1;
      schedule.delay_ms[t] = 0.0;
      continue;
    }

    double src_delay = PropagationDelayMs(
        ElevationAndRange(positions[src_serving], src, ts).slant_range_km);
    double dst_delay = PropagationDelayMs(
        ElevationAndRange(positions[dst_serving], dst, ts).slant_range_km);
    int hops = GridHops(constellation, src_serving, dst_serving);

    schedule.serving_sat_id[t] = src_serving;
    schedule.delay_ms[t] =
        src_delay + hops * params.isl_hop_delay_ms + dst_delay;
  }
  return schedule;
}

}  // namespace orbital
}  // namespace leortc

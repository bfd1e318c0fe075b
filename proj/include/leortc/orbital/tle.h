#ifndef LEORTC_ORBITAL_TLE_H_
#define LEORTC_ORBITAL_TLE_H_

#include <string>
#include <utility>
#include <vector>

#include "leortc/orbital/elements.h"

namespace leortc {
namespace orbital {

struct TleParseResult {
  std::vector<std::pair<std::string, OrbitalElements>> entries;
  // Records dropped for bad checksums, short lines, unparseable fields or
  // out-of-band orbits.
  int skipped = 0;
};

// Parses standard two-line element sets (with or without a name line).
// Mean motion is converted to a semi-major axis via Kepler's third law;
// the TLE epoch becomes simulation time zero. For the circular model the
// argument of perigee is folded into the mean anomaly (argument of
// latitude), which preserves in-plane phasing for near-circular orbits.
// Throws Error(kEmptyInput) when no record parses.
TleParseResult ParseTle(const std::string& text);

}  // namespace orbital
}  // namespace leortc

#endif  // LEORTC_ORBITAL_TLE_H_

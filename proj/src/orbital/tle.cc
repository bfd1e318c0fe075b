#include "leortc/orbital/tle.h"

#include <cctype>
#include <charconv>
#include <optional>
#include <sstream>

#include "leortc/common/error.h"
#include "leortc/orbital/propagation.h"

namespace leortc {
namespace orbital {
namespace {

constexpr size_t kLineLength = 69;

bool ChecksumOk(const std::string& line) {
  if (line.size() < kLineLength) return false;
  int sum = 0;
  for (size_t i = 0; i + 1 < kLineLength; ++i) {
    char c = line[i];
    if (std::isdigit(static_cast<unsigned char>(c))) sum += c - '0';
    if (c == '-') sum += 1;
  }
  return sum % 10 == line[kLineLength - 1] - '0';
}

std::optional<double> ParseField(const std::string& line, size_t pos,
                                 size_t len) {
  if (line.size() < pos + len) return std::nullopt;
  std::string field = line.substr(pos, len);
  size_t begin = field.find_first_not_of(' ');
  if (begin == std::string::npos) return std::nullopt;
  size_t end = field.find_last_not_of(' ');
  field = field.substr(begin, end - begin + 1);
  try {
    size_t used = 0;
    double v = std::stod(field, &used);
    if (used != field.size()) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::string TrimmedName(const std::string& line) {
  size_t end = line.find_last_not_of(" \r\n\t");
  if (end == std::string::npos) return "";
  return line.substr(0, end + 1);
}

}  // namespace

TleParseResult ParseTle(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) {
      line.pop_back();
    }
    if (!line.empty()) lines.push_back(line);
  }

  TleParseResult result;
  size_t i = 0;
  while (i < lines.size()) {
    std::string name;
    if (lines[i].size() < 2 || lines[i][0] != '1' || lines[i][1] != ' ') {
      name = TrimmedName(lines[i]);
      ++i;
      if (i >= lines.size()) {
        ++result.skipped;
        break;
      }
    }
    if (i + 1 >= lines.size() || lines[i][0] != '1' || lines[i + 1][0] != '2') {
      ++result.skipped;
      ++i;
      continue;
    }
    const std::string& l1 = lines[i];
    const std::string& l2 = lines[i + 1];
    i += 2;

    if (l1.size() < kLineLength || l2.size() < kLineLength ||
        !ChecksumOk(l1) || !ChecksumOk(l2)) {
      ++result.skipped;
      continue;
    }

    auto incl = ParseField(l2, 8, 8);
    auto raan = ParseField(l2, 17, 8);
    auto argp = ParseField(l2, 34, 8);
    auto mean_anomaly = ParseField(l2, 43, 8);
    auto mean_motion = ParseField(l2, 52, 11);
    if (!incl || !raan || !argp || !mean_anomaly || !mean_motion ||
        *mean_motion <= 0.0) {
      ++result.skipped;
      continue;
    }

    // Kepler III: a = (mu / n^2)^(1/3), n in rad/s.
    double n_rad_s = *mean_motion * 2.0 * M_PI / 86400.0;
    double a_km = std::cbrt(kMuKm3S2 / (n_rad_s * n_rad_s));

    OrbitalElements e;
    e.semi_major_axis_km = a_km;
    e.inclination_deg = *incl;
    e.raan_deg = *raan;
    e.mean_anomaly_at_epoch_deg = *argp + *mean_anomaly;
    e.epoch_s = 0.0;
    e.NormalizeAngles();
    if (!e.Valid()) {
      ++result.skipped;
      continue;
    }

    if (name.empty()) {
      std::string catnum = l1.substr(2, 5);
      size_t b = catnum.find_first_not_of(' ');
      name = b == std::string::npos ? "UNKNOWN" : catnum.substr(b);
    }
    result.entries.emplace_back(name, e);
  }

  if (result.entries.empty()) {
    throw Error(ErrorCode::kEmptyInput, "no valid TLE records in input");
  }
  return result;
}

}  // namespace orbital
}  // namespace leortc

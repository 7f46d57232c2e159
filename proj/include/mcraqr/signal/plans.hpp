#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <vector>

#include "mcraqr/errors.hpp"

namespace mcraqr::signal {

struct Carrier {
  double freq_hz = 0.0;
  double power_w = 0.0;
  double phase_rad = 0.0;
};

// The N multi-carrier tones, ordered by increasing frequency.
struct CarrierPlan {
  std::vector<Carrier> carriers;

  int count() const { return static_cast<int>(carriers.size()); }
  double total_power() const {
    double p = 0.0;
    for (const auto& c : carriers) p += c.power_w;
    return p;
  }
  void validate() const {
    if (carriers.empty()) throw SchemaError("CarrierPlan: empty");
    for (std::size_t i = 0; i < carriers.size(); ++i) {
      if (carriers[i].power_w < 0)
        throw SchemaError("CarrierPlan: negative power");
      if (i > 0 && carriers[i].freq_hz <= carriers[i - 1].freq_hz)
        throw SchemaError("CarrierPlan: frequencies must strictly increase");
    }
  }
};

struct MfcLine {
  double freq_hz = 0.0;
  double phase_rad = 0.0;
};

// The B comb lines; total power is split equally across lines.
struct MfcPlan {
  std::vector<MfcLine> lines;
  double total_power_w = 0.0;

  int count() const { return static_cast<int>(lines.size()); }
  double per_line_power() const { return total_power_w / count(); }
  void validate() const {
    if (lines.empty()) throw SchemaError("MfcPlan: empty");
    if (total_power_w <= 0) throw SchemaError("MfcPlan: total power <= 0");
    for (std::size_t a = 0; a < lines.size(); ++a)
      for (std::size_t b = a + 1; b < lines.size(); ++b)
        if (lines[a].freq_hz == lines[b].freq_hz)
          throw SchemaError("MfcPlan: duplicate line frequency");
  }
};

struct IfEntry {
  int carrier = 0;        // index into CarrierPlan
  int line = 0;           // index of the nearest comb line
  double delta_f_hz = 0;  // f_x,i - f_y,ni
  double delta_phi_rad = 0;
};

struct IfMap {
  std::vector<IfEntry> entries;
};

// Nearest-line assignment; ties break toward the lower-frequency line.
inline IfMap if_assignment(const CarrierPlan& carriers, const MfcPlan& comb) {
  carriers.validate();
  comb.validate();
  IfMap map;
  map.entries.reserve(carriers.carriers.size());
  for (int i = 0; i < carriers.count(); ++i) {
    const double fx = carriers.carriers[i].freq_hz;
    int best = 0;
    double best_dist = std::abs(fx - comb.lines[0].freq_hz);
    for (int j = 1; j < comb.count(); ++j) {
      const double dist = std::abs(fx - comb.lines[j].freq_hz);
      if (dist < best_dist ||
          (dist == best_dist &&
           comb.lines[j].freq_hz < comb.lines[best].freq_hz)) {
        best = j;
        best_dist = dist;
      }
    }
    IfEntry e;
    e.carrier = i;
    e.line = best;
    e.delta_f_hz = fx - comb.lines[best].freq_hz;
    e.delta_phi_rad =
        carriers.carriers[i].phase_rad - comb.lines[best].phase_rad;
    map.entries.push_back(e);
  }
  return map;
}

// Groups of carriers whose IF magnitudes coincide within `resolution_hz`.
// Magnitudes are compared because the demodulated output is real-valued, so
// +|df| and -|df| alias onto the same baseband tone.
inline std::vector<std::vector<int>> detect_ambiguity(const IfMap& map,
                                                      double resolution_hz) {
  if (resolution_hz <= 0) throw SchemaError("detect_ambiguity: resolution <= 0");
  const int n = static_cast<int>(map.entries.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(map.entries[a].delta_f_hz) <
           std::abs(map.entries[b].delta_f_hz);
  });
  std::vector<std::vector<int>> groups;
  std::vector<int> current;
  for (int idx = 0; idx < n; ++idx) {
    const int e = order[idx];
    if (!current.empty()) {
      const double prev = std::abs(map.entries[current.back()].delta_f_hz);
      const double cur = std::abs(map.entries[e].delta_f_hz);
      if (cur - prev >= resolution_hz) {
        if (current.size() > 1) groups.push_back(current);
        current.clear();
      }
    }
    current.push_back(map.entries[e].carrier);
  }
  if (current.size() > 1) groups.push_back(current);
  return groups;
}

} // namespace mcraqr::signal

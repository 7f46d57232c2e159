#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "mcraqr/errors.hpp"
#include "mcraqr/signal/plans.hpp"

namespace mcraqr::signal {

// Constraints on an acceptable IF plan.
struct BandBudget {
  double if_max_hz = 5e6;            // usable IF band (instantaneous bandwidth)
  double min_if_separation_hz = 1e5; // floor between distinct |IF|s
  double min_comb_spacing_hz = 12e6; // must exceed the 3 dB bandwidth

  void validate() const {
    if (!(min_if_separation_hz > 0 && min_if_separation_hz < if_max_hz))
      throw SchemaError("BandBudget: need 0 < min_if_separation < if_max");
    if (!(min_comb_spacing_hz > 2.0 * if_max_hz))
      throw SchemaError("BandBudget: need min_comb_spacing > 2*if_max");
  }
};

// Result of the uniform multi-comb search: one plan per repetition rate plus
// the merged plan/IF map actually used downstream.
struct UniformDesign {
  std::vector<MfcPlan> combs;
  std::vector<int> comb_of_carrier; // index into `combs` per carrier
  MfcPlan merged;                   // all active lines, equal power split
  IfMap if_map;                     // nearest-line map against `merged`
};

namespace detail {

// Lines of a uniform comb with the given repetition rate covering the carrier
// band with one spare line on each side, anchored at `anchor_hz`.
inline std::vector<double> comb_lines(double anchor_hz, double rate_hz,
                                      double f_lo, double f_hi) {
  const long k_lo = static_cast<long>(std::floor((f_lo - anchor_hz) / rate_hz)) - 1;
  const long k_hi = static_cast<long>(std::ceil((f_hi - anchor_hz) / rate_hz)) + 1;
  std::vector<double> lines;
  for (long k = k_lo; k <= k_hi; ++k) lines.push_back(anchor_hz + k * rate_hz);
  return lines;
}

inline double nearest_if(const std::vector<double>& lines, double fx,
                         int* which = nullptr) {
  int best = 0;
  for (std::size_t j = 1; j < lines.size(); ++j)
    if (std::abs(fx - lines[j]) < std::abs(fx - lines[best]))
      best = static_cast<int>(j);
  if (which) *which = best;
  return fx - lines[best];
}

} // namespace detail

// Greedy first-fit uniform design: each carrier is assigned to the first comb
// (in candidate order) whose nearest-line IF is within the band and separated
// from every already-assigned |IF| by at least the budget floor.
inline UniformDesign design_uniform(const CarrierPlan& carriers,
                                    const BandBudget& budget,
                                    const std::vector<double>& candidate_rates_hz,
                                    double total_power_w,
                                    double anchor_offset_hz = 0.0) {
  carriers.validate();
  budget.validate();
  if (candidate_rates_hz.empty())
    throw SchemaError("design_uniform: no candidate rates");
  const double f_lo = carriers.carriers.front().freq_hz;
  const double f_hi = carriers.carriers.back().freq_hz;
  const double anchor = f_lo + anchor_offset_hz;

  std::vector<std::vector<double>> lines_per_comb;
  for (double rate : candidate_rates_hz) {
    if (rate < budget.min_comb_spacing_hz)
      throw SchemaError("design_uniform: rate below min comb spacing");
    lines_per_comb.push_back(detail::comb_lines(anchor, rate, f_lo, f_hi));
  }

  std::vector<int> comb_of_carrier(carriers.count(), -1);
  std::vector<double> taken_ifs;
  for (int i = 0; i < carriers.count(); ++i) {
    const double fx = carriers.carriers[i].freq_hz;
    for (std::size_t c = 0; c < lines_per_comb.size(); ++c) {
      const double df = detail::nearest_if(lines_per_comb[c], fx);
      if (std::abs(df) > budget.if_max_hz) continue;
      bool clear = true;
      for (double other : taken_ifs)
        if (std::abs(std::abs(df) - std::abs(other)) <
            budget.min_if_separation_hz) {
          clear = false;
          break;
        }
      if (clear) {
        comb_of_carrier[i] = static_cast<int>(c);
        taken_ifs.push_back(df);
        break;
      }
    }
    if (comb_of_carrier[i] < 0)
      throw PlanInfeasible("design_uniform: carrier " + std::to_string(i) +
                               " cannot be placed collision-free",
                           i);
  }

  UniformDesign out;
  out.comb_of_carrier = comb_of_carrier;
  // Only combs that actually host a carrier are emitted.
  for (std::size_t c = 0; c < lines_per_comb.size(); ++c) {
    if (std::find(comb_of_carrier.begin(), comb_of_carrier.end(),
                  static_cast<int>(c)) == comb_of_carrier.end())
      continue;
    MfcPlan plan;
    for (double f : lines_per_comb[c]) plan.lines.push_back({f, 0.0});
    plan.total_power_w = total_power_w; // split below once merged
    out.combs.push_back(plan);
  }
  for (const auto& plan : out.combs)
    for (const auto& l : plan.lines) out.merged.lines.push_back(l);
  std::sort(out.merged.lines.begin(), out.merged.lines.end(),
            [](const MfcLine& a, const MfcLine& b) {
              return a.freq_hz < b.freq_hz;
            });
  out.merged.lines.erase(
      std::unique(out.merged.lines.begin(), out.merged.lines.end(),
                  [](const MfcLine& a, const MfcLine& b) {
                    return a.freq_hz == b.freq_hz;
                  }),
      out.merged.lines.end());
  out.merged.total_power_w = total_power_w;
  out.if_map = if_assignment(carriers, out.merged);
  return out;
}

struct NonUniformDesign {
  MfcPlan plan;
  IfMap if_map;
};

// Direct non-uniform construction: one comb line per carrier so the IFs form
// an exact ladder Delta f_i = (i + i0) * delta. By default i0 = 1, keeping the
// first IF off DC (where it would collide with DC removal); i0 = 0 recovers
// the literal i*delta ladder.
inline NonUniformDesign design_nonuniform(const CarrierPlan& carriers,
                                          const BandBudget& budget,
                                          double delta_hz,
                                          double total_power_w,
                                          bool start_at_one = true) {
  carriers.validate();
  budget.validate();
  const int n = carriers.count();
  const int i0 = start_at_one ? 1 : 0;
  if ((n - 1 + i0) * delta_hz > budget.if_max_hz)
    throw PlanInfeasible("design_nonuniform: ladder exceeds IF band", n - 1);
  if (delta_hz < budget.min_if_separation_hz)
    throw PlanInfeasible("design_nonuniform: delta below separation floor");

  NonUniformDesign out;
  for (int i = 0; i < n; ++i) {
    const double offset = (i + i0) * delta_hz;
    out.plan.lines.push_back({carriers.carriers[i].freq_hz - offset, 0.0});
  }
  // Enforce the comb-spacing constraint; a too-close pair can sometimes be
  // fixed by flipping the offending line to the other side of its carrier
  // (the |IF| and hence the ladder is unchanged).
  for (int i = 1; i < n; ++i) {
    if (out.plan.lines[i].freq_hz - out.plan.lines[i - 1].freq_hz <
        budget.min_comb_spacing_hz) {
      const double flipped =
          carriers.carriers[i].freq_hz + (i + i0) * delta_hz;
      out.plan.lines[i].freq_hz = flipped;
    }
  }
  std::vector<double> sorted;
  for (const auto& l : out.plan.lines) sorted.push_back(l.freq_hz);
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] - sorted[i - 1] < budget.min_comb_spacing_hz)
      throw PlanInfeasible("design_nonuniform: comb spacing constraint unmet",
                           static_cast<int>(i));
  out.plan.total_power_w = total_power_w;
  out.if_map = if_assignment(carriers, out.plan);
  // The flipped construction must still map each carrier onto its own line.
  for (int i = 0; i < n; ++i)
    if (out.if_map.entries[i].line != i)
      throw PlanInfeasible("design_nonuniform: nearest-line mapping broken", i);
  return out;
}

} // namespace mcraqr::signal

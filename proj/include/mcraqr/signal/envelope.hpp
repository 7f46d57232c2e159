#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "mcraqr/constants.hpp"
#include "mcraqr/errors.hpp"
#include "mcraqr/signal/plans.hpp"

namespace mcraqr::signal {

// Field amplitude (V/m) of a tone with power P through aperture A_e:
// U = sqrt(2 P / (A_e c eps0)).
inline double amplitude_from_power(double power_w, double aperture_m2) {
  return std::sqrt(2.0 * power_w /
                   (aperture_m2 * constants::c0 * constants::epsilon0));
}

inline double rabi_from_amplitude(double u, double mu_45) {
  if (u < 0) throw SchemaError("rabi_from_amplitude: negative amplitude");
  return mu_45 * u / constants::hbar;
}

inline double amplitude_from_rabi(double omega, double mu_45) {
  return omega * constants::hbar / mu_45;
}

// Exact superposed envelope: the magnitude of the full complex baseband sum
// of every carrier and comb line (referenced to the lowest plan frequency;
// the optical/RF carrier itself is irrelevant to the envelope).
inline double exact_envelope(const CarrierPlan& carriers, const MfcPlan& comb,
                             double aperture_m2, double t) {
  double fref = comb.lines[0].freq_hz;
  for (const auto& l : comb.lines) fref = std::min(fref, l.freq_hz);
  for (const auto& c : carriers.carriers) fref = std::min(fref, c.freq_hz);
  std::complex<double> acc = 0.0;
  const double py = comb.per_line_power();
  for (const auto& c : carriers.carriers) {
    const double ph =
        constants::two_pi * (c.freq_hz - fref) * t + c.phase_rad;
    acc += std::sqrt(c.power_w) * std::polar(1.0, ph);
  }
  for (const auto& l : comb.lines) {
    const double ph =
        constants::two_pi * (l.freq_hz - fref) * t + l.phase_rad;
    acc += std::sqrt(py) * std::polar(1.0, ph);
  }
  return std::sqrt(2.0 / (constants::c0 * constants::epsilon0 * aperture_m2)) *
         std::abs(acc);
}

// First-order approximation: U_y plus one beat per carrier against its
// nearest comb line.
inline double approx_envelope(const CarrierPlan& carriers, const MfcPlan& comb,
                              const IfMap& map, double aperture_m2, double t) {
  const double scale =
      std::sqrt(2.0 / (constants::c0 * constants::epsilon0 * aperture_m2));
  double u = std::sqrt(comb.total_power_w);
  const double inv_sqrt_b = 1.0 / std::sqrt(static_cast<double>(comb.count()));
  for (const auto& e : map.entries) {
    const double ux = std::sqrt(carriers.carriers[e.carrier].power_w);
    u += inv_sqrt_b * ux *
         std::cos(constants::two_pi * e.delta_f_hz * t + e.delta_phi_rad);
  }
  return scale * u;
}

struct ApproximationError {
  double rel_rms_error = 0.0; // RMS(approx - exact) / RMS(exact)
  double power_ratio = 0.0;   // sum P_x / P_y
};

// Weak-signal validity threshold: above this carrier-to-comb power ratio the
// first-order envelope is only indicative.
inline constexpr double kWeakSignalPowerRatio = 1e-2;

// Accuracy of the single-beat envelope model against the envelope the atomic
// readout actually responds to.
//
// The reference is the square root of the band-limited instantaneous
// intensity: beat notes faster than `lowpass_hz` (the receiver's response
// bandwidth) average out in the medium, so they are excluded. Because the
// intensity of a tone sum is itself a sum of pairwise beat tones, the band
// limit is applied exactly by keeping only tone pairs whose difference
// frequency fits inside the band -- no FFT grid and no spectral leakage.
//
// The comparison is made on the mean-removed waveforms: the DC envelope sets
// the bias point while the IF demodulators consume only the modulation, so
// the figure of merit is the relative RMS error of the AC part.
inline ApproximationError approximation_error(const CarrierPlan& carriers,
                                              const MfcPlan& comb,
                                              const IfMap& map,
                                              double aperture_m2,
                                              double window,
                                              double lowpass_hz) {
  carriers.validate();
  comb.validate();
  if (window <= 0) throw SchemaError("approximation_error: window <= 0");
  if (lowpass_hz <= 0)
    throw SchemaError("approximation_error: lowpass_hz <= 0");
  (void)aperture_m2; // a common field scale cancels in the relative error

  struct Tone {
    double f, a, ph;
  };
  std::vector<Tone> tones;
  tones.reserve(carriers.carriers.size() + comb.lines.size());
  for (const auto& c : carriers.carriers)
    tones.push_back({c.freq_hz, std::sqrt(c.power_w), c.phase_rad});
  const double py = comb.per_line_power();
  for (const auto& l : comb.lines)
    tones.push_back({l.freq_hz, std::sqrt(py), l.phase_rad});

  // In-band beat lines of the intensity |sum|^2.
  struct Beat {
    double f, amp, ph;
  };
  std::vector<Beat> beats;
  double dc = 0.0;
  for (std::size_t i = 0; i < tones.size(); ++i) {
    dc += tones[i].a * tones[i].a;
    for (std::size_t j = i + 1; j < tones.size(); ++j) {
      const double df = tones[i].f - tones[j].f;
      if (std::abs(df) <= lowpass_hz)
        beats.push_back({df, 2.0 * tones[i].a * tones[j].a,
                         tones[i].ph - tones[j].ph});
    }
  }

  const int n = std::max(4096, static_cast<int>(
                                   std::ceil(16.0 * lowpass_hz * window)));
  const double u_y = std::sqrt(comb.total_power_w);
  const double inv_sqrt_b = 1.0 / std::sqrt(static_cast<double>(comb.count()));
  std::vector<double> ex(n), ap(n);
  double mean_ex = 0.0, mean_ap = 0.0;
  for (int k = 0; k < n; ++k) {
    const double t = k * window / n;
    double intensity = dc;
    for (const auto& b : beats)
      intensity += b.amp * std::cos(constants::two_pi * b.f * t + b.ph);
    ex[k] = std::sqrt(std::max(intensity, 0.0));
    double u = u_y;
    for (const auto& e : map.entries)
      u += inv_sqrt_b * std::sqrt(carriers.carriers[e.carrier].power_w) *
           std::cos(constants::two_pi * e.delta_f_hz * t + e.delta_phi_rad);
    ap[k] = u;
    mean_ex += ex[k];
    mean_ap += ap[k];
  }
  mean_ex /= n;
  mean_ap /= n;
  double num = 0.0, den = 0.0;
  for (int k = 0; k < n; ++k) {
    const double e = ex[k] - mean_ex;
    const double a = ap[k] - mean_ap;
    num += (a - e) * (a - e);
    den += e * e;
  }
  if (den <= 0.0)
    throw DenominatorUnderflow("approximation_error: zero modulation power");
  ApproximationError r;
  r.rel_rms_error = std::sqrt(num / den);
  r.power_ratio = carriers.total_power() / comb.total_power_w;
  return r;
}

} // namespace mcraqr::signal

#pragma once

#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include "mcraqr/atomic_system.hpp"
#include "mcraqr/constants.hpp"
#include "mcraqr/errors.hpp"
#include "mcraqr/optics/probe.hpp"
#include "mcraqr/quantum/rho21.hpp"
#include "mcraqr/signal/plans.hpp"

namespace mcraqr::optics {

struct DetectorConfig {
  double local_power_w = 0.0;       // local optical power P_l
  double local_phase_rad = 0.0;     // phi_l
  double lna_gain = 1.0;            // G (linear)
  double quantum_efficiency = 0.8;  // eta

  // PD responsivity alpha = eta q / (hbar omega_p).
  double responsivity(double f_p) const {
    return quantum_efficiency * constants::q_e /
           (constants::hbar * constants::two_pi * f_p);
  }
  void validate() const {
    if (local_power_w <= 0) throw SchemaError("DetectorConfig: P_l <= 0");
    if (lna_gain < 1.0) throw SchemaError("DetectorConfig: LNA gain < 1");
    if (!(quantum_efficiency > 0 && quantum_efficiency <= 1))
      throw SchemaError("DetectorConfig: eta out of (0, 1]");
  }
};

// Which length enters the AC coefficient of the linearized detector output.
// `taylor` (2L) is the value the first-order expansion of the full chain
// actually produces; `spacing` (d, the array pitch) and `cell` (L) are the
// documented configuration aliases.
enum class LengthMode { taylor, spacing, cell };

inline double length_for_mode(LengthMode mode, double cell_length,
                              double sensor_spacing) {
  switch (mode) {
    case LengthMode::taylor: return 2.0 * cell_length;
    case LengthMode::spacing: return sensor_spacing;
    case LengthMode::cell: return cell_length;
  }
  throw SchemaError("length_for_mode: bad mode");
}

// Full nonlinear chain: susceptibility -> probe transmission -> balanced
// detection. Output in electrical units (A).
inline double bcod_output_exact(const AtomicSystem& sys, double omega_z,
                                const ProbeConfig& probe,
                                const DetectorConfig& det) {
  det.validate();
  const auto chi = quantum::susceptibility(sys, omega_z);
  const auto out = probe_amplitude_phase(chi, probe, sys.cell_length);
  const double pm = probe_power(out.u_p, probe);
  const double alpha = det.responsivity(probe.f_p());
  return 2.0 * std::sqrt(det.lna_gain) * alpha *
         std::sqrt(det.local_power_w * pm) *
         std::cos(det.local_phase_rad - out.phi_p);
}

// Everything the first-order expansion needs, all evaluated at the comb
// operating point Omega_y.
struct Linearization {
  double dc = 0.0;        // v(Omega_y)
  double slope = 0.0;     // d v / d Omega_z at Omega_y (exact Taylor slope)
  double a_tilde = 0.0;   // |chi'|
  double psi_p = 0.0;     // phase of the AC coefficient
  double a_m = 0.0;       // closed-form AC coefficient (with the configured length)
  double phi_p = 0.0;     // probe phase at Omega_y
  double probe_power_w = 0.0;
};

inline Linearization linearize_bcod(const AtomicSystem& sys, double omega_y,
                                    const ProbeConfig& probe,
                                    const DetectorConfig& det, int comb_b,
                                    double sensor_spacing,
                                    LengthMode mode = LengthMode::spacing) {
  det.validate();
  const auto chi = quantum::susceptibility(sys, omega_y);
  const auto out = probe_amplitude_phase(chi, probe, sys.cell_length);
  const double pm = probe_power(out.u_p, probe);
  const double alpha = det.responsivity(probe.f_p());
  const double front =
      2.0 * std::sqrt(det.lna_gain) * alpha * std::sqrt(det.local_power_w * pm);
  const double theta = det.local_phase_rad - out.phi_p;

  Linearization lin;
  lin.phi_p = out.phi_p;
  lin.probe_power_w = pm;
  lin.dc = front * std::cos(theta);
  const double re = chi.chi_prime.real();
  const double im = chi.chi_prime.imag();
  lin.a_tilde = std::hypot(re, im);
  // psi chosen so that -A~*cos(theta + psi) == -Im(chi')cos(theta)
  // + Re(chi')sin(theta); atan2 keeps the correct branch when Re(chi') < 0.
  lin.psi_p = std::atan2(re, im);
  const double kpl = probe.k_p() * sys.cell_length;
  // Exact first-order slope of the full chain.
  lin.slope = front * kpl *
              (-im * std::cos(theta) + re * std::sin(theta));
  const double d_eff = length_for_mode(mode, sys.cell_length, sensor_spacing);
  lin.a_m = lin.a_tilde * constants::pi * d_eff * sys.mu_45 /
            (probe.lambda_p * std::sqrt(static_cast<double>(comb_b)) *
             constants::hbar) *
            std::cos(theta + lin.psi_p);
  return lin;
}

// Linearized detector output sampled over a given Omega_z(t) envelope:
// DC plus the Taylor slope times the Rabi deviation. The deviation must stay
// within half of the operating point for the expansion to be meaningful.
inline std::vector<double> bcod_output_linearized(
    const AtomicSystem& sys, const std::vector<double>& omega_z_t,
    double omega_y, const ProbeConfig& probe, const DetectorConfig& det,
    int comb_b, double sensor_spacing,
    LengthMode mode = LengthMode::spacing) {
  const Linearization lin =
      linearize_bcod(sys, omega_y, probe, det, comb_b, sensor_spacing, mode);
  // The closed form reproduces the Taylor slope only in `taylor` mode; the
  // sampled output always uses the exact slope so DC+AC match the chain.
  std::vector<double> v(omega_z_t.size());
  for (std::size_t i = 0; i < omega_z_t.size(); ++i) {
    const double dev = omega_z_t[i] - omega_y;
    if (std::abs(dev) > 0.5 * omega_y)
      throw LinearizationOutOfRange(
          "bcod_output_linearized: |Omega_z - Omega_y| > Omega_y / 2");
    v[i] = lin.dc + lin.slope * dev;
  }
  return v;
}

// Per-carrier complex demodulation of the AC component over an integer number
// of IF periods. Returns one complex baseband value per IF-map entry;
// rho_m * sqrt(P_x,i) * exp(j d_phi) in the noiseless case.
inline std::vector<std::complex<double>> extract_ac(
    const std::vector<double>& v, double fs, const signal::IfMap& map) {
  const std::size_t n = v.size();
  if (n < 2) throw SchemaError("extract_ac: too few samples");
  const double window = static_cast<double>(n) / fs;
  const auto groups = signal::detect_ambiguity(map, 1.0 / window);
  if (!groups.empty())
    throw IfCollision("extract_ac: carriers share an IF within resolution");
  const double dc = std::accumulate(v.begin(), v.end(), 0.0) / n;
  std::vector<std::complex<double>> out;
  out.reserve(map.entries.size());
  for (const auto& e : map.entries) {
    std::complex<double> acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double t = static_cast<double>(k) / fs;
      acc += (v[k] - dc) *
             std::polar(1.0, -constants::two_pi * e.delta_f_hz * t);
    }
    out.push_back(2.0 * acc / static_cast<double>(n));
  }
  return out;
}

// Demodulation window (s): the shortest interval containing an integer number
// of periods of every IF, capped at `cap_s`. IFs are snapped to an integer
// grid of `resolution_hz` so the common period is exact.
inline double demod_window(const signal::IfMap& map, double cap_s = 1e-2,
                           double resolution_hz = 1.0) {
  long g = 0;
  for (const auto& e : map.entries) {
    const long f = std::lround(std::abs(e.delta_f_hz) / resolution_hz);
    if (f != 0) g = std::gcd(g, f);
  }
  if (g == 0) throw SchemaError("demod_window: all IFs are DC");
  const double window = 1.0 / (g * resolution_hz);
  if (window > cap_s)
    throw SchemaError("demod_window: common period exceeds cap");
  return window;
}

} // namespace mcraqr::optics

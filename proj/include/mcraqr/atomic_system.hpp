#pragma once

#include <cmath>

#include "mcraqr/constants.hpp"
#include "mcraqr/errors.hpp"

namespace mcraqr {

// Parameters of the five-level atomic sensor. All frequencies/rates are
// angular (rad/s); conversion from ordinary Hz happens at the config boundary.
struct AtomicSystem {
  // Rabi frequencies of the probe, coupling and auxiliary fields.
  double omega_p = 0.0;
  double omega_c = 0.0;
  double omega_a = 0.0;
  // Detunings of probe, coupling, auxiliary and incident-signal fields.
  double delta_p = 0.0;
  double delta_c = 0.0;
  double delta_a = 0.0;
  double delta_x = 0.0;
  // Decay rate of level |2>.
  double gamma_2 = 0.0;
  // Transition dipole moments (C*m).
  double mu_12 = 0.0;
  double mu_45 = 0.0;
  // Atomic density (m^-3) and vapor-cell length (m).
  double n_atoms = 0.0;
  double cell_length = 0.0;
  // Probe wavelength (m).
  double lambda_p = 0.0;

  void validate() const {
    if (omega_p < 0 || omega_c < 0 || omega_a < 0)
      throw SchemaError("AtomicSystem: Rabi frequencies must be >= 0");
    if (gamma_2 <= 0) throw SchemaError("AtomicSystem: gamma_2 must be > 0");
    if (n_atoms <= 0) throw SchemaError("AtomicSystem: n_atoms must be > 0");
    if (cell_length <= 0)
      throw SchemaError("AtomicSystem: cell_length must be > 0");
  }

  // The closed-form rho21 is derived under a perfectly resonant probe.
  bool probe_resonant() const { return delta_p == 0.0; }

  // Susceptibility scale factor C = -2 N0 mu12^2 / (eps0 hbar Omega_p).
  double chi_scale() const {
    return -2.0 * n_atoms * mu_12 * mu_12 /
           (constants::epsilon0 * constants::hbar * omega_p);
  }
};

// Cesium defaults used throughout the experiments (see README for the
// physical setup): Omega_p/2pi = 10 MHz, Omega_c/2pi = 5.04 MHz,
// gamma_2/2pi = 5.2 MHz, L = 10 cm, N0 = 4.89e10 cm^-3, probe at 852 nm,
// mu_45 = 1275.23 e*a0, mu_12 = 4.48 e*a0 (Cs D2 line).
inline AtomicSystem default_atomic_system() {
  AtomicSystem sys;
  sys.omega_p = constants::rad_from_hz(10.0e6);
  sys.omega_c = constants::rad_from_hz(5.04e6);
  sys.omega_a = constants::rad_from_hz(7.0e6);
  sys.delta_p = 0.0;
  sys.delta_c = 0.0;
  sys.delta_a = constants::rad_from_hz(25.0e6);
  // Signal-field detuning. Exact two-photon resonance of the AUX + signal
  // fields (delta_x = -delta_a) is a dark point: the numerator of rho21
  // vanishes identically and the receiver has no response. We therefore
  // operate 3 MHz off that resonance, which sits near the conversion-gain
  // peak of the large-detuning regime.
  sys.delta_x = constants::rad_from_hz(-22.0e6);
  sys.gamma_2 = constants::rad_from_hz(5.2e6);
  sys.mu_12 = 4.48 * constants::dipole_ea0;
  sys.mu_45 = 1275.23 * constants::dipole_ea0;
  sys.n_atoms = 4.89e10 * 1e6; // 4.89e10 cm^-3 in m^-3
  sys.cell_length = 0.10;
  sys.lambda_p = 852.0e-9;
  return sys;
}

} // namespace mcraqr

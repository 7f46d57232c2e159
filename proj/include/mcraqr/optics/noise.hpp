#pragma once

#include <cmath>

#include "mcraqr/constants.hpp"
#include "mcraqr/errors.hpp"
#include "mcraqr/optics/detection.hpp"

namespace mcraqr::optics {

struct NoiseConfig {
  double bandwidth_hz = 1e6;    // per-carrier receive bandwidth B_i
  double temperature_k = 290.0; // thermal noise temperature
  bool include_qpn = false;     // quantum projection noise is repumpable away
  double gamma_nat = 0.0;       // natural decay rate of the readout state
  double gamma_bbr = 0.0;       // blackbody-induced decay rate
  double n_atoms = 0.0;         // participating atom number
  double upsilon_1 = 1.0;       // preparation efficiency
  double upsilon_2 = 1.0;       // readout efficiency

  void validate() const {
    if (bandwidth_hz <= 0) throw SchemaError("NoiseConfig: bandwidth <= 0");
    if (temperature_k < 0) throw SchemaError("NoiseConfig: temperature < 0");
    if (include_qpn &&
        !(n_atoms > 0 && upsilon_1 > 0 && upsilon_2 > 0 &&
          gamma_nat + gamma_bbr > 0))
      throw SchemaError("NoiseConfig: QPN enabled but parameters unset");
  }
};

struct NoisePowers {
  double qpn = 0.0; // quantum projection noise (A^2)
  double psn = 0.0; // photon shot noise (A^2)
  double itn = 0.0; // intrinsic thermal noise (A^2)

  double total() const { return qpn + psn + itn; }
  // Each demodulated quadrature carries half the total noise power.
  double sigma_w2() const { return 0.5 * total(); }
};

// Noise powers at the detector output for one sensor. `rho_m` and
// `probe_power_w` come from the operating-point gain computation.
inline NoisePowers noise_powers(double rho_m, double probe_power_w,
                                const DetectorConfig& det,
                                const AtomicSystem& sys,
                                const NoiseConfig& cfg) {
  det.validate();
  cfg.validate();
  NoisePowers n;
  if (cfg.include_qpn) {
    n.qpn = rho_m * rho_m * cfg.bandwidth_hz * constants::hbar *
            constants::hbar * (cfg.gamma_nat + cfg.gamma_bbr) /
            (sys.mu_45 * sys.mu_45 * cfg.n_atoms * cfg.upsilon_1 *
             cfg.upsilon_2);
  }
  const double alpha =
      det.quantum_efficiency * constants::q_e /
      (constants::hbar * constants::two_pi * constants::c0 / sys.lambda_p);
  n.psn = 2.0 * constants::q_e * cfg.bandwidth_hz * alpha * det.lna_gain *
          (det.local_power_w + probe_power_w);
  n.itn = constants::k_B * cfg.temperature_k * cfg.bandwidth_hz * det.lna_gain;
  return n;
}

} // namespace mcraqr::optics

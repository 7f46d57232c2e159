#pragma once

#include <cmath>
#include <complex>

#include "mcraqr/constants.hpp"
#include "mcraqr/errors.hpp"
#include "mcraqr/quantum/rho21.hpp"

namespace mcraqr::optics {

struct ProbeConfig {
  double u_0 = 0.0;      // input probe amplitude (V/m)
  double phi_0 = 0.0;    // input probe phase (rad)
  double fwhm = 0.0;     // beam FWHM F_p (m)
  double lambda_p = 0.0; // probe wavelength (m)

  double f_p() const { return constants::c0 / lambda_p; }
  double k_p() const { return constants::two_pi / lambda_p; }
  void validate() const {
    if (u_0 <= 0 || fwhm <= 0 || lambda_p <= 0)
      throw SchemaError("ProbeConfig: u_0, fwhm, lambda_p must be > 0");
  }
};

// A probe with beam power P and FWHM F_p has on-axis amplitude
// U_0 = sqrt(8 ln2 P / (pi c eps0 F_p^2)) (Gaussian beam, so that
// |P_b|^2 = P below).
inline double probe_amplitude_from_power(double power_w, double fwhm) {
  return std::sqrt(8.0 * std::log(2.0) * power_w /
                   (constants::pi * constants::c0 * constants::epsilon0 *
                    fwhm * fwhm));
}

struct ProbeOutput {
  double u_p = 0.0;   // output amplitude (V/m)
  double phi_p = 0.0; // output phase (rad)
};

// Transmission through the cell: amplitude attenuated by Im(chi), phase
// advanced by Re(chi), over the optical path k_p * L.
inline ProbeOutput probe_amplitude_phase(const quantum::SusceptibilityPoint& chi,
                                         const ProbeConfig& probe,
                                         double cell_length) {
  probe.validate();
  const double kpl = probe.k_p() * cell_length;
  ProbeOutput out;
  out.u_p = probe.u_0 * std::exp(-kpl * chi.chi.imag());
  out.phi_p = probe.phi_0 + kpl * chi.chi.real();
  return out;
}

// Equivalent baseband signal of the output probe;
// |P_b|^2 is the delivered probe power.
inline std::complex<double> probe_baseband(double u_p, double phi_p,
                                           const ProbeConfig& probe) {
  if (u_p < 0) throw SchemaError("probe_baseband: negative amplitude");
  const double mag = std::sqrt(constants::pi * constants::c0 *
                               constants::epsilon0 / (8.0 * std::log(2.0))) *
                     probe.fwhm * u_p;
  return std::polar(mag, phi_p);
}

inline double probe_power(double u_p, const ProbeConfig& probe) {
  const double mag = std::sqrt(constants::pi * constants::c0 *
                               constants::epsilon0 / (8.0 * std::log(2.0))) *
                     probe.fwhm * u_p;
  return mag * mag;
}

} // namespace mcraqr::optics

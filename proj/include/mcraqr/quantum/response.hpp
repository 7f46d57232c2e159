#pragma once

#include <complex>

#include <Eigen/Dense>

#include "mcraqr/atomic_system.hpp"
#include "mcraqr/constants.hpp"
#include "mcraqr/errors.hpp"
#include "mcraqr/quantum/hamiltonian.hpp"
#include "mcraqr/quantum/steady_state.hpp"

namespace mcraqr::quantum {

// Linear response of rho_21 to a small sinusoidal modulation of Omega_z at
// frequency f, normalized so that f -> 0 recovers the static slope. For a
// perturbation eps*cos(2 pi f t) about the operating point, first-order
// theory gives the coherence response through the resolvent of the
// Liouvillian: r(w) = (jw I - L)^{-1} M vec(rho_ss), where M is the
// commutator superoperator of dH/dOmega_z.
inline std::complex<double> modulation_response(const AtomicSystem& sys,
                                                double omega_y, double f_hz) {
  sys.validate();
  const Matrix25cd L = detail::liouvillian(sys, omega_y, sys.gamma_2);
  const Matrix5cd rho = steady_state_numeric(sys, omega_y);

  // dH~/dOmega_z (gamma_2-normalized to match the Liouvillian scaling).
  Matrix5cd dh = Matrix5cd::Zero();
  dh(3, 4) = dh(4, 3) = 0.5 / sys.gamma_2;
  const Matrix5cd m = std::complex<double>(0.0, 1.0) * (rho * dh - dh * rho);

  Vector25cd mv;
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 5; ++c) mv(detail::vec_index(r, c)) = m(r, c);

  const double w_n = constants::two_pi * f_hz / sys.gamma_2;
  Matrix25cd a =
      std::complex<double>(0.0, w_n) * Matrix25cd::Identity() - L;
  // The trace direction is L's null direction; pin it so the resolvent is
  // well-posed (the response is traceless, so this adds nothing).
  for (int c = 0; c < 5; ++c) a(24, detail::vec_index(c, c)) += 1.0;
  Vector25cd r = a.fullPivLu().solve(mv);
  if (!r.allFinite())
    throw SingularSystem("modulation_response: resolvent solve failed");
  return r(detail::vec_index(1, 0)); // the probe coherence rho_21
}

// |response(f)| / |response(~0)|.
inline double modulation_gain(const AtomicSystem& sys, double omega_y,
                              double f_hz) {
  const auto dc = modulation_response(sys, omega_y, 0.0);
  const auto ac = modulation_response(sys, omega_y, f_hz);
  if (std::abs(dc) == 0.0)
    throw DenominatorUnderflow("modulation_gain: zero DC response");
  return std::abs(ac) / std::abs(dc);
}

// Smallest f with |H(f)| <= 1/sqrt(2), found by doubling then bisection.
inline double three_db_bandwidth(const AtomicSystem& sys, double omega_y,
                                 double f_start_hz = 1e5) {
  const double target = 1.0 / std::sqrt(2.0);
  double lo = 0.0, hi = f_start_hz;
  while (modulation_gain(sys, omega_y, hi) > target) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) throw ModelError("three_db_bandwidth: no roll-off found");
  }
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (modulation_gain(sys, omega_y, mid) > target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

} // namespace mcraqr::quantum

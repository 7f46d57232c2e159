#pragma once

#include <Eigen/Dense>
#include <complex>

#include "mcraqr/atomic_system.hpp"
#include "mcraqr/constants.hpp"

namespace mcraqr::quantum {

using Matrix5cd = Eigen::Matrix<std::complex<double>, 5, 5>;

// H / hbar in rad/s: (1/2) * [[0,Wp,0,0,0],[Wp,A,Wc,0,0],[0,Wc,B,Wa,0],
// [0,0,Wa,C,Wz],[0,0,0,Wz,D]] with A = -2*dp, B = -2(dp+dc),
// C = -2(dp+dc-da), D = -2(dp+dc-da-dx). Real-symmetric by construction.
inline Matrix5cd hamiltonian_over_hbar(const AtomicSystem& sys,
                                       double omega_z) {
  const double A = -2.0 * sys.delta_p;
  const double B = -2.0 * (sys.delta_p + sys.delta_c);
  const double C = -2.0 * (sys.delta_p + sys.delta_c - sys.delta_a);
  const double D =
      -2.0 * (sys.delta_p + sys.delta_c - sys.delta_a - sys.delta_x);
  Matrix5cd H = Matrix5cd::Zero();
  H(0, 1) = H(1, 0) = sys.omega_p;
  H(1, 1) = A;
  H(1, 2) = H(2, 1) = sys.omega_c;
  H(2, 2) = B;
  H(2, 3) = H(3, 2) = sys.omega_a;
  H(3, 3) = C;
  H(3, 4) = H(4, 3) = omega_z;
  H(4, 4) = D;
  H *= 0.5;
  return H;
}

// The Hamiltonian in energy units (J).
inline Matrix5cd build_hamiltonian(const AtomicSystem& sys, double omega_z) {
  return constants::hbar * hamiltonian_over_hbar(sys, omega_z);
}

// Lindblad dissipator: only level |2> decays. D[0][0] = +g2*rho22,
// D[1][1] = -g2*rho22, and every coherence in the second row/column is damped
// by -g2/2. All other entries vanish.
inline Matrix5cd lindblad_dissipator(const Matrix5cd& rho, double gamma_2) {
  Matrix5cd D = Matrix5cd::Zero();
  D(0, 0) = gamma_2 * rho(1, 1);
  D(1, 1) = -gamma_2 * rho(1, 1);
  for (int k = 0; k < 5; ++k) {
    if (k == 1) continue;
    D(1, k) = -0.5 * gamma_2 * rho(1, k);
    D(k, 1) = -0.5 * gamma_2 * rho(k, 1);
  }
  return D;
}

// Right-hand side of the master equation:
// drho/dt = i (rho Ht - Ht rho) + D(rho), with Ht = H/hbar.
inline Matrix5cd master_rhs(const Matrix5cd& Ht, const Matrix5cd& rho,
                            double gamma_2) {
  const std::complex<double> j(0.0, 1.0);
  return j * (rho * Ht - Ht * rho) + lindblad_dissipator(rho, gamma_2);
}

} // namespace mcraqr::quantum

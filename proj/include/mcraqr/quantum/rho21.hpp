#pragma once

#include <cmath>
#include <complex>

#include "mcraqr/atomic_system.hpp"
#include "mcraqr/errors.hpp"

namespace mcraqr::quantum {

// Polynomial coefficients of the steady-state coherence
//
//   rho21(W) = [ n1 w^2 + n2 w + n3 - j (n4 w^2 + n5 w + n6) ] /
//              [ d1 w^2 + d2 w + d3 ],          w = W^2,
//
// valid for a resonant probe (delta_p = 0). The coefficients are stated in
// terms of
//   E = da - dc,  T = E + dx,  S = 4 dc E + oa^2,
//   G = g2^2 + 2 op^2,  P = oc^2 + op^2,
// and were validated against the independent Liouvillian solver by exact
// rational interpolation (they are homogeneous, so any common frequency
// scaling cancels).
struct Rho21Coefficients {
  double n1, n2, n3, n4, n5, n6;
  double d1, d2, d3;
};

inline Rho21Coefficients rho21_coefficients(double op, double oc, double oa,
                                            double dc, double da, double dx,
                                            double g2) {
  const double E = da - dc;
  const double T = E + dx;
  const double S = 4.0 * dc * E + oa * oa;
  const double G = g2 * g2 + 2.0 * op * op;
  const double P = oc * oc + op * op;
  const double op2 = op * op, op4 = op2 * op2;
  const double oa2 = oa * oa;
  const double oc2 = oc * oc;

  Rho21Coefficients k;
  k.n1 = -2.0 * dc * oc2 * op;
  k.n2 = 2.0 * oc2 * op * (S + 4.0 * dc * E) * T;
  k.n3 = -8.0 * oc2 * op * E * S * T * T;
  k.n4 = 4.0 * dc * dc * op * g2;
  k.n5 = -8.0 * dc * op * g2 * S * T;
  k.n6 = 4.0 * op * g2 * S * S * T * T;
  k.d1 = P * P + 4.0 * dc * dc * G;
  k.d2 = -8.0 * T * (dc * G * S + E * P * P) + 8.0 * dc * dc * op4 +
         2.0 * oa2 * op2 * P;
  k.d3 = S * S * (4.0 * G * T * T + op4) +
         T * T * (16.0 * E * E * P * P + 8.0 * oa2 * op2 * P +
                  16.0 * dc * dc * op4);
  return k;
}

// Closed-form rho21. Inputs are normalized by gamma_2 internally for
// conditioning; the result is exactly invariant under that scaling.
inline std::complex<double> rho21_closed_form(const AtomicSystem& sys,
                                              double omega_z) {
  sys.validate();
  if (!sys.probe_resonant())
    throw SchemaError("rho21_closed_form requires delta_p = 0");
  const double s = sys.gamma_2;
  const Rho21Coefficients k = rho21_coefficients(
      sys.omega_p / s, sys.omega_c / s, sys.omega_a / s, sys.delta_c / s,
      sys.delta_a / s, sys.delta_x / s, 1.0);
  const double w = (omega_z / s) * (omega_z / s);
  const double den = (k.d1 * w + k.d2) * w + k.d3;
  if (std::abs(den) < 1e-300)
    throw DenominatorUnderflow("rho21_closed_form: denominator underflow");
  const double re = (k.n1 * w + k.n2) * w + k.n3;
  const double im = -((k.n4 * w + k.n5) * w + k.n6);
  return {re / den, im / den};
}

// A susceptibility sample: chi = C * rho21 and its analytic derivative with
// respect to Omega_z (units: s).
struct SusceptibilityPoint {
  std::complex<double> chi;
  std::complex<double> chi_prime;
  double evaluated_at = 0.0;
};

inline SusceptibilityPoint susceptibility(const AtomicSystem& sys,
                                          double omega_z) {
  if (sys.omega_p <= 0)
    throw SchemaError("susceptibility requires omega_p > 0");
  const double C = sys.chi_scale();
  const double s = sys.gamma_2;
  const Rho21Coefficients k = rho21_coefficients(
      sys.omega_p / s, sys.omega_c / s, sys.omega_a / s, sys.delta_c / s,
      sys.delta_a / s, sys.delta_x / s, 1.0);
  const double W = omega_z / s;
  const double w = W * W;
  const double den = (k.d1 * w + k.d2) * w + k.d3;
  if (std::abs(den) < 1e-300)
    throw DenominatorUnderflow("susceptibility: denominator underflow");
  const std::complex<double> num((k.n1 * w + k.n2) * w + k.n3,
                                 -((k.n4 * w + k.n5) * w + k.n6));
  // d/dW of numerator and denominator (quotient rule on polynomials in W).
  const std::complex<double> dnum(4.0 * k.n1 * W * w + 2.0 * k.n2 * W,
                                  -(4.0 * k.n4 * W * w + 2.0 * k.n5 * W));
  const double dden = 4.0 * k.d1 * W * w + 2.0 * k.d2 * W;
  SusceptibilityPoint pt;
  pt.chi = C * num / den;
  // The derivative is with respect to the scaled W; divide by gamma_2 to
  // convert to d/d(omega_z).
  pt.chi_prime = C * (dnum / den - num * dden / (den * den)) / s;
  pt.evaluated_at = omega_z;
  return pt;
}

} // namespace mcraqr::quantum

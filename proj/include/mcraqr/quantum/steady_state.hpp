#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <complex>

#include "mcraqr/errors.hpp"
#include "mcraqr/quantum/hamiltonian.hpp"

namespace mcraqr::quantum {

using Matrix25cd = Eigen::Matrix<std::complex<double>, 25, 25>;
using Vector25cd = Eigen::Matrix<std::complex<double>, 25, 1>;

namespace detail {

inline int vec_index(int row, int col) { return row * 5 + col; }

// 25x25 Liouvillian of the master equation assembled column by column in
// dimensionless units (all rates divided by `scale`) to keep the linear
// system well conditioned. Templated on the working precision: the
// trace-augmented system can reach condition numbers ~1e11 near quasi-
// degenerate operating points, which eats most of a double's mantissa, so the
// steady-state solve runs in long double.
template <typename Real>
Eigen::Matrix<std::complex<Real>, 25, 25> liouvillian_t(
    const AtomicSystem& sys, double omega_z, double scale) {
  using C = std::complex<Real>;
  using M5 = Eigen::Matrix<C, 5, 5>;
  const Real op = Real(sys.omega_p) / Real(scale);
  const Real oc = Real(sys.omega_c) / Real(scale);
  const Real oa = Real(sys.omega_a) / Real(scale);
  const Real oz = Real(omega_z) / Real(scale);
  const Real dp = Real(sys.delta_p) / Real(scale);
  const Real dc = Real(sys.delta_c) / Real(scale);
  const Real da = Real(sys.delta_a) / Real(scale);
  const Real dx = Real(sys.delta_x) / Real(scale);
  const Real g2 = Real(sys.gamma_2) / Real(scale);

  M5 H = M5::Zero();
  H(0, 1) = H(1, 0) = op;
  H(1, 1) = Real(-2) * dp;
  H(1, 2) = H(2, 1) = oc;
  H(2, 2) = Real(-2) * (dp + dc);
  H(2, 3) = H(3, 2) = oa;
  H(3, 3) = Real(-2) * (dp + dc - da);
  H(3, 4) = H(4, 3) = oz;
  H(4, 4) = Real(-2) * (dp + dc - da - dx);
  H *= Real(0.5);

  auto rhs = [&](const M5& rho) {
    const C j(Real(0), Real(1));
    M5 out = j * (rho * H - H * rho);
    out(0, 0) += g2 * rho(1, 1);
    out(1, 1) -= g2 * rho(1, 1);
    for (int k = 0; k < 5; ++k) {
      if (k == 1) continue;
      out(1, k) -= Real(0.5) * g2 * rho(1, k);
      out(k, 1) -= Real(0.5) * g2 * rho(k, 1);
    }
    return out;
  };

  Eigen::Matrix<C, 25, 25> L;
  for (int r = 0; r < 5; ++r) {
    for (int c = 0; c < 5; ++c) {
      M5 E = M5::Zero();
      E(r, c) = Real(1);
      const M5 dE = rhs(E);
      for (int i = 0; i < 5; ++i)
        for (int k = 0; k < 5; ++k)
          L(vec_index(i, k), vec_index(r, c)) = dE(i, k);
    }
  }
  return L;
}

inline Matrix25cd liouvillian(const AtomicSystem& sys, double omega_z,
                              double scale) {
  return liouvillian_t<double>(sys, omega_z, scale);
}

} // namespace detail

// Steady state of the master equation, independent of the closed form.
//
// The Liouvillian null space is usually one-dimensional, in which case the
// trace-augmented linear solve is exact. When fields decouple part of the
// level ladder (e.g. Omega_c = Omega_a = Omega_z = 0) the null space is
// larger and "the" steady state is ambiguous; we then return the steady
// state actually reached from the ground state |1><1| by projecting the
// initial condition onto the null space through the eigenbasis of L.
inline Matrix5cd steady_state_numeric(const AtomicSystem& sys,
                                      double omega_z) {
  sys.validate();
  if (omega_z < 0) throw SchemaError("steady_state_numeric: omega_z < 0");
  const double scale = sys.gamma_2;
  using LD = long double;
  using CLD = std::complex<LD>;
  using Matrix25cl = Eigen::Matrix<CLD, 25, 25>;
  using Vector25cl = Eigen::Matrix<CLD, 25, 1>;
  const Matrix25cl Lld = detail::liouvillian_t<LD>(sys, omega_z, scale);

  auto unvec = [](const Vector25cd& v) {
    Matrix5cd rho;
    for (int i = 0; i < 5; ++i)
      for (int k = 0; k < 5; ++k) rho(i, k) = v(detail::vec_index(i, k));
    return rho;
  };
  auto residual = [&](const Matrix5cd& rho) {
    Vector25cl v;
    for (int i = 0; i < 5; ++i)
      for (int k = 0; k < 5; ++k)
        v(detail::vec_index(i, k)) = CLD(rho(i, k).real(), rho(i, k).imag());
    return static_cast<double>((Lld * v).norm());
  };
  auto finalize = [&](Matrix5cd rho) {
    rho = ((rho + rho.adjoint().eval()) / 2.0).eval(); // enforce Hermiticity
    const double tr = rho.trace().real();
    if (std::abs(tr) < 1e-8)
      throw SingularSystem("steady_state_numeric: traceless null space");
    rho /= tr;
    if (residual(rho) > 1e-9)
      throw SingularSystem("steady_state_numeric: residual too large");
    return rho;
  };

  // Fast path: replace one redundant row by the trace constraint. The rows of
  // L are linearly dependent (trace preservation), so this is exact whenever
  // the steady state is unique. The pivot threshold separates a structurally
  // degenerate null space (pivot ~ machine zero) from a merely ill-conditioned
  // unique steady state, which long double has enough headroom to resolve.
  Matrix25cl A = Lld;
  for (int i = 0; i < 5; ++i)
    for (int k = 0; k < 5; ++k)
      A(24, detail::vec_index(i, k)) = (i == k) ? LD(1) : LD(0);
  Vector25cl b = Vector25cl::Zero();
  b(24) = LD(1);
  Eigen::FullPivLU<Matrix25cl> lu(A);
  lu.setThreshold(LD(1e-15));
  if (lu.isInvertible()) {
    const Vector25cl x = lu.solve(b);
    Vector25cd xd;
    for (int i = 0; i < 25; ++i)
      xd(i) = std::complex<double>(static_cast<double>(x(i).real()),
                                   static_cast<double>(x(i).imag()));
    return finalize(unvec(xd));
  }

  // Degenerate path: spectral projection of the ground state onto the null
  // space. rho_ss = lim_{t->inf} exp(L t) rho0 = sum over null modes of
  // c_k v_k with c = V^{-1} vec(rho0).
  Matrix25cd L;
  for (int i = 0; i < 25; ++i)
    for (int k = 0; k < 25; ++k)
      L(i, k) = std::complex<double>(static_cast<double>(Lld(i, k).real()),
                                     static_cast<double>(Lld(i, k).imag()));
  Eigen::ComplexEigenSolver<Matrix25cd> es(L);
  if (es.info() != Eigen::Success)
    throw SingularSystem("steady_state_numeric: eigensolver failed");
  const auto& vals = es.eigenvalues();
  const auto& V = es.eigenvectors();
  for (int k = 0; k < 25; ++k)
    if (vals(k).real() > 1e-8)
      throw SingularSystem("steady_state_numeric: growing mode, no steady limit");
  Vector25cd rho0 = Vector25cd::Zero();
  rho0(detail::vec_index(0, 0)) = 1.0; // ground state
  const Vector25cd coef = V.fullPivLu().solve(rho0);
  Vector25cd x = Vector25cd::Zero();
  for (int k = 0; k < 25; ++k)
    if (std::abs(vals(k)) < 1e-9) x += coef(k) * V.col(k);
  return finalize(unvec(x));
}

} // namespace mcraqr::quantum

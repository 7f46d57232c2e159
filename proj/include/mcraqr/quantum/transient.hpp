#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "mcraqr/errors.hpp"
#include "mcraqr/quantum/hamiltonian.hpp"

namespace mcraqr::quantum {

struct TransientResult {
  std::vector<double> t;          // output times (s)
  std::vector<Matrix5cd> states;  // density matrix at each output time
  double max_trace_drift = 0.0;   // worst per-step drift before renorm
};

// Fixed-step RK4 integration of the time-dependent master equation with a
// time-varying Omega_z(t). The integrator renormalizes the trace after every
// step (recording the drift) and starts from the ground state unless an
// initial state is supplied.
//
// `dt_hint` is the caller's resolution requirement (e.g. 1/20 of the fastest
// beat period); the actual step also respects the 1/(50*gamma_2) relaxation
// scale.
inline TransientResult transient_integrate(
    const AtomicSystem& sys, const std::function<double(double)>& omega_z_of_t,
    const std::vector<double>& t_grid, double dt_hint,
    const Matrix5cd* initial = nullptr) {
  sys.validate();
  if (t_grid.size() < 2) throw SchemaError("transient_integrate: short grid");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (t_grid[i] <= t_grid[i - 1])
      throw SchemaError("transient_integrate: t_grid must be increasing");

  const double dt_relax = 1.0 / (50.0 * sys.gamma_2);
  const double dt = std::min(dt_hint, dt_relax);

  Matrix5cd rho = Matrix5cd::Zero();
  if (initial)
    rho = *initial;
  else
    rho(0, 0) = 1.0;

  TransientResult out;
  out.t = t_grid;
  out.states.reserve(t_grid.size());
  out.states.push_back(rho);

  auto rhs = [&](double t, const Matrix5cd& r) {
    const Matrix5cd Ht = hamiltonian_over_hbar(sys, omega_z_of_t(t));
    return master_rhs(Ht, r, sys.gamma_2);
  };

  double t = t_grid.front();
  for (std::size_t seg = 1; seg < t_grid.size(); ++seg) {
    const double t_end = t_grid[seg];
    while (t < t_end - 1e-30) {
      const double h = std::min(dt, t_end - t);
      const Matrix5cd k1 = rhs(t, rho);
      const Matrix5cd k2 = rhs(t + h / 2, rho + (h / 2) * k1);
      const Matrix5cd k3 = rhs(t + h / 2, rho + (h / 2) * k2);
      const Matrix5cd k4 = rhs(t + h, rho + h * k3);
      rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      t += h;
      const double tr = rho.trace().real();
      const double drift = std::abs(tr - 1.0);
      if (drift > 1e-6)
        throw StepTooLarge("transient_integrate: trace drift " +
                           std::to_string(drift));
      out.max_trace_drift = std::max(out.max_trace_drift, drift);
      rho /= tr;
    }
    t = t_end;
    out.states.push_back(rho);
  }
  return out;
}

} // namespace mcraqr::quantum

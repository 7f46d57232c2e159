#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "mcraqr/constants.hpp"
#include "mcraqr/errors.hpp"
#include "mcraqr/rng.hpp"

namespace mcraqr::sensing {

struct Target {
  double aoa_rad = 0.0;
  double range_m = 0.0;
  double gain = 1.0; // |alpha_k| reflection magnitude
};

struct SensingConfig {
  int sensors = 8;          // M
  int subcarriers = 16;     // N
  int snapshots = 64;       // J
  double spacing_m = 0.005; // d
  double carrier_hz = 30e9; // f_c
  double delta_f_hz = 1e6;  // subcarrier step
  double avg_power_w = 1.0; // P-bar per subcarrier symbol
  double noise_var = 1.0;   // per-sample complex noise power

  double lambda_c() const { return constants::c0 / carrier_hz; }
  void validate() const {
    if (sensors < 2 || subcarriers < 1 || snapshots < 1)
      throw SchemaError("SensingConfig: dimensions too small");
    if (spacing_m <= 0 || carrier_hz <= 0 || delta_f_hz <= 0)
      throw SchemaError("SensingConfig: nonpositive geometry/frequency");
    if (avg_power_w <= 0 || noise_var < 0)
      throw SchemaError("SensingConfig: nonpositive power");
  }
};

// Spatial steering vector [a(theta)]_m = exp(-j (2 pi / lambda_c) m d sin
// theta), m = 0..M-1.
inline Eigen::VectorXcd steering_aoa(const SensingConfig& cfg, double theta) {
  Eigen::VectorXcd a(cfg.sensors);
  const double k = constants::two_pi / cfg.lambda_c() * cfg.spacing_m *
                   std::sin(theta);
  for (int m = 0; m < cfg.sensors; ++m) a(m) = std::polar(1.0, -k * m);
  return a;
}

// Range steering vector [c(r)]_i = exp(-j (4 pi / c) i df r), i = 0..N-1.
inline Eigen::VectorXcd steering_range(const SensingConfig& cfg, double r) {
  Eigen::VectorXcd v(cfg.subcarriers);
  const double k = 4.0 * constants::pi * cfg.delta_f_hz * r / constants::c0;
  for (int i = 0; i < cfg.subcarriers; ++i) v(i) = std::polar(1.0, -k * i);
  return v;
}

// Round-trip echo amplitude a~_k = |alpha_k| exp(-j 4 pi f_c r_k / c).
inline std::complex<double> echo_amplitude(const SensingConfig& cfg,
                                           const Target& t) {
  return std::polar(t.gain, -4.0 * constants::pi * cfg.carrier_hz *
                                t.range_m / constants::c0);
}

// One M x J snapshot matrix per subcarrier: Y_i = K A_i S + W_i with
// A_i = [a~_k c_i(r_k) a(theta_k)], shared K x J symbol matrix S whose rows
// are iid CN(0, P-bar), and iid CN(0, noise_var) noise. `kappa` holds the
// per-sensor conversion gains.
inline std::vector<Eigen::MatrixXcd> synthesize_echoes(
    const SensingConfig& cfg, const std::vector<Target>& targets,
    const std::vector<std::complex<double>>& kappa, CounterRng& rng) {
  cfg.validate();
  if (static_cast<int>(kappa.size()) != cfg.sensors)
    throw SchemaError("synthesize_echoes: kappa size != sensors");
  if (targets.empty()) throw SchemaError("synthesize_echoes: no targets");
  const int K = static_cast<int>(targets.size());

  Eigen::MatrixXcd S(K, cfg.snapshots);
  for (int k = 0; k < K; ++k)
    for (int j = 0; j < cfg.snapshots; ++j)
      S(k, j) = rng.complex_normal(cfg.avg_power_w);

  Eigen::MatrixXcd A0(cfg.sensors, K); // K-diag * a~_k * a(theta_k)
  std::vector<Eigen::VectorXcd> cr(K);
  for (int k = 0; k < K; ++k) {
    const Eigen::VectorXcd a = steering_aoa(cfg, targets[k].aoa_rad);
    const std::complex<double> amp = echo_amplitude(cfg, targets[k]);
    for (int m = 0; m < cfg.sensors; ++m) A0(m, k) = kappa[m] * amp * a(m);
    cr[k] = steering_range(cfg, targets[k].range_m);
  }

  std::vector<Eigen::MatrixXcd> Y(cfg.subcarriers);
  for (int i = 0; i < cfg.subcarriers; ++i) {
    Eigen::MatrixXcd Ai = A0;
    for (int k = 0; k < K; ++k) Ai.col(k) *= cr[k](i);
    Eigen::MatrixXcd W(cfg.sensors, cfg.snapshots);
    for (int m = 0; m < cfg.sensors; ++m)
      for (int j = 0; j < cfg.snapshots; ++j)
        W(m, j) = rng.complex_normal(cfg.noise_var);
    Y[i] = Ai * S + W;
  }
  return Y;
}

} // namespace mcraqr::sensing

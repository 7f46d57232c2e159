#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "mcraqr/constants.hpp"
#include "mcraqr/errors.hpp"
#include "mcraqr/signal/plans.hpp"

namespace mcraqr::comms {

// Far-field link geometry toward an M-sensor uniform linear array.
struct LinkGeometry {
  double range_m = 0.0;        // r
  double aoa_rad = 0.0;        // theta
  double spacing_m = 0.0;      // d
  int sensors = 1;             // M
  double path_gain = 1.0;      // beta_i (power gain at 1 m)

  void validate() const {
    if (range_m <= 0) throw SchemaError("LinkGeometry: range <= 0");
    if (spacing_m <= 0) throw SchemaError("LinkGeometry: spacing <= 0");
    if (sensors < 1) throw SchemaError("LinkGeometry: sensors < 1");
    if (path_gain <= 0) throw SchemaError("LinkGeometry: path gain <= 0");
  }
};

// Channel coefficients h_{i,m} = (sqrt(beta_i)/r) *
// exp(-j (2 pi / c) df_ni (r + m d sin(theta))) for sensors m = 0..M-1,
// where df_ni is the carrier's IF against its comb line.
inline std::vector<std::complex<double>> channel_vector(
    const LinkGeometry& geo, double delta_f_hz) {
  geo.validate();
  std::vector<std::complex<double>> h(geo.sensors);
  const double amp = std::sqrt(geo.path_gain) / geo.range_m;
  const double k = constants::two_pi * delta_f_hz / constants::c0;
  for (int m = 0; m < geo.sensors; ++m) {
    const double path = geo.range_m + m * geo.spacing_m * std::sin(geo.aoa_rad);
    h[m] = std::polar(amp, -k * path);
  }
  return h;
}

// Post-combining SNR of carrier i with maximum-ratio combining across the M
// sensor outputs: gamma_i = 2 Pbar_i sum_m |kappa_m|^2 / sigma_total^2 with
// Pbar_i = P_c beta_i / r^2 the received carrier power.
inline double mrc_snr(double tx_power_w, const LinkGeometry& geo,
                      double kappa_power_sum, double noise_total) {
  geo.validate();
  if (noise_total <= 0) throw SchemaError("mrc_snr: noise power <= 0");
  const double p_rx = tx_power_w * geo.path_gain / (geo.range_m * geo.range_m);
  return 2.0 * p_rx * kappa_power_sum / noise_total;
}

struct CarrierRate {
  double snr = 0.0;
  double rate_bps = 0.0;
};

// Sum rate R = sum_i B_i log2(1 + gamma_i). `per_carrier_gain` lets schemes
// with frequency-dependent conversion (e.g. single-LO roll-off) scale each
// carrier's effective kappa power.
inline std::vector<CarrierRate> carrier_rates(
    const std::vector<double>& tx_power_w, const LinkGeometry& geo,
    double kappa_power_sum, double noise_total, double bandwidth_hz,
    const std::vector<double>& per_carrier_gain = {}) {
  std::vector<CarrierRate> out(tx_power_w.size());
  for (std::size_t i = 0; i < tx_power_w.size(); ++i) {
    const double g =
        per_carrier_gain.empty() ? 1.0 : per_carrier_gain[i];
    out[i].snr = mrc_snr(tx_power_w[i], geo, kappa_power_sum * g, noise_total);
    out[i].rate_bps = bandwidth_hz * std::log2(1.0 + out[i].snr);
  }
  return out;
}

inline double sum_rate(const std::vector<CarrierRate>& rates) {
  double r = 0.0;
  for (const auto& c : rates) r += c.rate_bps;
  return r;
}

// Conventional-antenna baseline: unity conversion gain per element (the RF
// front end adds no optical transduction), thermal noise only.
inline double conventional_snr(double tx_power_w, const LinkGeometry& geo,
                               double temperature_k, double bandwidth_hz) {
  geo.validate();
  const double p_rx = tx_power_w * geo.path_gain / (geo.range_m * geo.range_m);
  const double n0 = constants::k_B * temperature_k * bandwidth_hz;
  return p_rx * geo.sensors / n0;
}

inline double conventional_sum_rate(const std::vector<double>& tx_power_w,
                                    const LinkGeometry& geo,
                                    double temperature_k,
                                    double bandwidth_hz) {
  double r = 0.0;
  for (double p : tx_power_w)
    r += bandwidth_hz *
         std::log2(1.0 + conventional_snr(p, geo, temperature_k, bandwidth_hz));
  return r;
}

} // namespace mcraqr::comms

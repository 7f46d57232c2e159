#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "mcraqr/constants.hpp"
#include "mcraqr/errors.hpp"
#include "mcraqr/sensing/model.hpp"

namespace mcraqr::sensing {

struct CrbPair {
  double aoa = 0.0;   // rad^2
  double range = 0.0; // m^2
};

namespace detail {

struct KappaMoments {
  double sum = 0.0; // S = sum |kappa_m|^2
  double mu1 = 0.0; // kappa-weighted mean of m, m = 1..M
  double mu2 = 0.0; // kappa-weighted mean of m^2
};

inline KappaMoments kappa_moments(
    const std::vector<std::complex<double>>& kappa) {
  KappaMoments km;
  for (std::size_t idx = 0; idx < kappa.size(); ++idx) {
    const double w = std::norm(kappa[idx]);
    const double m = static_cast<double>(idx + 1);
    km.sum += w;
    km.mu1 += w * m;
    km.mu2 += w * m * m;
  }
  if (km.sum <= 0) throw SchemaError("kappa_moments: zero gain");
  km.mu1 /= km.sum;
  km.mu2 /= km.sum;
  return km;
}

} // namespace detail

// Noiseless observation map of a single target, in the analytic reference
// frame of the bound: rows i = 1..N (subcarriers), columns m = 1..M
// (sensors), g_{i,m} = a~ kappa_m exp(-j 2 pi m d sin(theta) / lambda_c)
// * exp(-j 4 pi i df r / c).
inline Eigen::MatrixXcd crb_model_g(const SensingConfig& cfg,
                                    const std::vector<std::complex<double>>& kappa,
                                    double theta, double r,
                                    std::complex<double> amp) {
  cfg.validate();
  Eigen::MatrixXcd g(cfg.subcarriers, cfg.sensors);
  const double ka = constants::two_pi / cfg.lambda_c() * cfg.spacing_m *
                    std::sin(theta);
  const double kr = 4.0 * constants::pi * cfg.delta_f_hz * r / constants::c0;
  for (int i = 1; i <= cfg.subcarriers; ++i)
    for (int m = 1; m <= cfg.sensors; ++m)
      g(i - 1, m - 1) =
          amp * kappa[m - 1] * std::polar(1.0, -ka * m - kr * i);
  return g;
}

// Analytic partials of the observation map.
inline Eigen::MatrixXcd crb_dg_dtheta(const SensingConfig& cfg,
                                      const std::vector<std::complex<double>>& kappa,
                                      double theta, double r,
                                      std::complex<double> amp) {
  Eigen::MatrixXcd d = crb_model_g(cfg, kappa, theta, r, amp);
  const std::complex<double> j(0.0, 1.0);
  const double f = constants::two_pi / cfg.lambda_c() * cfg.spacing_m *
                   std::cos(theta);
  for (int m = 1; m <= cfg.sensors; ++m)
    d.col(m - 1) *= -j * f * static_cast<double>(m);
  return d;
}

inline Eigen::MatrixXcd crb_dg_dr(const SensingConfig& cfg,
                                  const std::vector<std::complex<double>>& kappa,
                                  double theta, double r,
                                  std::complex<double> amp) {
  Eigen::MatrixXcd d = crb_model_g(cfg, kappa, theta, r, amp);
  const std::complex<double> j(0.0, 1.0);
  const double f = 4.0 * constants::pi * cfg.delta_f_hz / constants::c0;
  for (int i = 1; i <= cfg.subcarriers; ++i)
    d.row(i - 1) *= -j * f * static_cast<double>(i);
  return d;
}

// 2x2 Fisher information over (theta, r) for the known-amplitude model:
// F_pq = (2 J P-bar / sigma^2) Re{ <d_p g, d_q g> }.
inline Eigen::Matrix2d fim_numeric(const SensingConfig& cfg,
                                   const std::vector<std::complex<double>>& kappa,
                                   double theta, double r,
                                   std::complex<double> amp) {
  const Eigen::MatrixXcd dt = crb_dg_dtheta(cfg, kappa, theta, r, amp);
  const Eigen::MatrixXcd dr = crb_dg_dr(cfg, kappa, theta, r, amp);
  const double scale = 2.0 * cfg.snapshots * cfg.avg_power_w / cfg.noise_var;
  Eigen::Matrix2d F;
  F(0, 0) = scale * std::real((dt.array().conjugate() * dt.array()).sum());
  F(1, 1) = scale * std::real((dr.array().conjugate() * dr.array()).sum());
  F(0, 1) = F(1, 0) =
      scale * std::real((dt.array().conjugate() * dr.array()).sum());
  return F;
}

inline CrbPair crb_from_fim(const Eigen::Matrix2d& F) {
  const double det = F(0, 0) * F(1, 1) - F(0, 1) * F(1, 0);
  if (!(det > 0)) throw DegenerateGeometry("crb_from_fim: singular FIM");
  CrbPair c;
  c.aoa = F(1, 1) / det;
  c.range = F(0, 0) / det;
  return c;
}

// Closed-form bounds. `amp2` is |a~|^2; the published normalization has
// sigma^2 = |a~|^2 = 1.
inline CrbPair crb_closed_form(const SensingConfig& cfg,
                               const std::vector<std::complex<double>>& kappa,
                               double theta, double amp2 = 1.0) {
  cfg.validate();
  if (static_cast<int>(kappa.size()) != cfg.sensors)
    throw SchemaError("crb_closed_form: kappa size != sensors");
  if (std::abs(std::cos(theta)) < 1e-6)
    throw DegenerateGeometry("crb_closed_form: endfire geometry");
  const auto km = detail::kappa_moments(kappa);
  const double N = cfg.subcarriers;
  const double J = cfg.snapshots;
  const double P = cfg.avg_power_w;
  const double lam = cfg.lambda_c();
  const double d = cfg.spacing_m;
  const double scale = cfg.noise_var / amp2;

  const double denom_t =
      N * km.sum * ((4.0 * N + 2.0) * km.mu2 -
                    3.0 * (N + 1.0) * km.mu1 * km.mu1);
  const double denom_r =
      N * (N + 1.0) * km.sum *
      ((2.0 * N + 1.0) * km.mu2 / 6.0 -
       (N + 1.0) * km.mu1 * km.mu1 / 4.0);
  if (!(denom_t > 0) || !(denom_r > 0))
    throw DegenerateGeometry("crb_closed_form: degenerate aperture moments");

  CrbPair c;
  c.aoa = scale * lam * lam /
          (4.0 * constants::pi * constants::pi * J * P * d * d *
           std::cos(theta) * std::cos(theta)) *
          (2.0 * N + 1.0) / denom_t;
  c.range = scale * constants::c0 * constants::c0 /
            (32.0 * constants::pi * constants::pi * J * P *
             cfg.delta_f_hz * cfg.delta_f_hz) *
            km.mu2 / denom_r;
  return c;
}

// Equal-gain special case: kappa_m = kappa for every sensor, so the moments
// collapse to mu1 = (M+1)/2, mu2 = (M+1)(2M+1)/6 and S = M |kappa|^2.
inline CrbPair crb_uniform(const SensingConfig& cfg, double kappa_abs2,
                           double theta, double amp2 = 1.0) {
  cfg.validate();
  if (std::abs(std::cos(theta)) < 1e-6)
    throw DegenerateGeometry("crb_uniform: endfire geometry");
  const double M = cfg.sensors;
  const double N = cfg.subcarriers;
  const double J = cfg.snapshots;
  const double P = cfg.avg_power_w;
  const double lam = cfg.lambda_c();
  const double d = cfg.spacing_m;
  const double scale = cfg.noise_var / amp2;
  const double S = M * kappa_abs2;
  const double mu1 = (M + 1.0) / 2.0;
  const double mu2 = (M + 1.0) * (2.0 * M + 1.0) / 6.0;

  CrbPair c;
  c.aoa = scale * lam * lam /
          (4.0 * constants::pi * constants::pi * J * P * d * d *
           std::cos(theta) * std::cos(theta)) *
          (2.0 * N + 1.0) /
          (N * S * ((4.0 * N + 2.0) * mu2 - 3.0 * (N + 1.0) * mu1 * mu1));
  c.range = scale * constants::c0 * constants::c0 /
            (32.0 * constants::pi * constants::pi * J * P *
             cfg.delta_f_hz * cfg.delta_f_hz) *
            mu2 /
            (N * (N + 1.0) * S *
             ((2.0 * N + 1.0) * mu2 / 6.0 -
              (N + 1.0) * mu1 * mu1 / 4.0));
  return c;
}

} // namespace mcraqr::sensing

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "mcraqr/errors.hpp"
#include "mcraqr/sensing/model.hpp"

namespace mcraqr::sensing {

// Sample covariance pooled over subcarriers and snapshots:
// R = (1/(N J)) sum_i Y_i Y_i^H.
inline Eigen::MatrixXcd pooled_covariance(
    const std::vector<Eigen::MatrixXcd>& Y) {
  if (Y.empty()) throw SchemaError("pooled_covariance: empty data");
  Eigen::MatrixXcd R =
      Eigen::MatrixXcd::Zero(Y[0].rows(), Y[0].rows());
  long samples = 0;
  for (const auto& Yi : Y) {
    R += Yi * Yi.adjoint();
    samples += Yi.cols();
  }
  return R / static_cast<double>(samples);
}

// Noise-subspace projector from the K smallest eigenpairs of a Hermitian
// covariance. Throws if the subspace split is degenerate.
inline Eigen::MatrixXcd noise_projector(const Eigen::MatrixXcd& R,
                                        int n_sources) {
  const int dim = static_cast<int>(R.rows());
  if (n_sources >= dim)
    throw SubspaceDegenerate("noise_projector: sources >= dimension");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(R);
  if (es.info() != Eigen::Success)
    throw SubspaceDegenerate("noise_projector: eigensolver failed");
  // Eigenvalues ascend; the first dim - n_sources span the noise subspace.
  const Eigen::MatrixXcd Un = es.eigenvectors().leftCols(dim - n_sources);
  return Un * Un.adjoint();
}

namespace detail {

struct Peak {
  int index = 0;
  double value = 0.0;
  double refined = 0.0; // refined abscissa (grid units)
};

// Interior local maxima of a sampled spectrum, strongest first, with
// parabolic (log-domain) refinement of the abscissa.
inline std::vector<Peak> find_peaks(const std::vector<double>& p) {
  std::vector<Peak> peaks;
  for (int i = 1; i + 1 < static_cast<int>(p.size()); ++i) {
    if (p[i] > p[i - 1] && p[i] >= p[i + 1]) {
      Peak pk;
      pk.index = i;
      pk.value = p[i];
      const double l = std::log(p[i - 1]);
      const double m = std::log(p[i]);
      const double r = std::log(p[i + 1]);
      const double den = l - 2.0 * m + r;
      const double shift = (std::abs(den) > 0) ? 0.5 * (l - r) / den : 0.0;
      pk.refined = i + std::clamp(shift, -0.5, 0.5);
      peaks.push_back(pk);
    }
  }
  std::sort(peaks.begin(), peaks.end(),
            [](const Peak& a, const Peak& b) { return a.value > b.value; });
  return peaks;
}

} // namespace detail

struct MusicResult {
  std::vector<double> grid;     // evaluated abscissae
  std::vector<double> spectrum; // pseudospectrum on the grid
  std::vector<double> estimates; // refined locations, ascending
};

// MUSIC over AoA on the kappa-weighted array manifold:
// P(theta) = 1 / (a^H K^H Pn K a), with Pn the noise projector of the
// pooled covariance.
inline MusicResult music_aoa(const std::vector<Eigen::MatrixXcd>& Y,
                             const SensingConfig& cfg,
                             const std::vector<std::complex<double>>& kappa,
                             int n_targets, double theta_lo, double theta_hi,
                             double step) {
  cfg.validate();
  if (n_targets < 1) throw SchemaError("music_aoa: n_targets < 1");
  if (!(step > 0 && theta_hi > theta_lo))
    throw SchemaError("music_aoa: bad grid");
  const Eigen::MatrixXcd R = pooled_covariance(Y);
  const Eigen::MatrixXcd Pn = noise_projector(R, n_targets);

  MusicResult res;
  for (double th = theta_lo; th <= theta_hi + 0.5 * step; th += step) {
    Eigen::VectorXcd v = steering_aoa(cfg, th);
    for (int m = 0; m < cfg.sensors; ++m) v(m) *= kappa[m];
    const double q = std::real(std::complex<double>(v.adjoint() * Pn * v));
    res.grid.push_back(th);
    res.spectrum.push_back(1.0 / std::max(q, 1e-300));
  }
  auto peaks = detail::find_peaks(res.spectrum);
  if (static_cast<int>(peaks.size()) < n_targets)
    throw SubspaceDegenerate("music_aoa: fewer spectral peaks than targets");
  peaks.resize(n_targets);
  for (const auto& pk : peaks)
    res.estimates.push_back(theta_lo + pk.refined * step);
  std::sort(res.estimates.begin(), res.estimates.end());
  return res;
}

// Beamform toward one estimated AoA, collapse each subcarrier snapshot to a
// scalar, then run MUSIC over range on the subcarrier dimension. The
// strongest range peak belongs to the beamformed target.
inline MusicResult music_range(const std::vector<Eigen::MatrixXcd>& Y,
                               const SensingConfig& cfg,
                               const std::vector<std::complex<double>>& kappa,
                               double theta_hat, int n_targets, double r_lo,
                               double r_hi, double step) {
  cfg.validate();
  if (!(step > 0 && r_hi > r_lo)) throw SchemaError("music_range: bad grid");
  Eigen::VectorXcd b = steering_aoa(cfg, theta_hat);
  for (int m = 0; m < cfg.sensors; ++m) b(m) *= kappa[m];
  b /= b.norm();

  const int N = static_cast<int>(Y.size());
  const int J = static_cast<int>(Y[0].cols());
  Eigen::MatrixXcd Z(N, J);
  for (int i = 0; i < N; ++i) Z.row(i) = (b.adjoint() * Y[i]).row(0);
  const Eigen::MatrixXcd Rz = Z * Z.adjoint() / static_cast<double>(J);
  const int n_src = std::min(n_targets, N - 1);
  const Eigen::MatrixXcd Pn = noise_projector(Rz, n_src);

  MusicResult res;
  for (double r = r_lo; r <= r_hi + 0.5 * step; r += step) {
    const Eigen::VectorXcd c = steering_range(cfg, r);
    const double q = std::real(std::complex<double>(c.adjoint() * Pn * c));
    res.grid.push_back(r);
    res.spectrum.push_back(1.0 / std::max(q, 1e-300));
  }
  auto peaks = detail::find_peaks(res.spectrum);
  if (peaks.empty())
    throw SubspaceDegenerate("music_range: no spectral peak");
  res.estimates.push_back(r_lo + peaks[0].refined * step);
  return res;
}

} // namespace mcraqr::sensing

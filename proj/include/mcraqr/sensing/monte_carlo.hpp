#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "mcraqr/errors.hpp"
#include "mcraqr/rng.hpp"
#include "mcraqr/sensing/crb.hpp"
#include "mcraqr/sensing/model.hpp"
#include "mcraqr/sensing/music.hpp"

namespace mcraqr::sensing {

namespace detail {

// Stream ids chosen so that enlarging the array (M), the subcarrier count (N)
// or the snapshot count (J) appends draws without disturbing existing ones:
// every (trial, role, i, m) tuple owns its own counter stream. This gives
// common random numbers across sweep points, so estimator error is monotone
// in the problem size rather than monotone-plus-noise.
inline std::uint64_t symbol_stream(int trial, int k) {
  return (static_cast<std::uint64_t>(trial) << 32) |
         (0x5AULL << 24) | static_cast<std::uint64_t>(k);
}
inline std::uint64_t noise_stream(int trial, int i, int m) {
  return (static_cast<std::uint64_t>(trial) << 32) | (0xA5ULL << 24) |
         (static_cast<std::uint64_t>(i) << 12) | static_cast<std::uint64_t>(m);
}

// Min-cost one-to-one pairing of estimates to truths under squared error;
// brute force over permutations (target counts are small).
inline std::vector<int> min_cost_assignment(const std::vector<double>& est,
                                            const std::vector<double>& truth) {
  const int n = static_cast<int>(truth.size());
  if (static_cast<int>(est.size()) != n)
    throw SchemaError("min_cost_assignment: size mismatch");
  std::vector<int> perm(n), best(n);
  std::iota(perm.begin(), perm.end(), 0);
  best = perm;
  double best_cost = -1.0;
  do {
    double cost = 0.0;
    for (int k = 0; k < n; ++k) {
      const double e = est[perm[k]] - truth[k];
      cost += e * e;
    }
    if (best_cost < 0 || cost < best_cost) {
      best_cost = cost;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best; // best[k] = index of the estimate matched to truth k
}

} // namespace detail

// Echo synthesis with the common-random-number stream layout above.
inline std::vector<Eigen::MatrixXcd> synthesize_echoes_crn(
    const SensingConfig& cfg, const std::vector<Target>& targets,
    const std::vector<std::complex<double>>& kappa, std::uint64_t seed,
    int trial) {
  cfg.validate();
  if (static_cast<int>(kappa.size()) != cfg.sensors)
    throw SchemaError("synthesize_echoes_crn: kappa size != sensors");
  const int K = static_cast<int>(targets.size());

  Eigen::MatrixXcd S(K, cfg.snapshots);
  for (int k = 0; k < K; ++k) {
    CounterRng rng(seed, detail::symbol_stream(trial, k));
    for (int j = 0; j < cfg.snapshots; ++j)
      S(k, j) = rng.complex_normal(cfg.avg_power_w);
  }

  Eigen::MatrixXcd A0(cfg.sensors, K);
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
    for (int m = 0; m < cfg.sensors; ++m) {
      CounterRng rng(seed, detail::noise_stream(trial, i, m));
      for (int j = 0; j < cfg.snapshots; ++j)
        W(m, j) = rng.complex_normal(cfg.noise_var);
    }
    Y[i] = Ai * S + W;
  }
  return Y;
}

struct SearchGrid {
  double theta_lo = -1.2, theta_hi = 1.2, theta_step = 2e-4; // rad
  double r_lo = 1.0, r_hi = 1000.0, r_step = 0.05;           // m
};

struct TrialEstimate {
  std::vector<double> aoa;   // matched to truth order
  std::vector<double> range; // matched to truth order
};

// One full estimation pass: AoA MUSIC, per-peak beamforming + range MUSIC,
// then min-cost matching of the AoA estimates against the true angles (the
// matched permutation carries the range estimates along).
inline TrialEstimate estimate_targets(const std::vector<Eigen::MatrixXcd>& Y,
                                      const SensingConfig& cfg,
                                      const std::vector<std::complex<double>>& kappa,
                                      const std::vector<Target>& targets,
                                      const SearchGrid& grid) {
  const int K = static_cast<int>(targets.size());
  const MusicResult aoa = music_aoa(Y, cfg, kappa, K, grid.theta_lo,
                                    grid.theta_hi, grid.theta_step);
  std::vector<double> r_hat(K);
  for (int k = 0; k < K; ++k) {
    const MusicResult rk =
        music_range(Y, cfg, kappa, aoa.estimates[k], K, grid.r_lo, grid.r_hi,
                    grid.r_step);
    r_hat[k] = rk.estimates[0];
  }
  std::vector<double> truth(K);
  for (int k = 0; k < K; ++k) truth[k] = targets[k].aoa_rad;
  const std::vector<int> match =
      detail::min_cost_assignment(aoa.estimates, truth);
  TrialEstimate est;
  est.aoa.resize(K);
  est.range.resize(K);
  for (int k = 0; k < K; ++k) {
    est.aoa[k] = aoa.estimates[match[k]];
    est.range[k] = r_hat[match[k]];
  }
  return est;
}

struct MonteCarloResult {
  int trials = 0;
  double mse_aoa = 0.0;   // rad^2, averaged over targets and trials
  double mse_range = 0.0; // m^2
  double crb_aoa = 0.0;   // closed-form bound averaged over targets
  double crb_range = 0.0;
};

// Monte Carlo MSE of the full pipeline against the closed-form bounds.
// Deterministic for a given seed regardless of `threads`: trial t always uses
// streams derived from (seed, t) and results are reduced in trial order.
inline MonteCarloResult run_monte_carlo(const SensingConfig& cfg,
                                        const std::vector<Target>& targets,
                                        const std::vector<std::complex<double>>& kappa,
                                        const SearchGrid& grid, int trials,
                                        std::uint64_t seed, int threads) {
  if (trials < 1) throw SchemaError("run_monte_carlo: trials < 1");
  if (threads < 1) threads = 1;
  const int K = static_cast<int>(targets.size());
  std::vector<TrialEstimate> results(trials);
  std::vector<std::string> errors(trials);

  auto worker = [&](int first, int step) {
    for (int t = first; t < trials; t += step) {
      try {
        const auto Y = synthesize_echoes_crn(cfg, targets, kappa, seed, t);
        results[t] = estimate_targets(Y, cfg, kappa, targets, grid);
      } catch (const std::exception& e) {
        errors[t] = e.what();
      }
    }
  };
  if (threads == 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w, threads);
    for (auto& th : pool) th.join();
  }
  for (int t = 0; t < trials; ++t)
    if (!errors[t].empty())
      throw ModelError("run_monte_carlo: trial failed: " + errors[t]);

  MonteCarloResult out;
  out.trials = trials;
  for (int t = 0; t < trials; ++t) {
    for (int k = 0; k < K; ++k) {
      const double ea = results[t].aoa[k] - targets[k].aoa_rad;
      const double er = results[t].range[k] - targets[k].range_m;
      out.mse_aoa += ea * ea;
      out.mse_range += er * er;
    }
  }
  out.mse_aoa /= trials * K;
  out.mse_range /= trials * K;
  for (int k = 0; k < K; ++k) {
    const CrbPair c = crb_closed_form(cfg, kappa, targets[k].aoa_rad,
                                      targets[k].gain * targets[k].gain);
    out.crb_aoa += c.aoa;
    out.crb_range += c.range;
  }
  out.crb_aoa /= K;
  out.crb_range /= K;
  return out;
}

} // namespace mcraqr::sensing

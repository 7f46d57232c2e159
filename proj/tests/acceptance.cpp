// Acceptance gate: one pass/fail line per release criterion.
//
// Each criterion is self-contained, prints a single line with the measured
// value against its tolerance, and the binary exits nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "mcraqr/atomic_system.hpp"
#include "mcraqr/comms/link.hpp"
#include "mcraqr/constants.hpp"
#include "mcraqr/errors.hpp"
#include "mcraqr/experiments.hpp"
#include "mcraqr/io/scenario.hpp"
#include "mcraqr/optics/gain.hpp"
#include "mcraqr/quantum/response.hpp"
#include "mcraqr/quantum/rho21.hpp"
#include "mcraqr/quantum/steady_state.hpp"
#include "mcraqr/quantum/transient.hpp"
#include "mcraqr/rng.hpp"
#include "mcraqr/sensing/crb.hpp"
#include "mcraqr/sensing/monte_carlo.hpp"
#include "mcraqr/signal/envelope.hpp"
#include "mcraqr/signal/mfc_design.hpp"

namespace fs = std::filesystem;
using namespace mcraqr;

namespace {

const std::string kBin = MCRAQR_BIN;
const std::string kScenarioDir = MCRAQR_SCENARIO_DIR;

int g_failures = 0;

int worker_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 4;
}

void report(int id, const std::string& what, bool pass,
            const std::string& detail, double secs) {
  std::printf("criterion %d (%s): %s — %s [%.1f s]\n", id, what.c_str(),
              pass ? "PASS" : "FAIL", detail.c_str(), secs);
  if (!pass) ++g_failures;
}

void run_criterion(int id, const std::string& what,
                   const std::function<std::pair<bool, std::string>()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  bool pass = false;
  std::string detail;
  try {
    std::tie(pass, detail) = fn();
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  report(id, what, pass, detail, secs);
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof(buf), f, ap);
  va_end(ap);
  return buf;
}

AtomicSystem random_box_system(CounterRng& rng) {
  AtomicSystem at = default_atomic_system();
  at.omega_p = constants::rad_from_hz(rng.uniform(0.1e6, 50e6));
  at.omega_c = constants::rad_from_hz(rng.uniform(0.1e6, 50e6));
  at.omega_a = constants::rad_from_hz(rng.uniform(0.1e6, 50e6));
  at.delta_c = constants::rad_from_hz(rng.uniform(-100e6, 100e6));
  at.delta_a = constants::rad_from_hz(rng.uniform(-100e6, 100e6));
  at.delta_x = constants::rad_from_hz(rng.uniform(-100e6, 100e6));
  return at;
}

// ---------------------------------------------------------------------------
// 1. Closed-form steady-state coherence vs the 25x25 null-space solve.
// ---------------------------------------------------------------------------
std::pair<bool, std::string> criterion1() {
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    CounterRng rng(1, 0xACC1ULL + i);
    const AtomicSystem at = random_box_system(rng);
    const double oz = constants::rad_from_hz(rng.uniform(0.1e6, 50e6));
    const auto num = quantum::steady_state_numeric(at, oz)(1, 0);
    const auto cf = quantum::rho21_closed_form(at, oz);
    worst = std::max(worst, std::abs(num - cf) / std::abs(cf));
  }
  const io::Scenario s = io::load_scenario(kScenarioDir + "/default.json");
  const auto num = quantum::steady_state_numeric(s.atomic, s.omega_y)(1, 0);
  const auto cf = quantum::rho21_closed_form(s.atomic, s.omega_y);
  worst = std::max(worst, std::abs(num - cf) / std::abs(cf));
  return {worst <= 1e-6,
          fmt("max rel err %.2e (tol 1e-6, 100 draws + default point)", worst)};
}

// ---------------------------------------------------------------------------
// 2. Envelope approximation accuracy vs power ratio and comb rate.
// ---------------------------------------------------------------------------
std::pair<bool, std::string> criterion2() {
  const io::Scenario s = io::load_scenario(kScenarioDir + "/default.json");
  const signal::CarrierPlan base = s.carrier_plan();
  const auto design = signal::design_nonuniform(base, s.mfc.budget,
                                                s.mfc.delta_hz,
                                                s.rf.comb_power_w);
  const double window = 4.0 / s.mfc.delta_hz;
  auto err_at = [&](double ratio) {
    signal::CarrierPlan scaled = base;
    for (auto& c : scaled.carriers)
      c.power_w = ratio * s.rf.comb_power_w / scaled.count();
    return signal::approximation_error(scaled, design.plan, design.if_map,
                                       s.rf.aperture_m2, window,
                                       s.mfc.budget.if_max_hz)
        .rel_rms_error;
  };
  const double e_weak = err_at(1e-6);
  const double e_unit = err_at(1.0);
  const bool ok_weak = e_weak <= 1e-3;
  const bool ok_unit = e_unit >= 0.35 && e_unit <= 0.65;

  // Rate sweep from the experiment itself: the error must sit on a large
  // floor while the comb rate is below the atomic 3 dB response bandwidth
  // (neighbor beats land inside the band) and collapse once the rate clears
  // a few times that bandwidth.
  const double f3db = quantum::three_db_bandwidth(s.atomic, s.omega_y);
  const auto tables = experiments::run_validate_envelope(s, worker_threads());
  // tables[1] is envelope_error_vs_rate.csv with rows "rate,error,rate/f3db".
  std::vector<std::pair<double, double>> pts; // (rate, error)
  {
    std::istringstream in(tables[1].second.render());
    std::string line;
    std::getline(in, line); // header
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      const auto c1 = line.find(',');
      const auto c2 = line.find(',', c1 + 1);
      pts.emplace_back(std::stod(line.substr(0, c1)),
                       std::stod(line.substr(c1 + 1, c2 - c1 - 1)));
    }
  }
  double floor_min = 1e300, floor_max = 0.0, tail_max = 0.0;
  int n_floor = 0, n_tail = 0;
  for (const auto& [rate, err] : pts) {
    if (rate < f3db) {
      floor_min = std::min(floor_min, err);
      floor_max = std::max(floor_max, err);
      ++n_floor;
    } else if (rate > 4.0 * f3db) {
      tail_max = std::max(tail_max, err);
      ++n_tail;
    }
  }
  const bool ok_rate = n_floor >= 2 && n_tail >= 2 &&
                       floor_min >= 10.0 * tail_max &&
                       floor_max <= 10.0 * floor_min;
  return {ok_weak && ok_unit && ok_rate,
          fmt("err@1e-6 %.2e (tol 1e-3); err@1 %.3f (0.5+/-0.15); "
              "rate floor [%.1e, %.1e] vs tail max %.1e",
              e_weak, e_unit, floor_min, floor_max, tail_max)};
}

// ---------------------------------------------------------------------------
// 3. CRB algebra: closed form vs FIM, equal-gain special case, partials.
// ---------------------------------------------------------------------------
std::pair<bool, std::string> criterion3() {
  CounterRng rng(3, 0xC4B);
  double worst_fim = 0.0, worst_uni = 0.0, worst_fd = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    sensing::SensingConfig cfg;
    cfg.sensors = 4 + static_cast<int>(rng.uniform(0.0, 20.0));
    cfg.subcarriers = 3 + static_cast<int>(rng.uniform(0.0, 24.0));
    cfg.snapshots = 8 + static_cast<int>(rng.uniform(0.0, 120.0));
    cfg.delta_f_hz = rng.uniform(5e4, 2e6);
    cfg.avg_power_w = rng.uniform(0.2, 3.0);
    cfg.noise_var = rng.uniform(0.2, 3.0);
    const double theta = rng.uniform(-1.0, 1.0);
    const double r = rng.uniform(50.0, 1200.0);
    const double a = rng.uniform(0.2, 2.5);
    std::vector<std::complex<double>> kappa(cfg.sensors);
    for (auto& k : kappa)
      k = std::polar(rng.uniform(0.2, 2.0), rng.uniform(-3.0, 3.0));
    const std::complex<double> amp = std::polar(a, rng.uniform(-3.0, 3.0));

    const auto num = sensing::crb_from_fim(
        sensing::fim_numeric(cfg, kappa, theta, r, amp));
    const auto cf = sensing::crb_closed_form(cfg, kappa, theta, a * a);
    worst_fim = std::max(worst_fim, std::abs(num.aoa - cf.aoa) / num.aoa);
    worst_fim = std::max(worst_fim, std::abs(num.range - cf.range) / num.range);

    const std::vector<std::complex<double>> eq(cfg.sensors, kappa[0]);
    const auto gen = sensing::crb_closed_form(cfg, eq, theta, a * a);
    const auto uni = sensing::crb_uniform(cfg, std::norm(kappa[0]), theta,
                                          a * a);
    worst_uni = std::max(worst_uni, std::abs(gen.aoa - uni.aoa) / uni.aoa);
    worst_uni = std::max(worst_uni,
                         std::abs(gen.range - uni.range) / uni.range);

    const double ht = 1e-7, hr = 1e-4;
    const Eigen::MatrixXcd fd_t =
        (sensing::crb_model_g(cfg, kappa, theta + ht, r, amp) -
         sensing::crb_model_g(cfg, kappa, theta - ht, r, amp)) /
        (2.0 * ht);
    const Eigen::MatrixXcd an_t =
        sensing::crb_dg_dtheta(cfg, kappa, theta, r, amp);
    worst_fd = std::max(worst_fd, (fd_t - an_t).norm() / an_t.norm());
    const Eigen::MatrixXcd fd_r =
        (sensing::crb_model_g(cfg, kappa, theta, r + hr, amp) -
         sensing::crb_model_g(cfg, kappa, theta, r - hr, amp)) /
        (2.0 * hr);
    const Eigen::MatrixXcd an_r = sensing::crb_dg_dr(cfg, kappa, theta, r, amp);
    worst_fd = std::max(worst_fd, (fd_r - an_r).norm() / an_r.norm());
  }
  const bool ok = worst_fim <= 1e-6 && worst_uni <= 1e-12 && worst_fd <= 1e-6;
  return {ok, fmt("closed-vs-FIM %.2e (tol 1e-6); equal-gain %.2e (tol 1e-12); "
                  "partials-vs-FD %.2e (tol 1e-6)",
                  worst_fim, worst_uni, worst_fd)};
}

// ---------------------------------------------------------------------------
// 4. MUSIC correctness on the four-target fixture.
// ---------------------------------------------------------------------------
std::pair<bool, std::string> criterion4() {
  const io::Scenario s = io::load_scenario(kScenarioDir + "/sensing.json");
  const auto grid = experiments::sensing_grid(s);
  const auto kappa = experiments::sensing_kappa(s);
  const int threads = worker_threads();

  // Noiseless recovery.
  sensing::SensingConfig quiet = s.sensing.cfg;
  quiet.noise_var = 1e-12;
  const auto Y = sensing::synthesize_echoes_crn(quiet, s.sensing.targets,
                                                kappa, 1, 0);
  const auto est = sensing::estimate_targets(Y, quiet, kappa,
                                             s.sensing.targets, grid);
  double worst_aoa_deg = 0.0, worst_range_m = 0.0;
  for (std::size_t k = 0; k < s.sensing.targets.size(); ++k) {
    worst_aoa_deg = std::max(
        worst_aoa_deg, std::abs(est.aoa[k] - s.sensing.targets[k].aoa_rad) *
                           180.0 / constants::pi);
    worst_range_m = std::max(
        worst_range_m, std::abs(est.range[k] - s.sensing.targets[k].range_m));
  }
  const bool ok_quiet = worst_aoa_deg <= 0.05 && worst_range_m <= 0.5;

  // Noisy Monte Carlo: MSE above the bound (2-sigma estimator slack) at every
  // swept point, MSE(theta) non-increasing in M, MSE(r) non-increasing in N.
  const int trials = s.sensing.trials;
  const int K = static_cast<int>(s.sensing.targets.size());
  const double slack = 2.0 * std::sqrt(2.0 / (trials * K));
  bool ok_bound = true, ok_mono_m = true, ok_mono_n = true;
  std::string sweep_note;

  std::vector<double> mse_vs_m;
  for (int m : {14, 18, 22}) {
    sensing::SensingConfig cfg = s.sensing.cfg;
    cfg.sensors = m;
    const auto kap = std::vector<std::complex<double>>(m, 1.0);
    const auto mc = sensing::run_monte_carlo(cfg, s.sensing.targets, kap, grid,
                                             trials, 1, threads);
    mse_vs_m.push_back(mc.mse_aoa);
    if (mc.mse_aoa < mc.crb_aoa * (1.0 - slack) ||
        mc.mse_range < mc.crb_range * (1.0 - slack))
      ok_bound = false;
    if (m == 22)
      sweep_note = fmt("mse/crb aoa %.2f range %.2f", mc.mse_aoa / mc.crb_aoa,
                       mc.mse_range / mc.crb_range);
  }
  for (std::size_t i = 1; i < mse_vs_m.size(); ++i)
    if (mse_vs_m[i] > mse_vs_m[i - 1]) ok_mono_m = false;

  std::vector<double> mse_vs_n;
  for (int n : {13, 19, 25}) {
    sensing::SensingConfig cfg = s.sensing.cfg;
    cfg.subcarriers = n;
    const auto mc = sensing::run_monte_carlo(cfg, s.sensing.targets, kappa,
                                             grid, trials, 1, threads);
    mse_vs_n.push_back(mc.mse_range);
    if (mc.mse_aoa < mc.crb_aoa * (1.0 - slack) ||
        mc.mse_range < mc.crb_range * (1.0 - slack))
      ok_bound = false;
  }
  for (std::size_t i = 1; i < mse_vs_n.size(); ++i)
    if (mse_vs_n[i] > mse_vs_n[i - 1]) ok_mono_n = false;

  const bool ok = ok_quiet && ok_bound && ok_mono_m && ok_mono_n;
  return {ok, fmt("noiseless aoa %.4f deg (tol 0.05), range %.3f m (tol 0.5); "
                  "%s; MSE>=CRB %s; mono-in-M %s; mono-in-N %s",
                  worst_aoa_deg, worst_range_m, sweep_note.c_str(),
                  ok_bound ? "yes" : "NO", ok_mono_m ? "yes" : "NO",
                  ok_mono_n ? "yes" : "NO")};
}

// ---------------------------------------------------------------------------
// 5. Bandwidth roll-off: transient QAM extraction and usable-span ratio.
// ---------------------------------------------------------------------------
std::pair<bool, std::string> criterion5() {
  const io::Scenario s = io::load_scenario(kScenarioDir + "/default.json");

  // The homodyne detector (local phase 0) reads Im rho_21, so the transduced
  // modulation sees H(f) = (R(+f) - conj(R(-f)))/4, not |R(+f)| alone. Its
  // 3 dB point sets the settling-limited roll-off scale the transient
  // experiment probes; beyond the first lobe the response is dominated by
  // narrow dressed-state resonances rather than by the signal bandwidth.
  auto quad_gain = [&](double f) {
    const auto rp = quantum::modulation_response(s.atomic, s.omega_y, f);
    const auto rm = quantum::modulation_response(s.atomic, s.omega_y, -f);
    return std::abs(rp - std::conj(rm)) / 4.0;
  };
  const double h0 = quad_gain(1.0);
  double flo = 0.0, fhi = 1e5;
  while (quad_gain(fhi) > h0 / std::sqrt(2.0)) {
    flo = fhi;
    fhi *= 2.0;
  }
  for (int it = 0; it < 50; ++it) {
    const double mid = 0.5 * (flo + fhi);
    (quad_gain(mid) > h0 / std::sqrt(2.0) ? flo : fhi) = mid;
  }
  const double fq = 0.5 * (flo + fhi);

  // Extracted-signal power of a 64-QAM stream riding at IF = symbol rate,
  // integrated through the full master equation. The occupied band scales
  // with the symbol rate, so the atomic response attenuates faster streams.
  auto extracted_power = [&](double sym_rate) {
    const int n_sym = 14, settle = 2, spp = 48; // samples per symbol
    CounterRng rng(7, 0x5E5);
    std::vector<std::complex<double>> sym(n_sym);
    for (auto& v : sym) {
      const double re = 2.0 * std::floor(rng.uniform(0.0, 4.0)) - 3.0;
      const double im = 2.0 * std::floor(rng.uniform(0.0, 4.0)) - 3.0;
      v = std::complex<double>(re, im) / std::sqrt(10.0); // unit-power 16 grid
    }
    const double amp = 0.05 * s.omega_y;
    const double f_if = sym_rate;
    const double T = 1.0 / sym_rate;
    auto oz = [&](double t) {
      int k = std::min(static_cast<int>(t / T), n_sym - 1);
      return s.omega_y +
             amp * (sym[k].real() * std::cos(constants::two_pi * f_if * t) -
                    sym[k].imag() * std::sin(constants::two_pi * f_if * t));
    };
    std::vector<double> grid(n_sym * spp + 1);
    for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = i * T / spp;
    const auto rho0 = quantum::steady_state_numeric(s.atomic, s.omega_y);
    const auto res = quantum::transient_integrate(s.atomic, oz, grid,
                                                  T / (4.0 * spp), &rho0);
    std::complex<double> corr = 0.0;
    double den = 0.0;
    for (int k = settle; k < n_sym; ++k) {
      // Hann-apodized per-symbol demodulation: the long-lived Raman
      // coherences ring for tens of microseconds after each symbol edge,
      // and a boxcar window leaks that off-frequency ringing into the
      // symbol estimate.
      std::complex<double> z = 0.0;
      double wsum = 0.0;
      for (int j = 0; j < spp; ++j) {
        const int idx = k * spp + j;
        const double w =
            0.5 * (1.0 - std::cos(constants::two_pi * (j + 0.5) / spp));
        const double y = res.states[idx](1, 0).imag() - rho0(1, 0).imag();
        z += w * y * std::polar(1.0, -constants::two_pi * f_if * res.t[idx]);
        wsum += w;
      }
      corr += (z / wsum) * std::conj(sym[k]);
      den += std::norm(sym[k]);
    }
    return std::norm(corr / den);
  };

  std::vector<double> rates;
  for (double m : {0.25, 0.5, 1.0, 1.5, 2.0}) rates.push_back(m * fq);
  std::vector<double> powers(rates.size());
  {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < rates.size(); ++i)
      pool.emplace_back([&, i] { powers[i] = extracted_power(rates[i]); });
    for (auto& t : pool) t.join();
  }
  bool mono = true;
  for (std::size_t i = 1; i < powers.size(); ++i)
    if (powers[i] >= powers[i - 1]) mono = false;

  // Usable-span ratio from the bandwidth experiment.
  double ratio = 0.0;
  {
    const auto tables = experiments::run_bandwidth_sweep(s, worker_threads());
    // bandwidth_summary.csv holds a single row ending in the span ratio.
    const std::string csv = tables[1].second.render();
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line); // header
    std::getline(in, line);
    const auto pos = line.rfind(',');
    ratio = std::stod(line.substr(pos + 1));
  }
  const bool ok = mono && ratio >= 10.0;
  return {ok, fmt("QAM power %.3e -> %.3e monotone %s over [0.25,2]x quad "
                  "3dB (%.2f MHz); span ratio %.1f (tol >= 10)",
                  powers.front(), powers.back(), mono ? "yes" : "NO",
                  fq / 1e6, ratio)};
}

// ---------------------------------------------------------------------------
// 6. Capacity ordering at the default link.
// ---------------------------------------------------------------------------
std::pair<bool, std::string> criterion6() {
  const io::Scenario s = io::load_scenario(kScenarioDir + "/default.json");
  const auto c = experiments::capacity_summary(s);
  const bool ok_pair =
      c.rate_uniform > 0.0 && c.rate_nonuniform >= c.rate_uniform &&
      (c.rate_nonuniform - c.rate_uniform) <= 0.10 * c.rate_nonuniform;
  const bool ok_slo = c.rate_nonuniform > c.rate_single_lo &&
                      c.rate_uniform > c.rate_single_lo;
  const double conv_ratio = c.rate_nonuniform / c.rate_conventional;
  const bool ok_conv = conv_ratio >= 10.0 && conv_ratio <= 40.0;
  return {ok_pair && ok_slo && ok_conv,
          fmt("nonuniform %.3e, uniform %.3e, single-LO %.3e, conventional "
              "%.3e bps; conventional ratio %.1f (tol [10,40])",
              c.rate_nonuniform, c.rate_uniform, c.rate_single_lo,
              c.rate_conventional, conv_ratio)};
}

// ---------------------------------------------------------------------------
// 7. Conversion-gain surfaces in the two detuning regimes.
// ---------------------------------------------------------------------------
std::pair<bool, std::string> criterion7() {
  // Large-detuning regime: interior maximum in both sweep axes.
  const io::Scenario big = io::load_scenario(kScenarioDir + "/kappa_large.json");
  std::vector<double> da, oa;
  for (double f = big.sweep.delta_a_lo_hz;
       f <= big.sweep.delta_a_hi_hz + 1e-9; f += big.sweep.delta_a_step_hz)
    da.push_back(f);
  for (double f = big.sweep.omega_a_lo_hz;
       f <= big.sweep.omega_a_hi_hz + 1e-9; f += big.sweep.omega_a_step_hz)
    oa.push_back(f);
  const int nd = static_cast<int>(da.size()), no = static_cast<int>(oa.size());
  std::vector<double> surf(nd * no);
  {
    const int threads = worker_threads();
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        for (int idx = w; idx < nd * no; idx += threads) {
          AtomicSystem at = big.atomic;
          at.delta_a = constants::rad_from_hz(da[idx / no]);
          at.omega_a = constants::rad_from_hz(oa[idx % no]);
          surf[idx] = std::abs(
              optics::kappa_gain(at, big.omega_y, big.probe, big.detector,
                                 big.rf.carriers, big.rf.aperture_m2,
                                 big.rf.spacing_m)
                  .rho_m);
        }
      });
    for (auto& t : pool) t.join();
  }
  int best = static_cast<int>(std::max_element(surf.begin(), surf.end()) -
                              surf.begin());
  const int bi = best / no, bj = best % no;
  const bool ok_interior = bi > 0 && bi < nd - 1 && bj > 0 && bj < no - 1;

  // Small-detuning regime: |kappa| monotone decreasing in Delta_a.
  const io::Scenario sm = io::load_scenario(kScenarioDir + "/kappa_small.json");
  bool ok_mono = true;
  double prev = -1.0;
  for (double f = sm.sweep.delta_a_lo_hz; f <= sm.sweep.delta_a_hi_hz + 1e-9;
       f += sm.sweep.delta_a_step_hz) {
    AtomicSystem at = sm.atomic;
    at.delta_a = constants::rad_from_hz(f);
    const double v = std::abs(
        optics::kappa_gain(at, sm.omega_y, sm.probe, sm.detector,
                           sm.rf.carriers, sm.rf.aperture_m2, sm.rf.spacing_m)
            .rho_m);
    if (prev >= 0.0 && v >= prev) ok_mono = false;
    prev = v;
  }

  // Strict decrease with comb size in both regimes.
  auto decreasing_in_b = [&](const io::Scenario& s) {
    double last = 1e300;
    for (int b = 1; b <= s.sweep.comb_max; ++b) {
      const double v = std::abs(
          optics::kappa_gain(s.atomic, s.omega_y, s.probe, s.detector, b,
                             s.rf.aperture_m2, s.rf.spacing_m)
              .rho_m);
      if (v >= last) return false;
      last = v;
    }
    return true;
  };
  const bool ok_b = decreasing_in_b(big) && decreasing_in_b(sm);
  const bool ok = ok_interior && ok_mono && ok_b;
  return {ok, fmt("large-detuning peak at (%.0f MHz, %.0f MHz) interior %s; "
                  "small-detuning monotone %s; decreasing in comb size %s",
                  da[bi] / 1e6, oa[bj] / 1e6, ok_interior ? "yes" : "NO",
                  ok_mono ? "yes" : "NO", ok_b ? "yes" : "NO")};
}

// ---------------------------------------------------------------------------
// 8. Frequency-plan fixtures.
// ---------------------------------------------------------------------------
std::pair<bool, std::string> criterion8() {
  const double f0 = 30e9;
  signal::CarrierPlan carriers;
  for (double off : {0.0, 7.3e6, 13.4e6, 17.6e6, 18.2e6, 31.6e6, 35.6e6,
                     37.3e6, 39.3e6, 44.5e6})
    carriers.carriers.push_back({f0 + off, 1e-12, 0.0});

  signal::MfcPlan single;
  for (int k = 0; k < 5; ++k)
    single.lines.push_back({f0 - 16e6 + k * 16e6, 0.0});
  single.total_power_w = 1e-6;
  const auto groups1 =
      signal::detect_ambiguity(signal::if_assignment(carriers, single), 2e5);

  signal::BandBudget budget;
  budget.if_max_hz = 5e6;
  budget.min_if_separation_hz = 2e5;
  budget.min_comb_spacing_hz = 11e6;
  const auto two = signal::design_uniform(carriers, budget, {16e6, 12.1e6},
                                          1e-6);
  const auto groups2 = signal::detect_ambiguity(two.if_map, 2e5);
  bool ok_if = true;
  for (const auto& e : two.if_map.entries)
    if (std::abs(e.delta_f_hz) > budget.if_max_hz + 1e-9) ok_if = false;

  // Non-uniform plan: IFs land exactly on the delta ladder, no collisions.
  signal::CarrierPlan wide;
  for (int i = 0; i < 10; ++i)
    wide.carriers.push_back({30e9 + i * 50e6, 1e-12, 0.0});
  const double delta = 2e5;
  const auto nu = signal::design_nonuniform(wide, budget, delta, 1e-6);
  bool ok_ladder = signal::detect_ambiguity(nu.if_map, 1e3).empty();
  for (int i = 0; i < wide.count(); ++i)
    if (nu.if_map.entries[i].delta_f_hz != (i + 1) * delta) ok_ladder = false;

  const bool ok = groups1.size() == 2 && two.combs.size() == 2 &&
                  groups2.empty() && ok_if && ok_ladder;
  return {ok, fmt("single-comb collision groups %zu (want 2); two-comb groups "
                  "%zu (want 0); IFs <= 5 MHz %s; delta-ladder exact %s",
                  groups1.size(), groups2.size(), ok_if ? "yes" : "NO",
                  ok_ladder ? "yes" : "NO")};
}

// ---------------------------------------------------------------------------
// 9. Byte-identical CSVs across thread counts, via the installed CLI.
// ---------------------------------------------------------------------------
std::pair<bool, std::string> criterion9() {
  const fs::path dir = fs::temp_directory_path() / "mcraqr_acceptance9";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto shell = [](const std::string& cmd) {
    return WEXITSTATUS(std::system((cmd + " >/dev/null 2>&1").c_str()));
  };
  auto slurp = [](const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
  };
  struct Job {
    const char* sub;
    const char* scn;
    std::vector<const char*> files;
  };
  const std::vector<Job> jobs = {
      {"capacity", "default.json",
       {"noise_budget.csv", "capacity_vs_carriers.csv"}},
      {"kappa-sweep", "kappa_large.json",
       {"kappa_surface.csv", "kappa_vs_comb_size.csv"}},
      {"validate-envelope", "default.json",
       {"envelope_error_vs_ratio.csv", "envelope_error_vs_rate.csv"}},
      {"sense-aoa", "sensing.json", {"aoa_spectrum.csv", "aoa_estimates.csv"}},
  };
  int mismatches = 0, failures = 0;
  for (const auto& job : jobs) {
    const std::string base = kBin + " " + job.sub + " --scenario " +
                             kScenarioDir + "/" + job.scn + " --seed 42";
    const fs::path d1 = dir / (std::string(job.sub) + "_t1");
    const fs::path d4 = dir / (std::string(job.sub) + "_t4");
    if (shell(base + " --threads 1 --out " + d1.string()) != 0 ||
        shell(base + " --threads 4 --out " + d4.string()) != 0) {
      ++failures;
      continue;
    }
    for (const char* f : job.files) {
      const std::string a = slurp(d1 / f), b = slurp(d4 / f);
      if (a.empty() || a != b) ++mismatches;
    }
  }
  const bool ok = failures == 0 && mismatches == 0;
  return {ok, fmt("%zu experiments re-run at 1 vs 4 threads; %d run failures, "
                  "%d byte mismatches",
                  jobs.size(), failures, mismatches)};
}

} // namespace

int main() {
  run_criterion(1, "closed-form steady state vs dense solve", criterion1);
  run_criterion(2, "envelope approximation accuracy", criterion2);
  run_criterion(3, "CRB algebra", criterion3);
  run_criterion(4, "MUSIC correctness and MSE vs CRB", criterion4);
  run_criterion(5, "bandwidth roll-off", criterion5);
  run_criterion(6, "capacity ordering", criterion6);
  run_criterion(7, "gain-surface shapes", criterion7);
  run_criterion(8, "frequency-plan fixtures", criterion8);
  run_criterion(9, "thread-count determinism", criterion9);
  if (g_failures) {
    std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("acceptance: all 9 criteria PASS\n");
  return 0;
}

#pragma once

#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mcraqr/atomic_system.hpp"
#include "mcraqr/constants.hpp"
#include "mcraqr/errors.hpp"
#include "mcraqr/optics/detection.hpp"
#include "mcraqr/optics/noise.hpp"
#include "mcraqr/optics/probe.hpp"
#include "mcraqr/sensing/model.hpp"
#include "mcraqr/signal/mfc_design.hpp"
#include "mcraqr/signal/plans.hpp"

namespace mcraqr::io {

using json = nlohmann::json;

namespace detail {

struct UnitSuffix {
  const char* suffix;
  double factor;
};

// Frequencies may be given with any of these suffixes; exactly one spelling
// of a stem may appear.
inline constexpr UnitSuffix kFreqUnits[] = {
    {"_hz", 1.0}, {"_khz", 1e3}, {"_mhz", 1e6}, {"_ghz", 1e9}};
inline constexpr UnitSuffix kPowerUnits[] = {
    {"_w", 1.0}, {"_mw", 1e-3}, {"_uw", 1e-6}, {"_nw", 1e-9}, {"_dbm", 0.0}};
inline constexpr UnitSuffix kLengthUnits[] = {
    {"_m", 1.0}, {"_cm", 1e-2}, {"_mm", 1e-3}, {"_um", 1e-6}, {"_nm", 1e-9}};
inline constexpr UnitSuffix kAngleUnits[] = {{"_rad", 1.0},
                                             {"_deg", constants::pi / 180.0}};
inline constexpr UnitSuffix kAreaUnits[] = {{"_m2", 1.0}, {"_cm2", 1e-4}};

inline double expect_number(const json& v, const std::string& key) {
  if (!v.is_number())
    throw SchemaError("scenario: key '" + key + "' must be a number");
  return v.get<double>();
}

template <std::size_t N>
bool read_unit(const json& obj, const std::string& stem,
               const UnitSuffix (&units)[N], double* out) {
  int found = 0;
  for (const auto& u : units) {
    const std::string key = stem + u.suffix;
    auto it = obj.find(key);
    if (it == obj.end()) continue;
    ++found;
    double val = expect_number(*it, key);
    if (u.factor == 0.0) val = 1e-3 * std::pow(10.0, val / 10.0); // dBm
    else val *= u.factor;
    *out = val;
  }
  if (found > 1)
    throw UnitError("scenario: '" + stem + "' given in multiple units");
  return found == 1;
}

inline bool read_plain(const json& obj, const std::string& key, double* out) {
  auto it = obj.find(key);
  if (it == obj.end()) return false;
  *out = expect_number(*it, key);
  return true;
}

inline bool read_int(const json& obj, const std::string& key, int* out) {
  auto it = obj.find(key);
  if (it == obj.end()) return false;
  if (!it->is_number_integer())
    throw SchemaError("scenario: key '" + key + "' must be an integer");
  *out = it->get<int>();
  return true;
}

inline bool read_bool(const json& obj, const std::string& key, bool* out) {
  auto it = obj.find(key);
  if (it == obj.end()) return false;
  if (!it->is_boolean())
    throw SchemaError("scenario: key '" + key + "' must be a boolean");
  *out = it->get<bool>();
  return true;
}

} // namespace detail

// RF front-end / link-level parameters.
struct RfConfig {
  double carrier_hz = 30e9;        // f_c, lowest carrier
  int carriers = 4;                // N
  double carrier_spacing_hz = 50e6;
  double carrier_power_w = 1.0;    // P_c transmit power per carrier
  double comb_power_w = 1e-9;      // received comb power budget
  double signal_power_w = 1e-8;    // received carrier power (weak signal)
  double aperture_m2 = 1e-4;       // A_e
  double range_m = 1500.0;
  double aoa_rad = 0.0;
  double path_gain = 1.0;          // beta_i
  int sensors = 1;                 // M
  double spacing_m = 0.005;        // d
};

struct MfcBudgetConfig {
  signal::BandBudget budget;
  double delta_hz = 2e5; // non-uniform IF ladder step
  std::vector<double> candidate_rates_hz;
};

// Grid for the conversion-gain sweep over the AUX-field knobs. The regime
// (large vs small detuning) is selected by the atomic section of the
// scenario; only the grid itself lives here.
struct SweepConfig {
  double delta_a_lo_hz = 2e6;
  double delta_a_hi_hz = 52e6;
  double delta_a_step_hz = 2e6;
  double omega_a_lo_hz = 2e6;
  double omega_a_hi_hz = 24e6;
  double omega_a_step_hz = 2e6;
  int comb_max = 32;
};

struct SensingScenario {
  sensing::SensingConfig cfg;
  std::vector<sensing::Target> targets;
  int trials = 50;
  double theta_window_rad = 0.1;  // half-width of the AoA search window
  double range_window_m = 60.0;   // half-width of the range search window
  double theta_step_rad = 2e-5;
  double range_step_m = 0.02;
};

struct Scenario {
  AtomicSystem atomic = default_atomic_system();
  optics::ProbeConfig probe;
  double probe_power_w = 3.8e-6;
  optics::DetectorConfig detector;
  optics::NoiseConfig noise;
  RfConfig rf;
  MfcBudgetConfig mfc;
  SweepConfig sweep;
  SensingScenario sensing;
  double omega_y = 0.0; // comb operating Rabi frequency (rad/s), derived

  signal::CarrierPlan carrier_plan() const {
    signal::CarrierPlan plan;
    for (int i = 0; i < rf.carriers; ++i)
      plan.carriers.push_back({rf.carrier_hz + i * rf.carrier_spacing_hz,
                               rf.signal_power_w / rf.carriers, 0.0});
    return plan;
  }
};

namespace detail {

inline void check_keys(const json& obj, const char* section,
                       const std::vector<std::string>& stems) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const auto& s : stems)
      if (it.key() == s || it.key().rfind(s + "_", 0) == 0) {
        ok = true;
        break;
      }
    if (!ok)
      throw SchemaError(std::string("scenario: unknown key '") + it.key() +
                        "' in section '" + section + "'");
  }
}

inline void parse_atomic(const json& a, Scenario* s) {
  check_keys(a, "atomic",
             {"omega_p", "omega_c", "omega_a", "delta_p", "delta_c", "delta_a",
              "delta_x", "gamma_2", "mu_12_ea0", "mu_45_ea0", "density_cm3",
              "cell_length", "lambda_p"});
  double v;
  auto freq = [&](const char* stem, double* out) {
    if (read_unit(a, stem, kFreqUnits, &v)) *out = constants::rad_from_hz(v);
  };
  freq("omega_p", &s->atomic.omega_p);
  freq("omega_c", &s->atomic.omega_c);
  freq("omega_a", &s->atomic.omega_a);
  freq("delta_p", &s->atomic.delta_p);
  freq("delta_c", &s->atomic.delta_c);
  freq("delta_a", &s->atomic.delta_a);
  freq("delta_x", &s->atomic.delta_x);
  freq("gamma_2", &s->atomic.gamma_2);
  if (read_plain(a, "mu_12_ea0", &v)) s->atomic.mu_12 = v * constants::dipole_ea0;
  if (read_plain(a, "mu_45_ea0", &v)) s->atomic.mu_45 = v * constants::dipole_ea0;
  if (read_plain(a, "density_cm3", &v)) s->atomic.n_atoms = v * 1e6;
  if (read_unit(a, "cell_length", kLengthUnits, &v)) s->atomic.cell_length = v;
  if (read_unit(a, "lambda_p", kLengthUnits, &v)) s->atomic.lambda_p = v;
}

inline void parse_probe(const json& p, Scenario* s) {
  check_keys(p, "probe", {"power", "diameter", "phase"});
  double v;
  if (read_unit(p, "power", kPowerUnits, &v)) s->probe_power_w = v;
  if (read_unit(p, "diameter", kLengthUnits, &v)) s->probe.fwhm = v;
  if (read_unit(p, "phase", kAngleUnits, &v)) s->probe.phi_0 = v;
}

inline void parse_detector(const json& d, Scenario* s) {
  check_keys(d, "detector",
             {"local_power", "local_phase", "lna_gain_db", "quantum_efficiency"});
  double v;
  if (read_unit(d, "local_power", kPowerUnits, &v)) s->detector.local_power_w = v;
  if (read_unit(d, "local_phase", kAngleUnits, &v)) s->detector.local_phase_rad = v;
  if (read_plain(d, "lna_gain_db", &v)) s->detector.lna_gain = std::pow(10.0, v / 10.0);
  if (read_plain(d, "quantum_efficiency", &v)) s->detector.quantum_efficiency = v;
}

inline void parse_noise(const json& n, Scenario* s) {
  check_keys(n, "noise",
             {"bandwidth", "temperature_k", "include_qpn", "gamma_nat",
              "gamma_bbr", "n_atoms", "upsilon_1", "upsilon_2"});
  double v;
  if (read_unit(n, "bandwidth", kFreqUnits, &v)) s->noise.bandwidth_hz = v;
  if (read_plain(n, "temperature_k", &v)) s->noise.temperature_k = v;
  read_bool(n, "include_qpn", &s->noise.include_qpn);
  if (read_unit(n, "gamma_nat", kFreqUnits, &v))
    s->noise.gamma_nat = constants::rad_from_hz(v);
  if (read_unit(n, "gamma_bbr", kFreqUnits, &v))
    s->noise.gamma_bbr = constants::rad_from_hz(v);
  if (read_plain(n, "n_atoms", &v)) s->noise.n_atoms = v;
  if (read_plain(n, "upsilon_1", &v)) s->noise.upsilon_1 = v;
  if (read_plain(n, "upsilon_2", &v)) s->noise.upsilon_2 = v;
}

inline void parse_rf(const json& r, Scenario* s) {
  check_keys(r, "rf",
             {"carrier", "carriers", "carrier_spacing", "carrier_power",
              "comb_power", "signal_power", "aperture", "range", "aoa",
              "path_gain", "sensors", "spacing"});
  double v;
  if (read_unit(r, "carrier", kFreqUnits, &v)) s->rf.carrier_hz = v;
  read_int(r, "carriers", &s->rf.carriers);
  if (read_unit(r, "carrier_spacing", kFreqUnits, &v)) s->rf.carrier_spacing_hz = v;
  if (read_unit(r, "carrier_power", kPowerUnits, &v)) s->rf.carrier_power_w = v;
  if (read_unit(r, "comb_power", kPowerUnits, &v)) s->rf.comb_power_w = v;
  if (read_unit(r, "signal_power", kPowerUnits, &v)) s->rf.signal_power_w = v;
  if (read_unit(r, "aperture", kAreaUnits, &v)) s->rf.aperture_m2 = v;
  if (read_unit(r, "range", kLengthUnits, &v)) s->rf.range_m = v;
  if (read_unit(r, "aoa", kAngleUnits, &v)) s->rf.aoa_rad = v;
  if (read_plain(r, "path_gain", &v)) s->rf.path_gain = v;
  read_int(r, "sensors", &s->rf.sensors);
  if (read_unit(r, "spacing", kLengthUnits, &v)) s->rf.spacing_m = v;
}

inline void parse_mfc(const json& m, Scenario* s) {
  check_keys(m, "mfc",
             {"if_max", "min_if_separation", "min_comb_spacing", "delta",
              "candidate_rates"});
  double v;
  if (read_unit(m, "if_max", kFreqUnits, &v)) s->mfc.budget.if_max_hz = v;
  if (read_unit(m, "min_if_separation", kFreqUnits, &v))
    s->mfc.budget.min_if_separation_hz = v;
  if (read_unit(m, "min_comb_spacing", kFreqUnits, &v))
    s->mfc.budget.min_comb_spacing_hz = v;
  if (read_unit(m, "delta", kFreqUnits, &v)) s->mfc.delta_hz = v;
  for (const auto& u : kFreqUnits) {
    const std::string key = std::string("candidate_rates") + u.suffix;
    auto it = m.find(key);
    if (it == m.end()) continue;
    if (!it->is_array())
      throw SchemaError("scenario: '" + key + "' must be an array");
    s->mfc.candidate_rates_hz.clear();
    for (const auto& e : *it)
      s->mfc.candidate_rates_hz.push_back(expect_number(e, key) * u.factor);
  }
}

inline void parse_sweep(const json& w, Scenario* s) {
  check_keys(w, "sweep",
             {"delta_a_lo", "delta_a_hi", "delta_a_step", "omega_a_lo",
              "omega_a_hi", "omega_a_step", "comb_max"});
  double v;
  if (read_unit(w, "delta_a_lo", kFreqUnits, &v)) s->sweep.delta_a_lo_hz = v;
  if (read_unit(w, "delta_a_hi", kFreqUnits, &v)) s->sweep.delta_a_hi_hz = v;
  if (read_unit(w, "delta_a_step", kFreqUnits, &v)) s->sweep.delta_a_step_hz = v;
  if (read_unit(w, "omega_a_lo", kFreqUnits, &v)) s->sweep.omega_a_lo_hz = v;
  if (read_unit(w, "omega_a_hi", kFreqUnits, &v)) s->sweep.omega_a_hi_hz = v;
  if (read_unit(w, "omega_a_step", kFreqUnits, &v)) s->sweep.omega_a_step_hz = v;
  read_int(w, "comb_max", &s->sweep.comb_max);
  if (s->sweep.delta_a_step_hz <= 0 || s->sweep.omega_a_step_hz <= 0 ||
      s->sweep.comb_max < 1)
    throw SchemaError("scenario: sweep steps must be > 0 and comb_max >= 1");
}

inline void parse_sensing(const json& g, Scenario* s) {
  check_keys(g, "sensing",
             {"sensors", "subcarriers", "snapshots", "spacing", "carrier",
              "delta_f", "avg_power", "noise_var", "targets", "trials",
              "theta_window", "range_window", "theta_step", "range_step"});
  double v;
  auto& cfg = s->sensing.cfg;
  read_int(g, "sensors", &cfg.sensors);
  read_int(g, "subcarriers", &cfg.subcarriers);
  read_int(g, "snapshots", &cfg.snapshots);
  if (read_unit(g, "spacing", kLengthUnits, &v)) cfg.spacing_m = v;
  if (read_unit(g, "carrier", kFreqUnits, &v)) cfg.carrier_hz = v;
  if (read_unit(g, "delta_f", kFreqUnits, &v)) cfg.delta_f_hz = v;
  if (read_unit(g, "avg_power", kPowerUnits, &v)) cfg.avg_power_w = v;
  if (read_plain(g, "noise_var", &v)) cfg.noise_var = v;
  read_int(g, "trials", &s->sensing.trials);
  if (read_unit(g, "theta_window", kAngleUnits, &v)) s->sensing.theta_window_rad = v;
  if (read_unit(g, "range_window", kLengthUnits, &v)) s->sensing.range_window_m = v;
  if (read_unit(g, "theta_step", kAngleUnits, &v)) s->sensing.theta_step_rad = v;
  if (read_unit(g, "range_step", kLengthUnits, &v)) s->sensing.range_step_m = v;
  auto it = g.find("targets");
  if (it != g.end()) {
    if (!it->is_array()) throw SchemaError("scenario: 'targets' must be an array");
    s->sensing.targets.clear();
    for (const auto& t : *it) {
      sensing::Target tgt;
      if (!read_unit(t, "aoa", kAngleUnits, &tgt.aoa_rad) ||
          !read_unit(t, "range", kLengthUnits, &tgt.range_m))
        throw SchemaError("scenario: each target needs aoa and range");
      read_plain(t, "gain", &tgt.gain);
      s->sensing.targets.push_back(tgt);
    }
  }
}

} // namespace detail

// The comb operating Rabi frequency Omega_y implied by the received comb
// power through the aperture.
inline double operating_rabi(const Scenario& s) {
  const double u = std::sqrt(2.0 * s.rf.comb_power_w /
                             (s.rf.aperture_m2 * constants::c0 *
                              constants::epsilon0));
  return s.atomic.mu_45 * u / constants::hbar;
}

inline Scenario default_scenario() {
  Scenario s;
  s.probe.fwhm = 1.7e-3;
  s.probe.lambda_p = s.atomic.lambda_p;
  s.probe.phi_0 = 0.0;
  s.probe.u_0 = optics::probe_amplitude_from_power(s.probe_power_w, s.probe.fwhm);
  s.detector.local_power_w = 1e-3;
  s.detector.local_phase_rad = 0.0;
  s.detector.lna_gain = 1000.0; // 30 dB
  s.detector.quantum_efficiency = 0.8;
  s.noise.bandwidth_hz = 1e6;
  s.noise.temperature_k = 290.0;
  s.noise.include_qpn = false;
  s.mfc.candidate_rates_hz = {12.4e6, 16.1e6, 21.3e6};
  s.omega_y = operating_rabi(s);
  return s;
}

inline Scenario parse_scenario(const json& root) {
  if (!root.is_object()) throw SchemaError("scenario: root must be an object");
  Scenario s = default_scenario();
  for (auto it = root.begin(); it != root.end(); ++it) {
    const std::string& k = it.key();
    if (k == "atomic") detail::parse_atomic(*it, &s);
    else if (k == "probe") detail::parse_probe(*it, &s);
    else if (k == "detector") detail::parse_detector(*it, &s);
    else if (k == "noise") detail::parse_noise(*it, &s);
    else if (k == "rf") detail::parse_rf(*it, &s);
    else if (k == "mfc") detail::parse_mfc(*it, &s);
    else if (k == "sweep") detail::parse_sweep(*it, &s);
    else if (k == "sensing") detail::parse_sensing(*it, &s);
    else throw SchemaError("scenario: unknown section '" + k + "'");
  }
  // Derived quantities.
  s.probe.lambda_p = s.atomic.lambda_p;
  s.probe.u_0 = optics::probe_amplitude_from_power(s.probe_power_w, s.probe.fwhm);
  s.omega_y = operating_rabi(s);
  s.atomic.validate();
  s.probe.validate();
  s.detector.validate();
  s.noise.validate();
  return s;
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file: " + path);
  json root;
  try {
    root = json::parse(in);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("scenario: invalid JSON: ") + e.what());
  }
  return parse_scenario(root);
}

} // namespace mcraqr::io

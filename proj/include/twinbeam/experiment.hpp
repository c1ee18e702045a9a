// Copyright 2026 The twinbeam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Scenario orchestration: seed -> EOM -> etalons -> FWM -> losses -> BPD -> SA.
// Every scenario is a pure function of (config, seed); export_result is the
// only function that touches the filesystem.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "twinbeam/config.hpp"
#include "twinbeam/detection.hpp"
#include "twinbeam/digest.hpp"
#include "twinbeam/fwm.hpp"
#include "twinbeam/gaussian.hpp"
#include "twinbeam/optics.hpp"
#include "twinbeam/random.hpp"
#include "twinbeam/trace_io.hpp"

namespace twinbeam {

inline constexpr const char* library_version = "0.1.0";

/// Everything the scenarios derive from the optical chain before detection.
struct OperatingPoint {
  double laser_frequency = 0.0;      // Hz (pump / carrier)
  double probe_frequency = 0.0;      // Hz (-1 sideband)
  double sideband_fraction = 0.0;    // J_1(beta)^2
  double chain_transmission = 0.0;   // filter chain at the probe frequency
  double seed_power = 0.0;           // W, probe seed entering the cell
  double gain = 1.0;
  double eta_probe = 1.0;            // cell exit to photocurrent
  double eta_conjugate = 1.0;
  double probe_power_out = 0.0;      // W, optical power at the detector
  double conjugate_power_out = 0.0;
  double seed_photons = 0.0;         // photons in 1 s of seed (bright-beam scale)
  double squeezing_ratio = 1.0;      // linear, from the Gaussian engine
  double frequency_noise_excess = 0.0;

  double total_power_out() const { return probe_power_out + conjugate_power_out; }
};

/// Derives the operating point at a given crossing angle with detector `bpd`.
inline OperatingPoint operating_point(const ExperimentConfig& cfg, const BpdSpec& bpd, double theta) {
  OperatingPoint op;
  op.laser_frequency = cfg.laser.frequency();
  op.probe_frequency = op.laser_frequency - cfg.eom.drive_frequency;
  op.sideband_fraction = sideband_fraction(cfg.eom, -1);
  op.chain_transmission = chain_transmission(cfg.filter_chain, op.probe_frequency);
  const double window = cfg.losses.window_transmission();
  op.seed_power = cfg.laser.power * cfg.laser.probe_arm_fraction * op.sideband_fraction *
                  op.chain_transmission * window;
  op.gain = effective_gain(cfg.fwm.params, theta, cfg.laser.detuning);

  const double optics_probe = window * cfg.losses.polarizer_transmission * cfg.losses.path_transmission_probe;
  const double optics_conj =
      window * cfg.losses.polarizer_transmission * cfg.losses.path_transmission_conjugate;
  op.eta_probe = optics_probe * bpd.quantum_efficiency;
  op.eta_conjugate = optics_conj * bpd.quantum_efficiency;
  op.probe_power_out = op.seed_power * op.gain * optics_probe;
  op.conjugate_power_out = op.seed_power * (op.gain - 1.0) * optics_conj;

  op.seed_photons = constants::photon_flux(op.seed_power, cfg.laser.wavelength);
  op.squeezing_ratio = gaussian_squeezing_ratio(op.gain, op.eta_probe, op.eta_conjugate, op.seed_photons);
  op.frequency_noise_excess =
      frequency_noise_excess(cfg.fwm.params, cfg.laser.linewidth, cfg.laser.detuning);
  return op;
}

/// Configured classical noise plus the common-mode band produced by laser
/// frequency jitter acting on the detuning-dependent gain.
inline ClassicalNoiseSpec classical_noise_with_jitter(const ExperimentConfig& cfg,
                                                      const OperatingPoint& op) {
  ClassicalNoiseSpec spec = cfg.classical_noise;
  if (op.frequency_noise_excess > 0.0 && cfg.laser.linewidth > 0.0 && op.total_power_out() > 0.0) {
    const double flux = constants::photon_flux(op.total_power_out(), cfg.laser.wavelength);
    const double height = op.frequency_noise_excess * flux / cfg.laser.linewidth;
    spec.features.push_back({0.0, cfg.laser.linewidth, linear_to_db(height), true});
  }
  return spec;
}

struct Provenance {
  std::string scenario;
  int schema_version = config_schema_version;
  std::string library_version = twinbeam::library_version;
};

struct ScenarioResult {
  std::vector<NoiseTrace> traces;
  std::vector<GainProfile> profiles;
  std::vector<std::pair<std::string, double>> scalars;   // reported in this order
  std::string config_hash;
  std::uint64_t seed = 0;
  Provenance provenance;

  double scalar(const std::string& name) const {
    for (const auto& [key, value] : scalars) {
      if (key == name) return value;
    }
    throw InvalidArgument("ScenarioResult: no scalar named '" + name + "'");
  }

  const NoiseTrace& trace(TraceLabel label) const {
    for (const auto& t : traces) {
      if (t.label == label) return t;
    }
    throw InvalidArgument("ScenarioResult: no trace labelled '" + to_string(label) + "'");
  }
};

//---------------------------------------------------------------------------//
// Trace readings (used for scalars and re-usable on persisted traces)
//---------------------------------------------------------------------------//

struct TraceMinimum {
  double value_db;
  double frequency;
};

inline TraceMinimum trace_minimum(const NoiseTrace& trace) {
  const auto it = std::min_element(trace.values.begin(), trace.values.end());
  const auto k = static_cast<std::size_t>(it - trace.values.begin());
  return {*it, trace.frequencies[k]};
}

/// Mean of the dB values in [lo, hi], skipping points within `guard` of any
/// classical feature band.
inline double flat_region_mean_db(const NoiseTrace& trace, double lo, double hi,
                                  const ClassicalNoiseSpec& excluded, double guard) {
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t k = 0; k < trace.values.size(); ++k) {
    const double f = trace.frequencies[k];
    if (f < lo || f > hi) continue;
    const bool near_feature = std::any_of(excluded.features.begin(), excluded.features.end(),
                                          [&](const SpectralFeature& feat) {
                                            return std::abs(f - feat.center) <= 0.5 * feat.width + guard;
                                          });
    if (near_feature) continue;
    sum += trace.values[k];
    ++n;
  }
  if (n == 0) throw InvalidArgument("flat_region_mean_db: no points in range");
  return sum / static_cast<double>(n);
}

/// Lowest display frequency at which the trace is at or below `threshold_db`
/// (e.g. -3 dB: squeezing of at least 3 dB). NaN if never reached.
inline double squeezing_onset(const NoiseTrace& trace, double threshold_db) {
  for (std::size_t k = 0; k < trace.values.size(); ++k) {
    if (trace.values[k] <= threshold_db) return trace.frequencies[k];
  }
  return std::nan("");
}

struct DipWidth {
  double lower;
  double upper;
  double width() const { return upper - lower; }
};

/// Extent of the contiguous region around the minimum of `profile` where
/// y <= threshold, with crossings linearly interpolated.
inline DipWidth dip_width(const GainProfile& profile, double threshold) {
  const auto& x = profile.x;
  const auto& y = profile.y;
  const auto k0 = static_cast<std::size_t>(std::min_element(y.begin(), y.end()) - y.begin());
  if (y[k0] > threshold) return {x[k0], x[k0]};
  auto crossing = [&](std::size_t inside, std::size_t outside) {
    const double t = (threshold - y[inside]) / (y[outside] - y[inside]);
    return x[inside] + t * (x[outside] - x[inside]);
  };
  std::size_t lo = k0;
  while (lo > 0 && y[lo - 1] <= threshold) --lo;
  std::size_t hi = k0;
  while (hi + 1 < y.size() && y[hi + 1] <= threshold) ++hi;
  const double lower = lo == 0 ? x.front() : crossing(lo, lo - 1);
  const double upper = hi + 1 == y.size() ? x.back() : crossing(hi, hi + 1);
  return {lower, upper};
}

//---------------------------------------------------------------------------//
// Scenarios
//---------------------------------------------------------------------------//

namespace detail {

inline void stamp(NoiseTrace& trace, const std::string& scenario, std::uint64_t seed,
                  const std::string& hash) {
  trace.metadata = {scenario, seed, hash};
}

inline ScenarioResult start_result(const ExperimentConfig& cfg, const std::string& scenario) {
  validate_config(cfg);
  ScenarioResult result;
  result.config_hash = config_hash(cfg);
  result.seed = cfg.seed;
  result.provenance.scenario = scenario;
  return result;
}

// Per-trace seeds: stream (trace_stream_base + k) of the run seed.
inline constexpr std::uint64_t trace_stream_base = 100;

inline std::uint64_t trace_seed(const ExperimentConfig& cfg, TraceLabel label) {
  return stream_seed(cfg.seed, trace_stream_base + static_cast<std::uint64_t>(label));
}

}  // namespace detail

/// Noise spectra of probe, conjugate, intensity difference and SNL over the
/// MHz band with the broadband detector.
inline ScenarioResult run_spectrum_scenario(const ExperimentConfig& cfg) {
  const std::string scenario = "spectrum";
  ScenarioResult result = detail::start_result(cfg, scenario);
  const auto& bpd = cfg.detection.bpd;
  const auto& sa = cfg.detection.sa_spectrum;
  const OperatingPoint op = operating_point(cfg, bpd, cfg.fwm.crossing_angle);
  const ClassicalNoiseSpec classical = classical_noise_with_jitter(cfg, op);
  const double total = op.total_power_out();

  const SnlCalibration snl = snl_calibration(total, cfg.laser.wavelength, bpd, sa,
                                             detail::trace_seed(cfg, TraceLabel::snl));
  const QuantumSpectrum quantum{linear_to_db(op.squeezing_ratio), cfg.fwm.squeezing_bandwidth};

  NoiseTrace probe = normalize(
      sa_trace(SingleBeamPsd{cfg.detection.probe_excess_db, classical}, sa,
               detail::trace_seed(cfg, TraceLabel::probe), TraceLabel::probe),
      snl.reference_level);
  NoiseTrace conj = normalize(
      sa_trace(SingleBeamPsd{cfg.detection.conjugate_excess_db, classical}, sa,
               detail::trace_seed(cfg, TraceLabel::conjugate), TraceLabel::conjugate),
      snl.reference_level);
  NoiseTrace diff = normalize(sa_trace(DifferencePsd{quantum, bpd, classical, total}, sa,
                                       detail::trace_seed(cfg, TraceLabel::difference),
                                       TraceLabel::difference),
                              snl.reference_level);
  NoiseTrace snl_trace = snl.trace;

  for (NoiseTrace* t : {&probe, &conj, &diff, &snl_trace}) {
    detail::stamp(*t, scenario, cfg.seed, result.config_hash);
  }
  const TraceMinimum minimum = trace_minimum(diff);
  const std::size_t ref = diff.nearest(sa.reference_frequency);

  result.scalars = {
      {"gain", op.gain},
      {"seed_power_w", op.seed_power},
      {"probe_power_out_w", op.probe_power_out},
      {"conjugate_power_out_w", op.conjugate_power_out},
      {"eta_probe", op.eta_probe},
      {"eta_conjugate", op.eta_conjugate},
      {"quantum_squeezing_db", quantum.s0_db},
      {"min_difference_db", minimum.value_db},
      {"min_difference_frequency_hz", minimum.frequency},
      {"reference_frequency_hz", diff.frequencies[ref]},
      {"squeezing_db_at_reference", diff.values[ref]},
      {"snl_reference_level", snl.reference_level},
      {"photon_flux_total", snl.photon_flux},
      {"frequency_noise_excess", op.frequency_noise_excess},
  };
  result.traces = {std::move(probe), std::move(conj), std::move(diff), std::move(snl_trace)};
  return result;
}

/// Intensity-difference and SNL spectra across the audio band with the
/// low-noise detector (RBW = VBW, so no analyzer graininess by default).
inline ScenarioResult run_audio_scenario(const ExperimentConfig& cfg) {
  const std::string scenario = "audio";
  ScenarioResult result = detail::start_result(cfg, scenario);
  const auto& bpd = cfg.detection.bpd_audio;
  const auto& sa = cfg.detection.sa_audio;
  const OperatingPoint op = operating_point(cfg, bpd, cfg.fwm.crossing_angle);
  const ClassicalNoiseSpec classical = classical_noise_with_jitter(cfg, op);
  const double total = op.total_power_out();

  const SnlCalibration snl = snl_calibration(total, cfg.laser.wavelength, bpd, sa,
                                             detail::trace_seed(cfg, TraceLabel::snl));
  const QuantumSpectrum quantum{linear_to_db(op.squeezing_ratio), cfg.fwm.squeezing_bandwidth};
  NoiseTrace diff = normalize(sa_trace(DifferencePsd{quantum, bpd, classical, total}, sa,
                                       detail::trace_seed(cfg, TraceLabel::difference),
                                       TraceLabel::difference),
                              snl.reference_level);
  NoiseTrace snl_trace = snl.trace;
  detail::stamp(diff, scenario, cfg.seed, result.config_hash);
  detail::stamp(snl_trace, scenario, cfg.seed, result.config_hash);

  const double hi = sa.stop_frequency;
  const double lo = std::min(1e3, hi);
  const std::size_t ref = diff.nearest(sa.reference_frequency);
  result.scalars = {
      {"gain", op.gain},
      {"probe_power_out_w", op.probe_power_out},
      {"conjugate_power_out_w", op.conjugate_power_out},
      {"quantum_squeezing_db", quantum.s0_db},
      {"flat_region_mean_db", flat_region_mean_db(diff, lo, hi, cfg.classical_noise, 100.0)},
      {"squeezing_onset_hz", squeezing_onset(diff, -3.0)},
      {"min_difference_db", trace_minimum(diff).value_db},
      {"reference_frequency_hz", diff.frequencies[ref]},
      {"squeezing_db_at_reference", diff.values[ref]},
      {"snl_reference_level", snl.reference_level},
  };
  result.traces = {std::move(diff), std::move(snl_trace)};
  return result;
}

/// Gain and degree of intensity-difference squeezing versus crossing angle,
/// read at the spectrum analyzer's reference frequency. Squeezing is the
/// difference-to-SNL power ratio at that frequency, in dB.
inline ScenarioResult run_angle_sweep(const ExperimentConfig& cfg, double theta_min,
                                      double theta_max, std::size_t n_points) {
  if (!(theta_min >= 0.0) || !(theta_min < theta_max)) {
    throw InvalidArgument("run_angle_sweep: need 0 <= theta_min < theta_max");
  }
  if (n_points < 3) throw InvalidArgument("run_angle_sweep: n_points must be >= 3");
  const std::string scenario = "angle_sweep";
  ScenarioResult result = detail::start_result(cfg, scenario);
  const auto& bpd = cfg.detection.bpd;
  const double f_ref = cfg.detection.sa_spectrum.reference_frequency;

  GainProfile gain{"theta_rad", "gain", {}, {}};
  GainProfile squeezing{"theta_rad", "squeezing_db", {}, {}};
  for (std::size_t k = 0; k < n_points; ++k) {
    const double theta =
        theta_min + (theta_max - theta_min) * static_cast<double>(k) / static_cast<double>(n_points - 1);
    const OperatingPoint op = operating_point(cfg, bpd, theta);
    const ClassicalNoiseSpec classical = classical_noise_with_jitter(cfg, op);
    const double total = op.total_power_out();
    const QuantumSpectrum quantum{linear_to_db(op.squeezing_ratio), cfg.fwm.squeezing_bandwidth};
    const double diff = DifferencePsd{quantum, bpd, classical, total}.linear(f_ref);
    const double snl = SnlPsd{1.0, bpd, total}.linear(f_ref);
    gain.x.push_back(theta);
    gain.y.push_back(op.gain);
    squeezing.x.push_back(theta);
    squeezing.y.push_back(linear_to_db(diff / snl));
  }
  const auto k_min = static_cast<std::size_t>(
      std::min_element(squeezing.y.begin(), squeezing.y.end()) - squeezing.y.begin());
  const auto k_gain = static_cast<std::size_t>(
      std::max_element(gain.y.begin(), gain.y.end()) - gain.y.begin());
  const DipWidth dip = dip_width(squeezing, -3.0);
  result.scalars = {
      {"analysis_frequency_hz", f_ref},
      {"peak_gain", gain.y[k_gain]},
      {"theta_at_peak_gain_rad", gain.x[k_gain]},
      {"min_squeezing_db", squeezing.y[k_min]},
      {"theta_at_min_squeezing_rad", squeezing.x[k_min]},
      {"dip_lower_rad", dip.lower},
      {"dip_upper_rad", dip.upper},
      {"dip_width_3db_rad", dip.width()},
  };
  result.profiles = {std::move(gain), std::move(squeezing)};
  return result;
}

inline ScenarioResult run_angle_sweep(const ExperimentConfig& cfg) {
  return run_angle_sweep(cfg, cfg.angle_sweep.theta_min, cfg.angle_sweep.theta_max,
                         cfg.angle_sweep.n_points);
}

/// SNL calibration on its own, at the twin-beam total output power.
inline ScenarioResult run_snl_scenario(const ExperimentConfig& cfg) {
  const std::string scenario = "snl_calibration";
  ScenarioResult result = detail::start_result(cfg, scenario);
  const auto& bpd = cfg.detection.bpd;
  const OperatingPoint op = operating_point(cfg, bpd, cfg.fwm.crossing_angle);
  SnlCalibration snl = snl_calibration(op.total_power_out(), cfg.laser.wavelength, bpd,
                                       cfg.detection.sa_spectrum,
                                       detail::trace_seed(cfg, TraceLabel::snl));
  detail::stamp(snl.trace, scenario, cfg.seed, result.config_hash);
  double mean = 0.0;
  for (double v : snl.trace.values) mean += v;
  mean /= static_cast<double>(snl.trace.values.size());
  result.scalars = {
      {"total_power_w", op.total_power_out()},
      {"photon_flux_total", snl.photon_flux},
      {"shot_noise_level", snl.shot_noise_level},
      {"shot_noise_level_db", linear_to_db(snl.shot_noise_level)},
      {"quantum_level", snl.quantum_level},
      {"snl_reference_level", snl.reference_level},
      {"mean_normalized_db", mean},
  };
  result.traces = {std::move(snl.trace)};
  return result;
}

//---------------------------------------------------------------------------//
// Export
//---------------------------------------------------------------------------//

struct ManifestEntry {
  std::string name;
  std::string sha256;
  std::size_t bytes;
};

struct Manifest {
  std::filesystem::path directory;
  std::vector<ManifestEntry> files;
};

inline std::string profile_to_csv(const GainProfile& profile) {
  std::string out = profile.axis + "," + profile.quantity + "\n";
  for (std::size_t k = 0; k < profile.x.size(); ++k) {
    out += format_double(profile.x[k]) + "," + format_double(profile.y[k]) + "\n";
  }
  return out;
}

namespace detail {

inline ManifestEntry write_file(const std::filesystem::path& dir, const std::string& name,
                                const std::string& content) {
  const auto path = dir / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << content;
  out.close();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
  return {name, sha256_hex(content), content.size()};
}

}  // namespace detail

inline ordered_json summary_json(const ScenarioResult& result) {
  ordered_json j;
  j["scenario"] = result.provenance.scenario;
  j["schema_version"] = result.provenance.schema_version;
  j["library_version"] = result.provenance.library_version;
  j["config_hash"] = result.config_hash;
  j["seed"] = result.seed;
  ordered_json scalars = ordered_json::object();
  for (const auto& [key, value] : result.scalars) {
    if (std::isfinite(value)) {
      scalars[key] = value;
    } else {
      scalars[key] = nullptr;
    }
  }
  j["scalars"] = scalars;
  ordered_json traces = ordered_json::array();
  for (const auto& t : result.traces) {
    ordered_json meta = trace_metadata_json(t);
    meta["file"] = to_string(t.label) + ".csv";
    traces.push_back(meta);
  }
  j["traces"] = traces;
  ordered_json profiles = ordered_json::array();
  for (const auto& p : result.profiles) {
    profiles.push_back(ordered_json{{"axis", p.axis},
                                    {"quantity", p.quantity},
                                    {"file", p.quantity + "_vs_" + p.axis + ".csv"}});
  }
  j["profiles"] = profiles;
  return j;
}

/// Writes one CSV per trace and per profile, summary.json and manifest.json
/// (file names, SHA-256 digests, sizes). Identical results give byte-identical
/// files.
inline Manifest export_result(const ScenarioResult& result, const std::filesystem::path& directory) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw IoError("cannot create directory '" + directory.string() + "': " + ec.message());

  Manifest manifest{directory, {}};
  for (const auto& t : result.traces) {
    manifest.files.push_back(detail::write_file(directory, to_string(t.label) + ".csv", trace_to_csv(t)));
  }
  for (const auto& p : result.profiles) {
    manifest.files.push_back(
        detail::write_file(directory, p.quantity + "_vs_" + p.axis + ".csv", profile_to_csv(p)));
  }
  manifest.files.push_back(
      detail::write_file(directory, "summary.json", summary_json(result).dump(2) + "\n"));

  ordered_json m;
  m["scenario"] = result.provenance.scenario;
  m["config_hash"] = result.config_hash;
  m["seed"] = result.seed;
  ordered_json files = ordered_json::array();
  for (const auto& f : manifest.files) {
    files.push_back(ordered_json{{"name", f.name}, {"sha256", f.sha256}, {"bytes", f.bytes}});
  }
  m["files"] = files;
  detail::write_file(directory, "manifest.json", m.dump(2) + "\n");
  return manifest;
}

}  // namespace twinbeam

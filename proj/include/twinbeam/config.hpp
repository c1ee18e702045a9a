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

// Declarative experiment configuration. Documents are JSON; every key has a
// unit suffix and a default (see docs/config-schema.md). Loading rejects
// unknown keys and reports the dotted path of any offending value.

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "twinbeam/constants.hpp"
#include "twinbeam/detection.hpp"
#include "twinbeam/digest.hpp"
#include "twinbeam/error.hpp"
#include "twinbeam/fwm.hpp"
#include "twinbeam/optics.hpp"

namespace twinbeam {

using ordered_json = nlohmann::ordered_json;

inline constexpr int config_schema_version = 1;

struct LaserConfig {
  double power = 0.9;                  // W
  double wavelength = 895e-9;          // m
  double linewidth = 1e5;              // Hz
  double detuning = 1.6e9;             // Hz, one-photon detuning of the pump
  double probe_arm_fraction = 4.03e-4; // laser power reaching the EOM/etalon arm

  double frequency() const { return constants::speed_of_light / wavelength; }
};

struct FwmConfig {
  FwmParams params;
  double crossing_angle = 6e-3;        // rad
  double squeezing_bandwidth = 4e6;    // Hz
  // Recorded for reference only; no physics is attached.
  double cell_temperature_c = 112.0;
  double pump_waist = 560e-6;          // m, 1/e^2 radius
  double probe_waist = 300e-6;         // m
};

struct LossConfig {
  double window_transmission_per_face = 0.98994949366116653;   // sqrt(0.98): 98% per window
  double polarizer_transmission = 0.95;
  double polarizer_extinction_ratio = 1e5;   // pump rejection; recorded only
  double path_transmission_probe = 0.88415;
  double path_transmission_conjugate = 0.88415;

  double window_transmission() const {
    return window_transmission_per_face * window_transmission_per_face;
  }
};

struct DetectionConfig {
  BpdSpec bpd;          // broadband detector (MHz spectra, angle sweep)
  BpdSpec bpd_audio;    // low-noise detector for the audio band
  SaSpec sa_spectrum;
  SaSpec sa_audio;
  double probe_excess_db = 6.0;       // single-beam noise above its SNL
  double conjugate_excess_db = 6.0;
};

struct AngleSweepConfig {
  double theta_min = 0.0;     // rad
  double theta_max = 12e-3;   // rad
  std::size_t n_points = 121;
};

struct ExperimentConfig {
  int schema_version = config_schema_version;
  std::uint64_t seed = 20190807;
  LaserConfig laser;
  EomSpec eom;
  FilterChain filter_chain;
  FwmConfig fwm;
  LossConfig losses;
  DetectionConfig detection;
  ClassicalNoiseSpec classical_noise;
  AngleSweepConfig angle_sweep;
};

//---------------------------------------------------------------------------//
// Defaults
//---------------------------------------------------------------------------//

inline EtalonSpec default_etalon(double thickness, double temperature) {
  EtalonSpec e;
  e.thickness = thickness;
  e.refractive_index = 1.4975;
  e.reflectivity = 0.70;
  e.peak_transmission = 0.9473;
  e.temperature = temperature;
  e.dn_dT = 1.0e-5;
  e.expansion_coeff = 5.5e-7;
  e.reference_temperature = 25.0;
  return e;
}

/// 7 mm + 7 mm + 3 mm chain at the temperatures found by tune_temperatures
/// for the -1 sideband of a 9.2 GHz EOM on an 895 nm carrier.
inline FilterChain default_filter_chain() {
  FilterChain chain;
  chain.elements.emplace_back(default_etalon(7e-3, 25.3683690857708));
  chain.elements.emplace_back(default_etalon(7e-3, 25.3683690857708));
  chain.elements.emplace_back(default_etalon(3e-3, 27.3372177665793));
  return chain;
}

inline ExperimentConfig default_config() {
  ExperimentConfig cfg;
  cfg.eom.drive_frequency = 9.2e9;
  cfg.eom.modulation_depth = solve_beta(6.0 / 88.0);
  cfg.eom.max_order = 8;
  cfg.filter_chain = default_filter_chain();

  cfg.detection.bpd.quantum_efficiency = 0.98;
  cfg.detection.bpd.cmrr_db = 40.0;
  cfg.detection.bpd.electronic_noise = ElectronicNoise{30.0, 0.0, 0.0, 3.93e-4};
  cfg.detection.bpd_audio.quantum_efficiency = 0.98;
  cfg.detection.bpd_audio.cmrr_db = 40.0;
  cfg.detection.bpd_audio.electronic_noise = ElectronicNoise{16.0, 1.1e3, 40.0, 3.93e-4};

  auto& sa = cfg.detection.sa_spectrum;
  sa.start_frequency = 0.0;
  sa.stop_frequency = 5e6;
  sa.rbw = 30e3;
  sa.vbw = 300.0;
  sa.n_points = 501;
  sa.detector_mode = DetectorMode::average;
  sa.sweep_averages = 256;
  sa.reference_frequency = 1.5e5;

  auto& audio = cfg.detection.sa_audio;
  audio.start_frequency = 100.0;
  audio.stop_frequency = 10e3;
  audio.rbw = 10.0;
  audio.vbw = 10.0;
  audio.n_points = 991;
  audio.detector_mode = DetectorMode::average;
  audio.sweep_averages = 1;
  audio.reference_frequency = 2e3;

  cfg.classical_noise.features = {
      {3e5, 2e4, 15.0, true},    // laser intensity noise, cancelled by balancing
      {5.3e3, 40.0, -3.0, false} // survives the balanced difference
  };
  return cfg;
}

//---------------------------------------------------------------------------//
// Parsing
//---------------------------------------------------------------------------//

namespace detail {

/// Walks one JSON object, tracking which keys were read so that leftovers can
/// be reported as unknown.
class ObjectReader {
 public:
  ObjectReader(const ordered_json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_, "expected an object");
  }

  std::string child(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  bool has(const std::string& key) const { return j_.contains(key); }

  const ordered_json* find(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  double number(const std::string& key, std::optional<double> fallback) {
    const auto* v = find(key);
    if (!v) {
      if (!fallback) throw ConfigError(child(key), "required key missing");
      return *fallback;
    }
    if (!v->is_number()) throw ConfigError(child(key), "expected a number");
    const double x = v->get<double>();
    if (!std::isfinite(x)) throw ConfigError(child(key), "must be finite");
    return x;
  }

  std::optional<double> optional_number(const std::string& key, std::optional<double> fallback) {
    const auto* v = find(key);
    if (!v) return fallback;
    if (v->is_null()) return std::nullopt;
    if (!v->is_number()) throw ConfigError(child(key), "expected a number or null");
    return v->get<double>();
  }

  std::uint64_t unsigned_integer(const std::string& key, std::optional<std::uint64_t> fallback) {
    const auto* v = find(key);
    if (!v) {
      if (!fallback) throw ConfigError(child(key), "required key missing");
      return *fallback;
    }
    if (v->is_number_unsigned()) return v->get<std::uint64_t>();
    if (v->is_number_integer() && v->get<std::int64_t>() >= 0) {
      return static_cast<std::uint64_t>(v->get<std::int64_t>());
    }
    throw ConfigError(child(key), "expected a non-negative integer");
  }

  bool boolean(const std::string& key, bool fallback) {
    const auto* v = find(key);
    if (!v) return fallback;
    if (!v->is_boolean()) throw ConfigError(child(key), "expected true or false");
    return v->get<bool>();
  }

  std::string string(const std::string& key, const std::string& fallback) {
    const auto* v = find(key);
    if (!v) return fallback;
    if (!v->is_string()) throw ConfigError(child(key), "expected a string");
    return v->get<std::string>();
  }

  /// Nested object; an absent key behaves like an empty object (all defaults).
  template <typename Fn>
  void object(const std::string& key, Fn&& fn) {
    static const ordered_json empty = ordered_json::object();
    const auto* v = find(key);
    ObjectReader sub(v ? *v : empty, child(key));
    fn(sub);
    sub.finish();
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) throw ConfigError(child(key), "unknown key");
    }
  }

 private:
  const ordered_json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

inline void require(bool ok, const std::string& path, const std::string& invariant) {
  if (!ok) throw ConfigError(path, "out of range: requires " + invariant);
}

inline double fraction(ObjectReader& r, const std::string& key, double fallback) {
  const double v = r.number(key, fallback);
  require(v >= 0.0 && v <= 1.0, r.child(key), "0 <= value <= 1");
  return v;
}

inline double positive(ObjectReader& r, const std::string& key, std::optional<double> fallback) {
  const double v = r.number(key, fallback);
  require(v > 0.0, r.child(key), "value > 0");
  return v;
}

inline EtalonSpec read_etalon(ObjectReader& r, const EtalonSpec& d) {
  EtalonSpec e;
  e.thickness = positive(r, "thickness_m", d.thickness);
  e.refractive_index = r.number("refractive_index", d.refractive_index);
  require(e.refractive_index >= 1.0, r.child("refractive_index"), "refractive_index >= 1");
  e.reflectivity = r.number("reflectivity", d.reflectivity);
  require(e.reflectivity >= 0.0 && e.reflectivity < 1.0, r.child("reflectivity"), "0 <= R < 1");
  e.peak_transmission = r.number("peak_transmission", d.peak_transmission);
  require(e.peak_transmission > 0.0 && e.peak_transmission <= 1.0, r.child("peak_transmission"),
          "0 < T_peak <= 1");
  e.temperature = r.number("temperature_c", d.temperature);
  e.dn_dT = r.number("dn_dt_per_c", d.dn_dT);
  e.expansion_coeff = r.number("expansion_per_c", d.expansion_coeff);
  e.reference_temperature = r.number("reference_temperature_c", d.reference_temperature);
  require(e.fsr() > 0.0, r.child("temperature_c"), "FSR = c/(2nL) > 0");
  return e;
}

inline EomSpec read_eom(ObjectReader& r, const EomSpec& d) {
  EomSpec e;
  e.drive_frequency = positive(r, "drive_frequency_hz", d.drive_frequency);
  e.modulation_depth = r.number("modulation_depth_rad", d.modulation_depth);
  require(e.modulation_depth >= 0.0, r.child("modulation_depth_rad"), "beta >= 0");
  e.max_order = static_cast<int>(r.unsigned_integer("max_order", static_cast<std::uint64_t>(d.max_order)));
  require(e.max_order >= 2, r.child("max_order"), "max_order >= 2");
  e.insertion_transmission = fraction(r, "insertion_transmission", d.insertion_transmission);
  return e;
}

inline FilterChain read_filter_chain(const ordered_json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of elements");
  FilterChain chain;
  for (std::size_t k = 0; k < j.size(); ++k) {
    ObjectReader r(j[k], path + "[" + std::to_string(k) + "]");
    const std::string type = r.string("type", "");
    if (type == "etalon") {
      chain.elements.emplace_back(read_etalon(r, default_etalon(7e-3, 25.0)));
    } else if (type == "loss") {
      StaticLoss loss;
      loss.transmittance = fraction(r, "transmittance", 1.0);
      loss.role = r.string("role", "passive");
      chain.elements.emplace_back(loss);
    } else if (type == "eom") {
      chain.elements.emplace_back(read_eom(r, EomSpec{}));
    } else {
      throw ConfigError(r.child("type"), "expected one of etalon, loss, eom");
    }
    r.finish();
  }
  if (chain.etalon_indices().empty()) {
    throw ConfigError(path, "filter chain needs at least one etalon");
  }
  return chain;
}

inline BpdSpec read_bpd(ObjectReader& r, const BpdSpec& d) {
  BpdSpec b;
  b.quantum_efficiency = fraction(r, "quantum_efficiency", d.quantum_efficiency);
  b.cmrr_db = r.number("cmrr_db", d.cmrr_db);
  require(b.cmrr_db >= 0.0, r.child("cmrr_db"), "cmrr_db >= 0");
  const auto* noise = r.find("electronic_noise");
  if (noise && noise->is_null()) {
    b.electronic_noise.reset();
  } else {
    const ElectronicNoise en_default = d.electronic_noise.value_or(ElectronicNoise{});
    static const ordered_json empty = ordered_json::object();
    ObjectReader n(noise ? *noise : empty, r.child("electronic_noise"));
    ElectronicNoise en;
    en.white_floor_db_below_snl = n.number("white_floor_db_below_snl", en_default.white_floor_db_below_snl);
    en.corner_frequency = n.number("corner_frequency_hz", en_default.corner_frequency);
    require(en.corner_frequency >= 0.0, n.child("corner_frequency_hz"), "corner >= 0");
    en.low_freq_slope_db_per_decade =
        n.number("low_freq_slope_db_per_decade", en_default.low_freq_slope_db_per_decade);
    require(en.low_freq_slope_db_per_decade >= 0.0, n.child("low_freq_slope_db_per_decade"),
            "slope >= 0");
    en.reference_power = positive(n, "reference_power_w", en_default.reference_power);
    n.finish();
    b.electronic_noise = en;
  }
  return b;
}

inline SaSpec read_sa(ObjectReader& r, const SaSpec& d) {
  SaSpec s;
  s.start_frequency = r.number("start_frequency_hz", d.start_frequency);
  require(s.start_frequency >= 0.0, r.child("start_frequency_hz"), "start >= 0");
  s.stop_frequency = r.number("stop_frequency_hz", d.stop_frequency);
  require(s.stop_frequency > s.start_frequency, r.child("stop_frequency_hz"), "stop > start");
  s.rbw = positive(r, "rbw_hz", d.rbw);
  s.vbw = positive(r, "vbw_hz", d.vbw);
  s.n_points = r.unsigned_integer("n_points", d.n_points);
  require(s.n_points >= 2, r.child("n_points"), "n_points >= 2");
  const std::string mode =
      r.string("detector_mode", d.detector_mode == DetectorMode::sample ? "sample" : "average");
  if (mode == "sample") {
    s.detector_mode = DetectorMode::sample;
  } else if (mode == "average") {
    s.detector_mode = DetectorMode::average;
  } else {
    throw ConfigError(r.child("detector_mode"), "expected \"sample\" or \"average\"");
  }
  s.sweep_averages = r.unsigned_integer("sweep_averages", d.sweep_averages);
  require(s.sweep_averages >= 1, r.child("sweep_averages"), "sweep_averages >= 1");
  s.reference_frequency = r.number("reference_frequency_hz", d.reference_frequency);
  require(s.rbw <= s.stop_frequency - s.start_frequency, r.child("rbw_hz"), "rbw <= span");
  return s;
}

inline ClassicalNoiseSpec read_classical(ObjectReader& r, const ClassicalNoiseSpec& d) {
  ClassicalNoiseSpec c;
  c.technical_floor_db_above_snl =
      r.optional_number("technical_floor_db_above_snl", d.technical_floor_db_above_snl);
  const auto* features = r.find("features");
  if (!features) {
    c.features = d.features;
    return c;
  }
  if (!features->is_array()) throw ConfigError(r.child("features"), "expected an array");
  for (std::size_t k = 0; k < features->size(); ++k) {
    ObjectReader f((*features)[k], r.child("features") + "[" + std::to_string(k) + "]");
    SpectralFeature feature;
    feature.center = f.number("center_hz", std::nullopt);
    feature.width = positive(f, "width_hz", std::nullopt);
    feature.height_db_above_snl = f.number("height_db_above_snl", std::nullopt);
    feature.common_mode = f.boolean("common_mode", true);
    f.finish();
    c.features.push_back(feature);
  }
  return c;
}

}  // namespace detail

/// Parses and validates a filter-chain element array.
inline FilterChain filter_chain_from_json(const ordered_json& j) {
  return detail::read_filter_chain(j, "filter_chain");
}

inline ExperimentConfig config_from_json(const ordered_json& doc) {
  using detail::require;
  const ExperimentConfig d = default_config();
  ExperimentConfig cfg = d;
  detail::ObjectReader root(doc, "");

  const auto version = root.unsigned_integer("schema_version", std::nullopt);
  if (version != static_cast<std::uint64_t>(config_schema_version)) {
    throw ConfigError("schema_version", "unsupported schema version " + std::to_string(version) +
                                            " (expected " + std::to_string(config_schema_version) + ")");
  }
  cfg.seed = root.unsigned_integer("seed", d.seed);

  root.object("laser", [&](detail::ObjectReader& r) {
    cfg.laser.power = detail::positive(r, "power_w", std::nullopt);
    cfg.laser.wavelength = detail::positive(r, "wavelength_m", std::nullopt);
    cfg.laser.linewidth = r.number("linewidth_hz", d.laser.linewidth);
    require(cfg.laser.linewidth >= 0.0, r.child("linewidth_hz"), "linewidth >= 0");
    cfg.laser.detuning = r.number("detuning_hz", d.laser.detuning);
    cfg.laser.probe_arm_fraction = detail::fraction(r, "probe_arm_fraction", d.laser.probe_arm_fraction);
  });
  root.object("eom", [&](detail::ObjectReader& r) { cfg.eom = detail::read_eom(r, d.eom); });
  if (const auto* chain = root.find("filter_chain")) {
    cfg.filter_chain = detail::read_filter_chain(*chain, "filter_chain");
  }
  root.object("fwm", [&](detail::ObjectReader& r) {
    auto& p = cfg.fwm.params;
    p.g_max = r.number("g_max", std::nullopt);
    require(p.g_max > 1.0, r.child("g_max"), "g_max > 1");
    p.theta_0 = r.number("theta_0_rad", d.fwm.params.theta_0);
    require(p.theta_0 >= 0.0, r.child("theta_0_rad"), "theta_0 >= 0");
    p.delta_theta = detail::positive(r, "delta_theta_rad", d.fwm.params.delta_theta);
    p.cell_length = detail::positive(r, "cell_length_m", d.fwm.params.cell_length);
    p.one_photon_center = r.number("one_photon_center_hz", d.fwm.params.one_photon_center);
    p.one_photon_width = detail::positive(r, "one_photon_width_hz", d.fwm.params.one_photon_width);
    p.pump_probe_split = detail::positive(r, "pump_probe_split_hz", d.fwm.params.pump_probe_split);
    cfg.fwm.crossing_angle = r.number("crossing_angle_rad", d.fwm.crossing_angle);
    require(cfg.fwm.crossing_angle >= 0.0, r.child("crossing_angle_rad"), "crossing angle >= 0");
    cfg.fwm.squeezing_bandwidth = detail::positive(r, "squeezing_bandwidth_hz", d.fwm.squeezing_bandwidth);
    cfg.fwm.cell_temperature_c = r.number("cell_temperature_c", d.fwm.cell_temperature_c);
    cfg.fwm.pump_waist = detail::positive(r, "pump_waist_m", d.fwm.pump_waist);
    cfg.fwm.probe_waist = detail::positive(r, "probe_waist_m", d.fwm.probe_waist);
  });
  root.object("losses", [&](detail::ObjectReader& r) {
    auto& l = cfg.losses;
    l.window_transmission_per_face =
        detail::fraction(r, "window_transmission_per_face", d.losses.window_transmission_per_face);
    l.polarizer_transmission = detail::fraction(r, "polarizer_transmission", d.losses.polarizer_transmission);
    l.polarizer_extinction_ratio = r.number("polarizer_extinction_ratio", d.losses.polarizer_extinction_ratio);
    require(l.polarizer_extinction_ratio >= 1.0, r.child("polarizer_extinction_ratio"), "ratio >= 1");
    l.path_transmission_probe = detail::fraction(r, "path_transmission_probe", d.losses.path_transmission_probe);
    l.path_transmission_conjugate =
        detail::fraction(r, "path_transmission_conjugate", d.losses.path_transmission_conjugate);
  });
  root.object("detection", [&](detail::ObjectReader& r) {
    auto& det = cfg.detection;
    r.object("bpd", [&](detail::ObjectReader& b) { det.bpd = detail::read_bpd(b, d.detection.bpd); });
    r.object("bpd_audio",
             [&](detail::ObjectReader& b) { det.bpd_audio = detail::read_bpd(b, d.detection.bpd_audio); });
    r.object("sa_spectrum",
             [&](detail::ObjectReader& s) { det.sa_spectrum = detail::read_sa(s, d.detection.sa_spectrum); });
    r.object("sa_audio",
             [&](detail::ObjectReader& s) { det.sa_audio = detail::read_sa(s, d.detection.sa_audio); });
    det.probe_excess_db = r.number("probe_excess_db", d.detection.probe_excess_db);
    det.conjugate_excess_db = r.number("conjugate_excess_db", d.detection.conjugate_excess_db);
  });
  root.object("classical_noise", [&](detail::ObjectReader& r) {
    cfg.classical_noise = detail::read_classical(r, d.classical_noise);
  });
  root.object("angle_sweep", [&](detail::ObjectReader& r) {
    auto& a = cfg.angle_sweep;
    a.theta_min = r.number("theta_min_rad", d.angle_sweep.theta_min);
    require(a.theta_min >= 0.0, r.child("theta_min_rad"), "theta_min >= 0");
    a.theta_max = r.number("theta_max_rad", d.angle_sweep.theta_max);
    require(a.theta_max > a.theta_min, r.child("theta_max_rad"), "theta_max > theta_min");
    a.n_points = r.unsigned_integer("n_points", d.angle_sweep.n_points);
    require(a.n_points >= 3, r.child("n_points"), "n_points >= 3");
  });
  root.finish();
  return cfg;
}

/// Parses a configuration document (JSON text).
inline ExperimentConfig load_config(const std::string& document) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("", std::string("malformed document: ") + e.what());
  }
  return config_from_json(doc);
}

inline ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return load_config(text.str());
}

//---------------------------------------------------------------------------//
// Serialisation (every key explicit, stable order)
//---------------------------------------------------------------------------//

inline ordered_json to_json(const EomSpec& e) {
  return ordered_json{{"drive_frequency_hz", e.drive_frequency},
                      {"modulation_depth_rad", e.modulation_depth},
                      {"max_order", e.max_order},
                      {"insertion_transmission", e.insertion_transmission}};
}

inline ordered_json to_json(const EtalonSpec& e) {
  return ordered_json{{"type", "etalon"},
                      {"thickness_m", e.thickness},
                      {"refractive_index", e.refractive_index},
                      {"reflectivity", e.reflectivity},
                      {"peak_transmission", e.peak_transmission},
                      {"temperature_c", e.temperature},
                      {"dn_dt_per_c", e.dn_dT},
                      {"expansion_per_c", e.expansion_coeff},
                      {"reference_temperature_c", e.reference_temperature}};
}

inline ordered_json to_json(const FilterChain& chain) {
  ordered_json arr = ordered_json::array();
  for (const auto& element : chain.elements) {
    if (const auto* et = std::get_if<EtalonSpec>(&element)) {
      arr.push_back(to_json(*et));
    } else if (const auto* loss = std::get_if<StaticLoss>(&element)) {
      arr.push_back(ordered_json{{"type", "loss"}, {"transmittance", loss->transmittance}, {"role", loss->role}});
    } else {
      ordered_json j{{"type", "eom"}};
      j.update(to_json(std::get<EomSpec>(element)));
      arr.push_back(j);
    }
  }
  return arr;
}

inline ordered_json to_json(const BpdSpec& b) {
  ordered_json j{{"quantum_efficiency", b.quantum_efficiency}, {"cmrr_db", b.cmrr_db}};
  if (b.electronic_noise) {
    const auto& n = *b.electronic_noise;
    j["electronic_noise"] = ordered_json{{"white_floor_db_below_snl", n.white_floor_db_below_snl},
                                         {"corner_frequency_hz", n.corner_frequency},
                                         {"low_freq_slope_db_per_decade", n.low_freq_slope_db_per_decade},
                                         {"reference_power_w", n.reference_power}};
  } else {
    j["electronic_noise"] = nullptr;
  }
  return j;
}

inline ordered_json to_json(const SaSpec& s) {
  return ordered_json{{"start_frequency_hz", s.start_frequency},
                      {"stop_frequency_hz", s.stop_frequency},
                      {"rbw_hz", s.rbw},
                      {"vbw_hz", s.vbw},
                      {"n_points", s.n_points},
                      {"detector_mode", s.detector_mode == DetectorMode::sample ? "sample" : "average"},
                      {"sweep_averages", s.sweep_averages},
                      {"reference_frequency_hz", s.reference_frequency}};
}

inline ordered_json to_json(const ExperimentConfig& cfg) {
  ordered_json j;
  j["schema_version"] = cfg.schema_version;
  j["seed"] = cfg.seed;
  j["laser"] = ordered_json{{"power_w", cfg.laser.power},
                            {"wavelength_m", cfg.laser.wavelength},
                            {"linewidth_hz", cfg.laser.linewidth},
                            {"detuning_hz", cfg.laser.detuning},
                            {"probe_arm_fraction", cfg.laser.probe_arm_fraction}};
  j["eom"] = to_json(cfg.eom);
  j["filter_chain"] = to_json(cfg.filter_chain);
  const auto& p = cfg.fwm.params;
  j["fwm"] = ordered_json{{"g_max", p.g_max},
                          {"theta_0_rad", p.theta_0},
                          {"delta_theta_rad", p.delta_theta},
                          {"cell_length_m", p.cell_length},
                          {"one_photon_center_hz", p.one_photon_center},
                          {"one_photon_width_hz", p.one_photon_width},
                          {"pump_probe_split_hz", p.pump_probe_split},
                          {"crossing_angle_rad", cfg.fwm.crossing_angle},
                          {"squeezing_bandwidth_hz", cfg.fwm.squeezing_bandwidth},
                          {"cell_temperature_c", cfg.fwm.cell_temperature_c},
                          {"pump_waist_m", cfg.fwm.pump_waist},
                          {"probe_waist_m", cfg.fwm.probe_waist}};
  const auto& l = cfg.losses;
  j["losses"] = ordered_json{{"window_transmission_per_face", l.window_transmission_per_face},
                             {"polarizer_transmission", l.polarizer_transmission},
                             {"polarizer_extinction_ratio", l.polarizer_extinction_ratio},
                             {"path_transmission_probe", l.path_transmission_probe},
                             {"path_transmission_conjugate", l.path_transmission_conjugate}};
  j["detection"] = ordered_json{{"bpd", to_json(cfg.detection.bpd)},
                                {"bpd_audio", to_json(cfg.detection.bpd_audio)},
                                {"sa_spectrum", to_json(cfg.detection.sa_spectrum)},
                                {"sa_audio", to_json(cfg.detection.sa_audio)},
                                {"probe_excess_db", cfg.detection.probe_excess_db},
                                {"conjugate_excess_db", cfg.detection.conjugate_excess_db}};
  ordered_json features = ordered_json::array();
  for (const auto& f : cfg.classical_noise.features) {
    features.push_back(ordered_json{{"center_hz", f.center},
                                    {"width_hz", f.width},
                                    {"height_db_above_snl", f.height_db_above_snl},
                                    {"common_mode", f.common_mode}});
  }
  j["classical_noise"] = ordered_json{{"technical_floor_db_above_snl", nullptr}, {"features", features}};
  if (cfg.classical_noise.technical_floor_db_above_snl) {
    j["classical_noise"]["technical_floor_db_above_snl"] = *cfg.classical_noise.technical_floor_db_above_snl;
  }
  j["angle_sweep"] = ordered_json{{"theta_min_rad", cfg.angle_sweep.theta_min},
                                  {"theta_max_rad", cfg.angle_sweep.theta_max},
                                  {"n_points", cfg.angle_sweep.n_points}};
  return j;
}

inline std::string dump_config(const ExperimentConfig& cfg) { return to_json(cfg).dump(2) + "\n"; }

/// Re-validates a programmatically built config through the parser.
inline void validate_config(const ExperimentConfig& cfg) { (void)config_from_json(to_json(cfg)); }

/// SHA-256 of the canonical document with the seed removed: runs that differ
/// only in seed share a hash, and the seed is always reported alongside it.
inline std::string config_hash(const ExperimentConfig& cfg) {
  ordered_json j = to_json(cfg);
  j.erase("seed");
  return sha256_hex(j.dump());
}

}  // namespace twinbeam

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

// Balanced detection and spectrum-analyzer synthesis. Every noise term is a
// linear power spectral density in units of the shot-noise limit (SNL = 1);
// conversion to dB happens only when a value leaves this module.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "twinbeam/constants.hpp"
#include "twinbeam/error.hpp"
#include "twinbeam/gaussian.hpp"
#include "twinbeam/random.hpp"

namespace twinbeam {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

//---------------------------------------------------------------------------//
// Specifications
//---------------------------------------------------------------------------//

/// Detector electronic noise relative to the SNL produced by
/// `reference_power` watts: a white floor plus a power-law rise below
/// `corner_frequency`, where the rise equals the floor. Expressed against a
/// different detected power P it scales as reference_power / P.
struct ElectronicNoise {
  double white_floor_db_below_snl = 30.0;
  double corner_frequency = 0.0;              // Hz; 0 disables the rise
  double low_freq_slope_db_per_decade = 0.0;
  double reference_power = 4.0e-4;            // W

  double relative_to_snl(double frequency, std::optional<double> detected_power = {}) const {
    const double floor = db_to_linear(-white_floor_db_below_snl);
    double rise = 0.0;
    if (corner_frequency > 0.0 && low_freq_slope_db_per_decade > 0.0) {
      const double f = std::max(std::abs(frequency), 1e-3 * corner_frequency);
      rise = std::pow(corner_frequency / f, low_freq_slope_db_per_decade / 10.0);
    }
    const double scale = detected_power ? reference_power / *detected_power : 1.0;
    return floor * (1.0 + rise) * scale;
  }

  std::vector<double> breakpoints() const {
    if (corner_frequency > 0.0) return {0.0, -1e-3 * corner_frequency, 1e-3 * corner_frequency};
    return {};
  }
};

struct BpdSpec {
  double quantum_efficiency = 0.98;
  std::optional<ElectronicNoise> electronic_noise;   // empty = noiseless electronics
  double cmrr_db = 40.0;

  void validate() const {
    if (!(quantum_efficiency >= 0.0 && quantum_efficiency <= 1.0)) {
      throw InvalidArgument("BpdSpec: quantum_efficiency must lie in [0, 1]");
    }
    if (!(cmrr_db >= 0.0)) throw InvalidArgument("BpdSpec: cmrr_db must be >= 0");
  }

  double electronic(double frequency, std::optional<double> detected_power = {}) const {
    return electronic_noise ? electronic_noise->relative_to_snl(frequency, detected_power) : 0.0;
  }
  /// Linear suppression factor applied to common-mode noise.
  double common_mode_factor() const { return db_to_linear(-cmrr_db); }
};

enum class DetectorMode { sample, average };

struct SaSpec {
  double start_frequency = 0.0;
  double stop_frequency = 5e6;
  double rbw = 30e3;
  double vbw = 300.0;
  std::size_t n_points = 501;
  DetectorMode detector_mode = DetectorMode::average;
  std::size_t sweep_averages = 1;        // traces averaged; graininess / sqrt(N)
  double reference_frequency = 1.5e5;    // Hz, where scalar readings are taken

  void validate() const {
    if (!(start_frequency < stop_frequency)) throw InvalidArgument("SaSpec: start must be < stop");
    if (!(rbw > 0.0) || !(vbw > 0.0)) throw InvalidArgument("SaSpec: rbw and vbw must be > 0");
    if (n_points < 2) throw InvalidArgument("SaSpec: n_points must be >= 2");
    if (sweep_averages < 1) throw InvalidArgument("SaSpec: sweep_averages must be >= 1");
  }

  /// Relative standard deviation of a displayed linear power value. Sweep
  /// averaging applies only with the average (power) detector.
  double graininess() const {
    if (vbw >= rbw) return 0.0;
    const double averages =
        detector_mode == DetectorMode::average ? static_cast<double>(sweep_averages) : 1.0;
    return std::sqrt(vbw / rbw / averages);
  }

  std::vector<double> frequencies() const {
    std::vector<double> f(n_points);
    for (std::size_t k = 0; k < n_points; ++k) {
      f[k] = start_frequency + (stop_frequency - start_frequency) * static_cast<double>(k) /
                                   static_cast<double>(n_points - 1);
    }
    return f;
  }
};

/// Rectangular band of classical noise of full width `width` around `center`.
struct SpectralFeature {
  double center = 0.0;          // Hz
  double width = 1.0;           // Hz
  double height_db_above_snl = 0.0;
  bool common_mode = true;

  bool covers(double frequency) const { return std::abs(std::abs(frequency) - center) <= 0.5 * width; }
};

struct ClassicalNoiseSpec {
  std::vector<SpectralFeature> features;
  std::optional<double> technical_floor_db_above_snl;   // broadband, common-mode

  void validate() const {
    for (const auto& f : features) {
      if (!(f.width > 0.0)) throw InvalidArgument("ClassicalNoiseSpec: feature widths must be > 0");
    }
  }

  /// Summed classical noise with common-mode terms scaled by `cm_factor`.
  double linear(double frequency, double cm_factor) const {
    double sum = technical_floor_db_above_snl ? cm_factor * db_to_linear(*technical_floor_db_above_snl)
                                              : 0.0;
    for (const auto& f : features) {
      if (f.covers(frequency)) {
        sum += db_to_linear(f.height_db_above_snl) * (f.common_mode ? cm_factor : 1.0);
      }
    }
    return sum;
  }

  std::vector<double> breakpoints() const {
    std::vector<double> out;
    for (const auto& f : features) {
      for (double edge : {f.center - 0.5 * f.width, f.center + 0.5 * f.width}) {
        out.push_back(edge);
        out.push_back(-edge);
      }
    }
    return out;
  }
};

//---------------------------------------------------------------------------//
// Spectral models
//---------------------------------------------------------------------------//

/// Quantum intensity-difference noise: depth s0 at DC relaxing to the SNL
/// with a Lorentzian of half width `bandwidth`.
struct QuantumSpectrum {
  double s0_db = 0.0;
  double bandwidth = 4e6;

  double linear(double frequency) const {
    const double s0 = db_to_linear(s0_db);
    const double x = frequency / bandwidth;
    return 1.0 - (1.0 - s0) / (1.0 + x * x);
  }
};

inline double squeezing_spectrum(double s0_db, double bandwidth, double frequency) {
  if (!(bandwidth > 0.0)) throw InvalidArgument("squeezing_spectrum: bandwidth must be > 0");
  return linear_to_db(QuantumSpectrum{s0_db, bandwidth}.linear(frequency));
}

/// Anything the spectrum analyzer can sweep: a linear PSD (SNL units) plus
/// the frequencies where it is discontinuous.
template <typename T>
concept PowerSpectrum = requires(const T& psd, double f) {
  { psd.linear(f) } -> std::convertible_to<double>;
  { psd.breakpoints() } -> std::convertible_to<std::vector<double>>;
};

struct DifferencePsd {
  QuantumSpectrum quantum;
  BpdSpec bpd;
  ClassicalNoiseSpec classical;
  std::optional<double> detected_power;

  double linear(double frequency) const {
    return quantum.linear(frequency) + bpd.electronic(frequency, detected_power) +
           classical.linear(frequency, bpd.common_mode_factor());
  }
  std::vector<double> breakpoints() const {
    auto out = classical.breakpoints();
    if (bpd.electronic_noise) {
      const auto extra = bpd.electronic_noise->breakpoints();
      out.insert(out.end(), extra.begin(), extra.end());
    }
    return out;
  }
};

/// Single-beam noise: a flat excess over that beam's SNL plus every classical
/// feature at full height (a single detector rejects nothing).
struct SingleBeamPsd {
  double excess_db = 0.0;
  ClassicalNoiseSpec classical;

  double linear(double frequency) const {
    return db_to_linear(excess_db) + classical.linear(frequency, 1.0);
  }
  std::vector<double> breakpoints() const { return classical.breakpoints(); }
};

/// Balanced detection of a 50:50-split coherent beam.
struct SnlPsd {
  double quantum_level = 1.0;
  BpdSpec bpd;
  std::optional<double> detected_power;

  double linear(double frequency) const {
    return quantum_level + bpd.electronic(frequency, detected_power);
  }
  std::vector<double> breakpoints() const {
    return bpd.electronic_noise ? bpd.electronic_noise->breakpoints() : std::vector<double>{};
  }
};

/// Difference-trace value in dB rel. SNL: quantum + electronic + classical
/// (common-mode terms attenuated by the CMRR), summed linearly.
inline double compose_difference_psd(const QuantumSpectrum& quantum, const BpdSpec& bpd,
                                     const ClassicalNoiseSpec& classical, double frequency) {
  return linear_to_db(DifferencePsd{quantum, bpd, classical, {}}.linear(frequency));
}

enum class Beam { probe, conjugate };

inline double single_beam_psd(Beam /*beam*/, double excess_db_at_ref,
                              const ClassicalNoiseSpec& classical, double frequency) {
  return linear_to_db(SingleBeamPsd{excess_db_at_ref, classical}.linear(frequency));
}

//---------------------------------------------------------------------------//
// Traces
//---------------------------------------------------------------------------//

enum class TraceLabel { probe, conjugate, difference, snl };

inline std::string to_string(TraceLabel label) {
  switch (label) {
    case TraceLabel::probe: return "probe";
    case TraceLabel::conjugate: return "conjugate";
    case TraceLabel::difference: return "difference";
    case TraceLabel::snl: return "snl";
  }
  return "unknown";
}

struct TraceMetadata {
  std::string scenario;
  std::uint64_t seed = 0;
  std::string config_hash;
};

struct NoiseTrace {
  std::vector<double> frequencies;   // Hz, strictly increasing
  std::vector<double> values;        // dB rel. SNL
  TraceLabel label = TraceLabel::difference;
  TraceMetadata metadata;

  void validate() const {
    if (frequencies.size() != values.size()) {
      throw InvalidArgument("NoiseTrace: frequencies and values differ in length");
    }
    for (std::size_t k = 1; k < frequencies.size(); ++k) {
      if (!(frequencies[k] > frequencies[k - 1])) {
        throw InvalidArgument("NoiseTrace: frequencies must be strictly increasing");
      }
    }
  }

  /// Index of the display point closest to `frequency`.
  std::size_t nearest(double frequency) const {
    std::size_t best = 0;
    for (std::size_t k = 1; k < frequencies.size(); ++k) {
      if (std::abs(frequencies[k] - frequency) < std::abs(frequencies[best] - frequency)) best = k;
    }
    return best;
  }
};

/// Mean of `psd` over [lo, hi], split at the PSD's discontinuities.
template <PowerSpectrum Psd>
double band_average(const Psd& psd, double lo, double hi) {
  std::vector<double> cuts{lo, hi};
  for (double b : psd.breakpoints()) {
    if (b > lo && b < hi) cuts.push_back(b);
  }
  std::sort(cuts.begin(), cuts.end());
  auto f = [&psd](double x) { return psd.linear(x); };
  double integral = 0.0;
  for (std::size_t k = 1; k < cuts.size(); ++k) {
    if (cuts[k] > cuts[k - 1]) {
      integral += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
          f, cuts[k - 1], cuts[k], 8, 1e-12);
    }
  }
  return integral / (hi - lo);
}

/// Spectrum-analyzer display of `psd`: each point is the RBW-window average
/// of the linear PSD, times a positive multiplicative fluctuation of mean 1
/// and relative standard deviation SaSpec::graininess() drawn from stream 0
/// of `seed`. The fluctuation is log-normal so displayed power stays positive.
template <PowerSpectrum Psd>
NoiseTrace sa_trace(const Psd& psd, const SaSpec& sa, std::uint64_t seed,
                    TraceLabel label = TraceLabel::difference) {
  sa.validate();
  if (sa.rbw > sa.stop_frequency - sa.start_frequency) {
    throw InvalidArgument("sa_trace: rbw wider than the span");
  }
  const double sigma = sa.graininess();
  const double s2 = std::log1p(sigma * sigma);
  const double s = std::sqrt(s2);
  RandomStream rng(seed, 0);

  NoiseTrace trace;
  trace.label = label;
  trace.metadata.seed = seed;
  trace.frequencies = sa.frequencies();
  trace.values.reserve(sa.n_points);
  for (double f : trace.frequencies) {
    double value = band_average(psd, f - 0.5 * sa.rbw, f + 0.5 * sa.rbw);
    if (sigma > 0.0) {
      value *= std::exp(s * rng.normal() - 0.5 * s2);
    }
    trace.values.push_back(linear_to_db(value));
  }
  return trace;
}

/// Robust reference level of a trace: median of its linear values.
inline double smoothed_level(const NoiseTrace& trace) {
  if (trace.values.empty()) throw InvalidArgument("smoothed_level: empty trace");
  std::vector<double> lin;
  lin.reserve(trace.values.size());
  for (double v : trace.values) lin.push_back(db_to_linear(v));
  std::sort(lin.begin(), lin.end());
  const std::size_t n = lin.size();
  return n % 2 == 1 ? lin[n / 2] : 0.5 * (lin[n / 2 - 1] + lin[n / 2]);
}

/// Re-express a trace relative to a linear reference level.
inline NoiseTrace normalize(NoiseTrace trace, double reference_level) {
  if (!(reference_level > 0.0)) throw InvalidArgument("normalize: reference level must be > 0");
  const double offset = linear_to_db(reference_level);
  for (double& v : trace.values) v -= offset;
  return trace;
}

struct SnlCalibration {
  NoiseTrace trace;              // normalised to its own smoothed level
  double reference_level = 1.0;  // smoothed level before normalisation (SNL units)
  double photon_flux = 0.0;      // photons/s of the total beam
  double shot_noise_level = 0.0; // eta * flux: absolute difference-current shot noise, photons^2/s/Hz
  double quantum_level = 1.0;    // intensity-difference ratio of the split coherent beam
};

/// Shot-noise reference: a coherent beam of `total_power` split 50:50 onto
/// the two photodiodes. The quantum level comes from the Gaussian engine (1 by
/// construction); electronic noise and graininess are added by the analyzer.
inline SnlCalibration snl_calibration(double total_power, double wavelength, const BpdSpec& bpd,
                                      const SaSpec& sa, std::uint64_t seed) {
  if (!(total_power > 0.0)) throw InvalidArgument("snl_calibration: total_power must be > 0");
  if (!(wavelength > 0.0)) throw InvalidArgument("snl_calibration: wavelength must be > 0");
  bpd.validate();

  SnlCalibration out;
  out.photon_flux = constants::photon_flux(total_power, wavelength);
  // One second of photons is deep in the bright-beam regime.
  GaussianState state = displace(make_vacuum(2), 0, std::sqrt(out.photon_flux));
  state = beamsplit(state, 0, 1, 0.5);
  state = apply_loss(state, 0, bpd.quantum_efficiency);
  state = apply_loss(state, 1, bpd.quantum_efficiency);
  out.quantum_level = intensity_diff_ratio(state, 0, 1);
  out.shot_noise_level = bpd.quantum_efficiency * out.photon_flux;

  const NoiseTrace raw =
      sa_trace(SnlPsd{out.quantum_level, bpd, total_power}, sa, seed, TraceLabel::snl);
  out.reference_level = smoothed_level(raw);
  out.trace = normalize(raw, out.reference_level);
  return out;
}

}  // namespace twinbeam

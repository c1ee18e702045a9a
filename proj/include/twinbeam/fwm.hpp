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

// Phenomenological double-lambda four-wave-mixing amplifier: gain versus
// crossing angle (sinc^2 phase-matching envelope) and versus one-photon
// detuning (Lorentzian), plus the twin-beam noise formulas built on them.

#include <cmath>
#include <string>
#include <vector>

#include "twinbeam/constants.hpp"
#include "twinbeam/error.hpp"
#include "twinbeam/gaussian.hpp"

namespace twinbeam {

struct FwmParams {
  double g_max = 13.7;                  // peak intensity gain
  double theta_0 = 6e-3;                // rad, phase-matching centre
  double delta_theta = 6e-3;            // rad, full width of the sinc^2 main lobe
  double cell_length = 0.025;           // m
  double one_photon_center = 1.6e9;     // Hz, detuning of peak gain
  double one_photon_width = 1.0e9;      // Hz, FWHM of the one-photon resonance
  double pump_probe_split = 9.2e9;      // Hz

  void validate() const {
    if (!(g_max > 1.0)) throw InvalidArgument("FwmParams: g_max must be > 1");
    if (!(delta_theta > 0.0)) throw InvalidArgument("FwmParams: delta_theta must be > 0");
    if (!(one_photon_width > 0.0)) throw InvalidArgument("FwmParams: one_photon_width must be > 0");
    if (!(cell_length > 0.0)) throw InvalidArgument("FwmParams: cell_length must be > 0");
  }
};

/// A gain (or squeezing) curve sampled along one axis.
struct GainProfile {
  std::string axis;    // e.g. "theta_rad", "detuning_hz"
  std::string quantity;  // e.g. "gain", "squeezing_db"
  std::vector<double> x;
  std::vector<double> y;
};

/// Squeezing parameter r with cosh^2 r = g.
inline double r_from_gain(double g) {
  if (!(g >= 1.0)) {
    throw InvalidArgument("r_from_gain: gain must be >= 1");
  }
  return std::acosh(std::sqrt(g));
}

inline double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

/// Phase-mismatch argument Delta k L / 2 at crossing angle theta. The scale is
/// fixed so the sinc^2 main lobe spans theta_0 +/- delta_theta / 2.
inline double phase_mismatch(const FwmParams& p, double theta) {
  return 2.0 * constants::pi * (theta - p.theta_0) / p.delta_theta;
}

/// Normalised angular envelope in [0, 1]; 1 at theta_0.
inline double angle_factor(const FwmParams& p, double theta) {
  const double s = sinc(phase_mismatch(p, theta));
  return s * s;
}

/// Normalised one-photon resonance in (0, 1]; 1 at one_photon_center.
inline double detuning_factor(const FwmParams& p, double delta) {
  const double u = 2.0 * (delta - p.one_photon_center) / p.one_photon_width;
  return 1.0 / (1.0 + u * u);
}

inline double gain_at_angle(const FwmParams& p, double theta) {
  if (!(theta >= 0.0)) {
    throw InvalidArgument("gain_at_angle: theta must be >= 0");
  }
  return 1.0 + (p.g_max - 1.0) * angle_factor(p, theta);
}

inline double gain_at_detuning(const FwmParams& p, double delta) {
  return 1.0 + (p.g_max - 1.0) * detuning_factor(p, delta);
}

/// Gain at a given crossing angle and one-photon detuning; the two envelopes
/// multiply the excess gain g_max - 1.
inline double effective_gain(const FwmParams& p, double theta, double delta) {
  if (!(theta >= 0.0)) {
    throw InvalidArgument("effective_gain: theta must be >= 0");
  }
  return 1.0 + (p.g_max - 1.0) * angle_factor(p, theta) * detuning_factor(p, delta);
}

/// Linear intensity-difference noise relative to the SNL for a bright
/// coherent seed amplified with gain g, followed by detection efficiencies
/// eta_probe / eta_conj. Linearised input-output result:
///   numerator = ep^2 G(2G-1) + ec^2 (G-1)(2G-1) - 4 ep ec G(G-1)
///               + ep(1-ep) G + ec(1-ec)(G-1)
///   denominator = ep G + ec (G-1)
inline double lossy_squeezing_ratio(double g, double eta_probe, double eta_conj) {
  if (!(g >= 1.0)) throw InvalidArgument("lossy_squeezing: gain must be >= 1");
  if (!(eta_probe >= 0.0 && eta_probe <= 1.0 && eta_conj >= 0.0 && eta_conj <= 1.0)) {
    throw InvalidArgument("lossy_squeezing: efficiencies must lie in [0, 1]");
  }
  const double ep = eta_probe;
  const double ec = eta_conj;
  const double denom = ep * g + ec * (g - 1.0);
  if (!(denom > 0.0)) {
    throw UndefinedRatio("lossy_squeezing: no detected power");
  }
  const double two_g = 2.0 * g - 1.0;
  const double num = ep * ep * g * two_g + ec * ec * (g - 1.0) * two_g -
                     4.0 * ep * ec * g * (g - 1.0) + ep * (1.0 - ep) * g +
                     ec * (1.0 - ec) * (g - 1.0);
  return num / denom;
}

/// lossy_squeezing_ratio in dB (negative = squeezed).
inline double lossy_squeezing_db(double g, double eta_probe, double eta_conj) {
  return 10.0 * std::log10(lossy_squeezing_ratio(g, eta_probe, eta_conj));
}

/// Same quantity through the Gaussian engine: coherent seed of
/// `seed_photons` in the probe mode, two-mode squeezing, then loss on each
/// mode, evaluated with exact photon-number moments.
inline double gaussian_squeezing_ratio(double g, double eta_probe, double eta_conj,
                                       double seed_photons) {
  GaussianState s = displace(make_vacuum(2), 0, std::sqrt(seed_photons));
  s = two_mode_squeeze(s, 0, 1, r_from_gain(g), 0.0);
  s = apply_loss(s, 0, eta_probe);
  s = apply_loss(s, 1, eta_conj);
  return intensity_diff_ratio(s, 0, 1);
}

/// Fractional gain-fluctuation power (dg/dDelta * linewidth / g)^2 produced
/// by laser frequency jitter of the given linewidth at detuning `delta`.
/// Zero at the gain peak; scales as width^-4 near it.
inline double frequency_noise_excess(const FwmParams& p, double laser_linewidth, double delta) {
  if (!(laser_linewidth >= 0.0)) {
    throw InvalidArgument("frequency_noise_excess: linewidth must be >= 0");
  }
  const double w = p.one_photon_width;
  const double u = 2.0 * (delta - p.one_photon_center) / w;
  const double l = 1.0 / (1.0 + u * u);
  const double slope = -(p.g_max - 1.0) * l * l * 2.0 * u * (2.0 / w);
  const double g = 1.0 + (p.g_max - 1.0) * l;
  const double x = slope * laser_linewidth / g;
  return x * x;
}

inline GainProfile sample_gain_vs_angle(const FwmParams& p, double theta_min, double theta_max,
                                        std::size_t n_points) {
  if (!(theta_min < theta_max) || n_points < 2) {
    throw InvalidArgument("sample_gain_vs_angle: need theta_min < theta_max and >= 2 points");
  }
  GainProfile out{"theta_rad", "gain", {}, {}};
  for (std::size_t k = 0; k < n_points; ++k) {
    const double theta =
        theta_min + (theta_max - theta_min) * static_cast<double>(k) / static_cast<double>(n_points - 1);
    out.x.push_back(theta);
    out.y.push_back(gain_at_angle(p, theta));
  }
  return out;
}

}  // namespace twinbeam

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

#include "twinbeam/fwm.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace twinbeam;

TEST(fwm, squeezing_parameter_from_gain) {
  EXPECT_NEAR(r_from_gain(13.7), 1.9830761484581052, 1e-14);
  EXPECT_NEAR(r_from_gain(2.0), 0.8813735870195432, 1e-14);
  EXPECT_EQ(r_from_gain(1.0), 0.0);
  EXPECT_THROW(r_from_gain(0.5), InvalidArgument);
}

TEST(fwm, ideal_squeezing_law) {
  EXPECT_NEAR(lossy_squeezing_db(13.7, 1.0, 1.0), -14.21603926869831, 1e-9);
  EXPECT_NEAR(lossy_squeezing_db(1.0, 1.0, 1.0), 0.0, 1e-12);
}

TEST(fwm, symmetric_loss_anchor) {
  // Efficiency that turns the ideal G = 13.7 result into 6.5 dB.
  EXPECT_NEAR(lossy_squeezing_db(13.7, 0.8066841021330545, 0.8066841021330545), -6.5, 1e-9);
  const double eta = 0.8066841021330545;
  EXPECT_NEAR(lossy_squeezing_ratio(13.7, eta, eta), 1.0 - eta + eta / 26.4, 1e-14);
}

TEST(fwm, asymmetric_loss_matches_covariance_oracle) {
  EXPECT_NEAR(lossy_squeezing_db(5.0, 0.9, 0.6), 0.4310588060234521, 1e-9);
  EXPECT_NEAR(lossy_squeezing_db(13.7, 0.95, 0.7), 1.537192007439296, 1e-9);
  EXPECT_NEAR(lossy_squeezing_db(2.0, 0.5, 0.99), -3.0313015441424134, 1e-9);
}

TEST(fwm, gaussian_engine_matches_closed_form) {
  for (double g : {1.5, 4.0, 13.7}) {
    for (double eta : {0.4, 0.8, 1.0}) {
      const double engine = 10.0 * std::log10(gaussian_squeezing_ratio(g, eta, 0.9, 1e15));
      EXPECT_NEAR(engine, lossy_squeezing_db(g, eta, 0.9), 1e-6) << g << " " << eta;
    }
  }
}

TEST(fwm, squeezing_rejects_bad_inputs) {
  EXPECT_THROW(lossy_squeezing_ratio(0.9, 1.0, 1.0), InvalidArgument);
  EXPECT_THROW(lossy_squeezing_ratio(2.0, 1.2, 1.0), InvalidArgument);
  EXPECT_THROW(lossy_squeezing_ratio(2.0, 0.0, 0.0), UndefinedRatio);
}

TEST(fwm, gain_peaks_at_phase_matching_angle) {
  const FwmParams p;
  EXPECT_NEAR(gain_at_angle(p, p.theta_0), p.g_max, 1e-12);
  EXPECT_NEAR(gain_at_angle(p, 0.0), 1.0, 1e-12);
  EXPECT_LT(gain_at_angle(p, 4e-3), p.g_max);
  EXPECT_NEAR(gain_at_angle(p, 4e-3), gain_at_angle(p, 8e-3), 1e-12);
  EXPECT_THROW(gain_at_angle(p, -1e-3), InvalidArgument);
}

TEST(fwm, gain_versus_one_photon_detuning) {
  const FwmParams p;
  EXPECT_NEAR(gain_at_detuning(p, p.one_photon_center), p.g_max, 1e-12);
  // Half the excess gain one half-width away.
  EXPECT_NEAR(gain_at_detuning(p, p.one_photon_center + 0.5 * p.one_photon_width),
              1.0 + 0.5 * (p.g_max - 1.0), 1e-12);
  EXPECT_NEAR(effective_gain(p, p.theta_0, p.one_photon_center), p.g_max, 1e-12);
}

TEST(fwm, frequency_noise_vanishes_on_resonance) {
  const FwmParams p;
  EXPECT_EQ(frequency_noise_excess(p, 1e5, p.one_photon_center), 0.0);
  const double off = frequency_noise_excess(p, 1e5, p.one_photon_center + 0.3 * p.one_photon_width);
  EXPECT_GT(off, 0.0);
  EXPECT_NEAR(frequency_noise_excess(p, 2e5, p.one_photon_center + 0.3 * p.one_photon_width), 4.0 * off,
              1e-12 * off);
}

TEST(fwm, main_lobe_rises_to_the_peak) {
  const FwmParams p;
  const auto profile = sample_gain_vs_angle(p, p.theta_0 - 0.5 * p.delta_theta, p.theta_0, 31);
  ASSERT_EQ(profile.x.size(), 31u);
  for (std::size_t k = 1; k < profile.y.size(); ++k) EXPECT_GE(profile.y[k], profile.y[k - 1]);
  EXPECT_THROW(sample_gain_vs_angle(p, 1.0, 0.0, 10), InvalidArgument);
}

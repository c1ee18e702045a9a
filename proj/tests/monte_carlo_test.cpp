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

#include "twinbeam/monte_carlo.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "twinbeam/fwm.hpp"

using namespace twinbeam;

namespace {

GaussianState lossy_twin_beams(double g, double eta_p, double eta_c, double seed_photons) {
  GaussianState s = displace(make_vacuum(2), 0, std::sqrt(seed_photons));
  s = two_mode_squeeze(s, 0, 1, r_from_gain(g), 0.0);
  s = apply_loss(s, 0, eta_p);
  return apply_loss(s, 1, eta_c);
}

}  // namespace

TEST(monte_carlo, agrees_with_exact_moments) {
  const auto state = lossy_twin_beams(3.0, 0.8, 0.7, 400.0);
  const auto exact = photon_stats(state, 0, 1);
  const auto mc = monte_carlo_photon_stats(state, 0, 1, 200000, 11);
  EXPECT_NEAR(mc.estimate.mean_a, exact.mean_a, 5 * mc.standard_error.mean_a);
  EXPECT_NEAR(mc.estimate.mean_b, exact.mean_b, 5 * mc.standard_error.mean_b);
  EXPECT_NEAR(mc.estimate.var_a, exact.var_a, 5 * mc.standard_error.var_a);
  EXPECT_NEAR(mc.estimate.cov_ab, exact.cov_ab, 5 * mc.standard_error.cov_ab);
  EXPECT_NEAR(mc.diff_ratio, intensity_diff_ratio(exact), 5 * mc.diff_ratio_error);
  EXPECT_TRUE(mc.reliable());
}

TEST(monte_carlo, coherent_state_gives_unit_ratio) {
  const auto state = displace(make_vacuum(2), 0, {20.0, 0.0});
  const auto mc = monte_carlo_photon_stats(beamsplit(state, 0, 1, 0.5), 0, 1, 100000, 5);
  EXPECT_NEAR(mc.diff_ratio, 1.0, 5 * mc.diff_ratio_error);
}

TEST(monte_carlo, deterministic_per_seed) {
  const auto state = lossy_twin_beams(2.0, 0.9, 0.9, 1000.0);
  const auto a = monte_carlo_photon_stats(state, 0, 1, 20000, 3);
  const auto b = monte_carlo_photon_stats(state, 0, 1, 20000, 3);
  const auto c = monte_carlo_photon_stats(state, 0, 1, 20000, 4);
  EXPECT_EQ(a.diff_ratio, b.diff_ratio);
  EXPECT_EQ(a.estimate.var_a, b.estimate.var_a);
  EXPECT_NE(a.diff_ratio, c.diff_ratio);
}

TEST(monte_carlo, flags_dim_beams) {
  const auto state = two_mode_squeeze(make_vacuum(2), 0, 1, 0.5, 0.0);
  const auto mc = monte_carlo_photon_stats(state, 0, 1, 10000, 1);
  EXPECT_FALSE(mc.reliable());
}

TEST(monte_carlo, rejects_small_sample_counts) {
  EXPECT_THROW(monte_carlo_photon_stats(make_vacuum(2), 0, 1, 9999, 1), InvalidArgument);
}

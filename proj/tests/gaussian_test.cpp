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

#include "twinbeam/gaussian.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "random_circuits.hpp"
#include "twinbeam/fwm.hpp"

using namespace twinbeam;

TEST(gaussian, vacuum_has_no_photons) {
  const auto s = photon_stats(make_vacuum(2), 0, 1);
  EXPECT_NEAR(s.mean_a, 0.0, 1e-15);
  EXPECT_NEAR(s.var_b, 0.0, 1e-15);
  EXPECT_NEAR(s.cov_ab, 0.0, 1e-15);
  EXPECT_THROW(intensity_diff_ratio(make_vacuum(2), 0, 1), UndefinedRatio);
}

TEST(gaussian, coherent_state_is_poissonian) {
  const auto state = displace(make_vacuum(2), 0, {3.0, -4.0});
  const auto s = photon_stats(state, 0, 1);
  EXPECT_NEAR(s.mean_a, 25.0, 1e-12);
  EXPECT_NEAR(s.var_a, 25.0, 1e-12);
  EXPECT_NEAR(s.mean_b, 0.0, 1e-12);
  EXPECT_NEAR(intensity_diff_ratio(state, 0, 1), 1.0, 1e-12);
}

TEST(gaussian, two_mode_squeezed_vacuum_moments) {
  const double r = 1.1;
  const auto state = two_mode_squeeze(make_vacuum(2), 0, 1, r, 0.3);
  const double n = std::sinh(r) * std::sinh(r);
  const auto s = photon_stats(state, 0, 1);
  EXPECT_NEAR(s.mean_a, n, 1e-12);
  EXPECT_NEAR(s.mean_b, n, 1e-12);
  EXPECT_NEAR(s.var_a, n * (n + 1.0), 1e-11);
  EXPECT_NEAR(s.cov_ab, n * (n + 1.0), 1e-11);
  EXPECT_NEAR(intensity_diff_ratio(s), 0.0, 1e-12);
  for (double nu : symplectic_spectrum(state)) EXPECT_NEAR(nu, 1.0, 1e-10);
}

TEST(gaussian, seeded_amplifier_reaches_ideal_ratio) {
  // Bright seed, G = 13.7: ratio 1/(2G-1) up to O(1/seed) corrections.
  auto state = displace(make_vacuum(2), 0, std::sqrt(1e12));
  state = two_mode_squeeze(state, 0, 1, 1.9830761484581052, 0.0);
  EXPECT_NEAR(intensity_diff_ratio(state, 0, 1), 1.0 / 26.4, 1e-9);
}

TEST(gaussian, exact_and_linearized_moments_agree_for_bright_beams) {
  auto state = displace(make_vacuum(2), 0, std::sqrt(1e10));
  state = two_mode_squeeze(state, 0, 1, 0.8, 0.0);
  state = apply_loss(state, 1, 0.7);
  const auto exact = photon_stats(state, 0, 1);
  const auto lin = linearized_photon_stats(state, 0, 1);
  EXPECT_NEAR(lin.mean_a / exact.mean_a, 1.0, 1e-8);
  EXPECT_NEAR(intensity_diff_ratio(lin), intensity_diff_ratio(exact), 1e-8);
}

TEST(gaussian, loss_produces_mixed_state) {
  auto state = two_mode_squeeze(make_vacuum(2), 0, 1, 0.5, 0.0);
  state = apply_loss(state, 0, 0.5);
  const auto nu = symplectic_spectrum(state);
  EXPECT_GT(*std::max_element(nu.begin(), nu.end()), 1.0 + 1e-3);
  EXPECT_GE(*std::min_element(nu.begin(), nu.end()), 1.0 - 1e-12);
}

TEST(gaussian, full_loss_returns_vacuum_mode) {
  auto state = displace(make_vacuum(2), 1, {2.0, 1.0});
  state = apply_loss(state, 1, 0.0);
  EXPECT_TRUE(state.cov().isApprox(Matrix::Identity(4, 4)));
  EXPECT_NEAR(state.mean().norm(), 0.0, 1e-15);
}

TEST(gaussian, beamsplitter_conserves_photon_number) {
  auto state = displace(make_vacuum(2), 0, {5.0, 0.0});
  state = two_mode_squeeze(state, 0, 1, 0.4, 0.0);
  const auto before = photon_stats(state, 0, 1);
  const auto after = photon_stats(beamsplit(state, 0, 1, 0.3), 0, 1);
  EXPECT_NEAR(before.mean_a + before.mean_b, after.mean_a + after.mean_b, 1e-10);
}

TEST(gaussian, balanced_split_of_coherent_beam_is_at_shot_noise) {
  auto state = displace(make_vacuum(2), 0, std::sqrt(1e6));
  state = beamsplit(state, 0, 1, 0.5);
  EXPECT_NEAR(intensity_diff_ratio(state, 0, 1), 1.0, 1e-12);
}

TEST(gaussian, rejects_invalid_arguments) {
  const auto vac = make_vacuum(2);
  EXPECT_THROW(two_mode_squeeze(vac, 0, 1, -0.1, 0.0), InvalidArgument);
  EXPECT_THROW(two_mode_squeeze(vac, 1, 1, 0.1, 0.0), InvalidArgument);
  EXPECT_THROW(apply_loss(vac, 0, 1.5), InvalidArgument);
  EXPECT_THROW(apply_loss(vac, 2, 0.5), InvalidArgument);
  EXPECT_THROW(beamsplit(vac, 0, 1, -0.2), InvalidArgument);
  EXPECT_THROW(make_vacuum(0), InvalidArgument);
}

TEST(gaussian, symplectic_builders_preserve_the_form) {
  const Matrix omega = symplectic_form(3);
  for (const auto& op : {two_mode_squeezer(3, 0, 2, 1.3, 0.7), beamsplitter(3, 1, 2, 0.2),
                         rotation(3, 1, 2.1)}) {
    EXPECT_LT((op.matrix * omega * op.matrix.transpose() - omega).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(gaussian, random_circuits_keep_invariants) {
  for (std::uint64_t k = 0; k < 200; ++k) {
    const auto c = twinbeam_test::check_random_circuit(7, k);
    ASSERT_LE(c.asymmetry, 1e-12) << "circuit " << k;
    ASSERT_GE(c.min_symplectic_eigenvalue, 1.0 - 1e-9) << "circuit " << k;
    ASSERT_LE(c.loss_composition_error, 1e-10) << "circuit " << k;
    ASSERT_LE(c.inverse_squeezer_error, 1e-10) << "circuit " << k;
  }
}

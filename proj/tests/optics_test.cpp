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

#include "twinbeam/optics.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "twinbeam/config.hpp"
#include "twinbeam/etalon_tuning.hpp"

using namespace twinbeam;

TEST(eom, bessel_sideband_fractions) {
  EomSpec spec;
  spec.modulation_depth = 0.5053797954662542;
  const auto powers = eom_sideband_powers(spec);
  ASSERT_EQ(powers.size(), 17u);
  double total = 0.0;
  for (const auto& p : powers) total += p.fraction;
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_NEAR(sideband_fraction(spec, 0), 0.8782686562250657, 1e-12);
  EXPECT_NEAR(sideband_fraction(spec, -1), 0.059881953833527235, 1e-12);
  EXPECT_NEAR(sideband_fraction(spec, 1), sideband_fraction(spec, -1), 1e-15);
}

TEST(eom, solve_beta_inverts_the_ratio) {
  const double beta = solve_beta(6.0 / 88.0);
  EXPECT_NEAR(beta, 0.5053797954662542, 1e-10);
  EXPECT_NEAR(sideband_to_carrier_ratio(beta), 6.0 / 88.0, 1e-12);
}

TEST(eom, solve_beta_out_of_range) {
  EXPECT_THROW(solve_beta(-0.1), NoSolution);
  EXPECT_THROW(solve_beta(0.0), NoSolution);
  // The ratio diverges where J_0 vanishes; beyond the first branch it is rejected.
  EXPECT_THROW(solve_beta(1e9), NoSolution);
}

TEST(etalon, free_spectral_range) {
  EtalonSpec e;
  EXPECT_NEAR(e.fsr(), 14299664106.84474, 1.0);
  EXPECT_NEAR(e.coefficient_of_finesse(), 4.0 * 0.7 / 0.09, 1e-12);
}

TEST(etalon, airy_extremes) {
  EtalonSpec e;
  e.peak_transmission = 0.95;
  const double fsr = e.fsr();
  EXPECT_NEAR(etalon_transmission(e, 23000 * fsr), 0.95, 1e-9);
  EXPECT_NEAR(etalon_transmission(e, 23000.5 * fsr), 0.95 / (1.0 + e.coefficient_of_finesse()), 1e-9);
  EXPECT_THROW(etalon_transmission(e, 0.0), InvalidArgument);
}

TEST(etalon, temperature_walks_the_comb) {
  EtalonSpec e;
  const double nu = 3.35e14;
  const double drift = order_drift_per_degree(e, nu);
  ASSERT_GT(drift, 0.0);
  const double t0 = etalon_transmission(e, nu);
  EtalonSpec hotter = e;
  hotter.temperature += 1.0 / drift;   // one full order later
  EXPECT_NEAR(etalon_transmission(hotter, nu), t0, 2e-3);
  hotter.temperature = e.temperature + 0.5 / drift;
  EXPECT_GT(std::abs(etalon_transmission(hotter, nu) - t0), 0.01);
}

TEST(chain, transmission_is_the_product) {
  FilterChain chain;
  chain.elements.emplace_back(StaticLoss{0.9, "window"});
  EtalonSpec e;
  chain.elements.emplace_back(e);
  const double nu = 3.35e14;
  EXPECT_NEAR(chain_transmission(chain, nu), 0.9 * etalon_transmission(e, nu), 1e-15);
  EXPECT_EQ(chain.etalon_indices(), std::vector<std::size_t>{1});
  EXPECT_THROW(chain_transmission(FilterChain{}, nu), InvalidArgument);
}

TEST(tuning, reference_chain_meets_targets) {
  const auto cfg = default_config();
  const double nu = cfg.laser.frequency();
  const double split = cfg.eom.drive_frequency;
  const auto tuned = tune_temperatures(cfg.filter_chain, nu - split, {nu, nu + split}, 40.0);
  EXPECT_TRUE(tuned.report.feasible);
  EXPECT_GE(tuned.report.transmission, 0.85);
  ASSERT_EQ(tuned.report.extinctions.size(), 2u);
  for (const auto& x : tuned.report.extinctions) EXPECT_GE(x.extinction_db, 40.0);
  // Re-evaluating the returned chain reproduces the report.
  EXPECT_NEAR(chain_transmission(tuned.chain, nu - split), tuned.report.transmission, 1e-12);
  ASSERT_EQ(tuned.report.sensitivities.size(), 3u);
  EXPECT_GE(tuned.report.transmission_change_bound(0.005), 0.0);
}

TEST(tuning, deterministic) {
  const auto cfg = default_config();
  const double nu = cfg.laser.frequency();
  const auto a = tune_temperatures(cfg.filter_chain, nu - 9.2e9, {nu}, 30.0);
  const auto b = tune_temperatures(cfg.filter_chain, nu - 9.2e9, {nu}, 30.0);
  EXPECT_EQ(a.report.transmission, b.report.transmission);
}

TEST(tuning, infeasible_target_names_binding_frequency) {
  FilterChain chain;
  chain.elements.emplace_back(default_etalon(3e-3, 25.0));
  const double nu = 3.35e14;
  const auto tuned = tune_temperatures(chain, nu - 9.2e9, {nu, nu + 9.2e9}, 60.0);
  EXPECT_FALSE(tuned.report.feasible);
  EXPECT_LT(tuned.report.worst_extinction_db, 60.0);
  EXPECT_TRUE(tuned.report.binding_reject_frequency == nu ||
              tuned.report.binding_reject_frequency == nu + 9.2e9);
}

TEST(tuning, rejects_chain_without_etalons) {
  FilterChain chain;
  chain.elements.emplace_back(StaticLoss{0.9, "window"});
  EXPECT_THROW(tune_temperatures(chain, 3.35e14, {}, 40.0), InvalidArgument);
}

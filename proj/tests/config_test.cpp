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

#include "twinbeam/config.hpp"

#include <gtest/gtest.h>

#include <string>

using namespace twinbeam;

namespace {

const std::string config_dir = TWINBEAM_CONFIG_DIR;

ordered_json default_document() { return to_json(default_config()); }

std::string error_path(const ordered_json& doc) {
  try {
    config_from_json(doc);
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "<accepted>";
}

}  // namespace

TEST(config, reference_file_matches_defaults) {
  const auto cfg = load_config_file(config_dir + "/paper.cfg");
  EXPECT_EQ(config_hash(cfg), config_hash(default_config()));
  EXPECT_EQ(cfg.seed, default_config().seed);
  EXPECT_EQ(cfg.filter_chain.etalon_indices().size(), 3u);
}

TEST(config, dump_and_load_round_trip) {
  const auto cfg = default_config();
  const auto again = load_config(dump_config(cfg));
  EXPECT_EQ(dump_config(again), dump_config(cfg));
}

TEST(config, minimal_document_fills_defaults) {
  const auto cfg = load_config(R"({"schema_version": 1, "laser": {"power_w": 0.9, "wavelength_m": 8.95e-7},
                                   "fwm": {"g_max": 13.7}})");
  EXPECT_EQ(config_hash(cfg), config_hash(default_config()));
}

TEST(config, hash_ignores_seed_but_not_physics) {
  auto cfg = default_config();
  const auto base = config_hash(cfg);
  EXPECT_EQ(base.size(), 64u);
  cfg.seed = 99;
  EXPECT_EQ(config_hash(cfg), base);
  cfg.fwm.params.g_max = 13.8;
  EXPECT_NE(config_hash(cfg), base);
}

TEST(config, out_of_range_transmission_names_the_key) {
  EXPECT_THROW(load_config_file(config_dir + "/bad_transmission.cfg"), ConfigError);
  auto doc = default_document();
  doc["losses"]["polarizer_transmission"] = 1.2;
  EXPECT_EQ(error_path(doc), "losses.polarizer_transmission");
  doc = default_document();
  doc["filter_chain"][1]["peak_transmission"] = 1.5;
  EXPECT_EQ(error_path(doc), "filter_chain[1].peak_transmission");
}

TEST(config, unknown_keys_are_rejected) {
  auto doc = default_document();
  doc["fwm"]["gain_max"] = 10.0;
  EXPECT_EQ(error_path(doc), "fwm.gain_max");
  doc = default_document();
  doc["extra"] = 1;
  EXPECT_EQ(error_path(doc), "extra");
}

TEST(config, required_keys) {
  auto doc = default_document();
  doc["fwm"].erase("g_max");
  EXPECT_EQ(error_path(doc), "fwm.g_max");
  doc = default_document();
  doc.erase("schema_version");
  EXPECT_EQ(error_path(doc), "schema_version");
}

TEST(config, schema_version_must_match) {
  auto doc = default_document();
  doc["schema_version"] = 2;
  EXPECT_EQ(error_path(doc), "schema_version");
}

TEST(config, type_errors) {
  auto doc = default_document();
  doc["laser"]["power_w"] = "lots";
  EXPECT_EQ(error_path(doc), "laser.power_w");
  doc = default_document();
  doc["detection"]["sa_spectrum"]["detector_mode"] = "peak";
  EXPECT_EQ(error_path(doc), "detection.sa_spectrum.detector_mode");
  doc = default_document();
  doc["filter_chain"][0]["type"] = "prism";
  EXPECT_EQ(error_path(doc), "filter_chain[0].type");
}

TEST(config, malformed_text_and_missing_file) {
  EXPECT_THROW(load_config("{not json"), ConfigError);
  EXPECT_THROW(load_config_file(config_dir + "/does_not_exist.cfg"), IoError);
}

TEST(config, electronic_noise_may_be_disabled) {
  auto doc = default_document();
  doc["detection"]["bpd"]["electronic_noise"] = nullptr;
  const auto cfg = config_from_json(doc);
  EXPECT_FALSE(cfg.detection.bpd.electronic_noise.has_value());
  EXPECT_EQ(to_json(cfg)["detection"]["bpd"]["electronic_noise"], nullptr);
}

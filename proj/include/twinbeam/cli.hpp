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

// Command-line front end. All physics comes from the config file; the only
// numeric flags are explicit overrides (seed, design targets).

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "twinbeam/config.hpp"
#include "twinbeam/error.hpp"
#include "twinbeam/etalon_tuning.hpp"
#include "twinbeam/experiment.hpp"

namespace twinbeam::cli {

enum ExitCode : int { ok = 0, validation_error = 1, infeasible = 2, io_error = 3 };

struct Command {
  std::string subcommand;
  std::string config_path;
  std::string output_dir;
  std::optional<std::uint64_t> seed;
  bool verbose = false;
  double min_extinction_db = 40.0;
  double min_transmission = 0.85;
};

inline ordered_json tuning_report_json(const TuningReport& report) {
  ordered_json j;
  j["feasible"] = report.feasible;
  j["pass_frequency_hz"] = report.pass_frequency;
  j["transmission"] = report.transmission;
  j["min_extinction_db"] = report.min_extinction_db;
  j["worst_extinction_db"] = report.worst_extinction_db;
  j["binding_reject_frequency_hz"] = report.binding_reject_frequency;
  ordered_json ext = ordered_json::array();
  for (const auto& e : report.extinctions) {
    ext.push_back(ordered_json{{"frequency_hz", e.frequency}, {"extinction_db", e.extinction_db}});
  }
  j["extinctions"] = ext;
  ordered_json sens = ordered_json::array();
  for (const auto& s : report.sensitivities) {
    sens.push_back(ordered_json{{"element_index", s.element_index},
                                {"temperature_c", s.temperature},
                                {"slope_per_c", s.slope},
                                {"max_slope_in_window_per_c", s.max_slope_in_window}});
  }
  j["sensitivities"] = sens;
  j["stability_window_c"] = report.stability_window;
  j["transmission_change_bound"] = report.transmission_change_bound(report.stability_window);
  return j;
}

namespace detail {

inline void print_scalars(const ScenarioResult& result, std::ostream& out) {
  for (const auto& [key, value] : result.scalars) {
    out << "  " << key << " = " << format_double(value) << "\n";
  }
}

inline int run_scenario(const Command& cmd, const ExperimentConfig& cfg, std::ostream& out) {
  ScenarioResult result;
  if (cmd.subcommand == "simulate-spectrum") {
    result = run_spectrum_scenario(cfg);
  } else if (cmd.subcommand == "simulate-audio") {
    result = run_audio_scenario(cfg);
  } else if (cmd.subcommand == "sweep-angle") {
    result = run_angle_sweep(cfg);
  } else {
    result = run_snl_scenario(cfg);
  }
  const Manifest manifest = export_result(result, cmd.output_dir);
  out << result.provenance.scenario << ": wrote " << manifest.files.size() << " files to "
      << manifest.directory.string() << "\n";
  if (cmd.verbose) {
    for (const auto& f : manifest.files) out << "  " << f.name << " " << f.sha256 << "\n";
    print_scalars(result, out);
  }
  return ok;
}

inline int run_design(const Command& cmd, const ExperimentConfig& cfg, std::ostream& out,
                      std::ostream& err) {
  const double carrier = cfg.laser.frequency();
  const double split = cfg.eom.drive_frequency;
  const TuningResult tuned =
      tune_temperatures(cfg.filter_chain, carrier - split, {carrier, carrier + split}, cmd.min_extinction_db);
  const bool meets_transmission = tuned.report.transmission >= cmd.min_transmission;
  const bool feasible = tuned.report.feasible && meets_transmission;

  ordered_json doc;
  doc["config_hash"] = config_hash(cfg);
  doc["seed"] = cfg.seed;
  doc["min_transmission"] = cmd.min_transmission;
  doc["feasible"] = feasible;
  doc["report"] = tuning_report_json(tuned.report);
  doc["filter_chain"] = to_json(tuned.chain);

  std::error_code ec;
  std::filesystem::create_directories(cmd.output_dir, ec);
  if (ec) throw IoError("cannot create directory '" + cmd.output_dir + "': " + ec.message());
  const auto entry = twinbeam::detail::write_file(cmd.output_dir, "etalon_design.json", doc.dump(2) + "\n");

  out << "design-etalons: transmission " << format_double(tuned.report.transmission)
      << ", worst extinction " << format_double(tuned.report.worst_extinction_db) << " dB\n";
  for (const auto& e : tuned.chain.etalon_indices()) {
    out << "  element " << e << ": " << format_double(std::get<EtalonSpec>(tuned.chain.elements[e]).temperature)
        << " C\n";
  }
  if (cmd.verbose) out << "  " << entry.name << " " << entry.sha256 << "\n";
  if (!feasible) {
    err << "infeasible: ";
    if (!tuned.report.feasible) {
      err << "extinction " << format_double(tuned.report.worst_extinction_db) << " dB < "
          << format_double(cmd.min_extinction_db) << " dB at "
          << format_double(tuned.report.binding_reject_frequency) << " Hz";
    } else {
      err << "transmission " << format_double(tuned.report.transmission) << " < "
          << format_double(cmd.min_transmission);
    }
    err << "\n";
    return infeasible;
  }
  return ok;
}

inline int dispatch(const Command& cmd, std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg = load_config_file(cmd.config_path);
  if (cmd.seed) cfg.seed = *cmd.seed;
  err << "config_hash " << config_hash(cfg) << "\nseed " << cfg.seed << "\n";
  if (cmd.subcommand == "validate-config") {
    out << "config OK (schema version " << cfg.schema_version << ")\n";
    return ok;
  }
  if (cmd.subcommand == "design-etalons") return run_design(cmd, cfg, out, err);
  return run_scenario(cmd, cfg, out);
}

}  // namespace detail

/// Parses argv and runs exactly one subcommand. Returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"Twin-beam squeezed light simulator", "twinbeam"};
  app.require_subcommand(1, 1);
  const std::string schema_note =
      "Expects a JSON config with schema_version " + std::to_string(config_schema_version) + ".";
  app.footer(schema_note);

  Command cmd;
  std::uint64_t seed = 0;
  struct Spec {
    const char* name;
    const char* description;
  };
  const std::vector<Spec> specs = {
      {"simulate-spectrum", "Probe, conjugate, difference and SNL spectra over the MHz band"},
      {"simulate-audio", "Difference and SNL spectra over the audio band"},
      {"sweep-angle", "Gain and squeezing versus pump/probe crossing angle"},
      {"design-etalons", "Tune etalon temperatures for the probe-seed filter chain"},
      {"snl-calibrate", "Shot-noise-limit calibration at the twin-beam output power"},
      {"validate-config", "Load and validate a config file"},
  };
  for (const auto& spec : specs) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.description);
    sub->footer(schema_note);
    sub->add_option("--config", cmd.config_path, "Path to the JSON config")->required();
    const std::string name = spec.name;
    if (name != "validate-config") {
      sub->add_option("--out", cmd.output_dir, "Output directory")->required();
    }
    sub->add_option("--seed", seed, "Override the config seed");
    sub->add_flag("--verbose", cmd.verbose, "Print digests and scalar results");
    if (name == "design-etalons") {
      sub->add_option("--min-extinction-db", cmd.min_extinction_db,
                      "Design target: extinction at carrier and +1 sideband (default 40)")
          ->check(CLI::PositiveNumber);
      sub->add_option("--min-transmission", cmd.min_transmission,
                      "Design target: transmission at the -1 sideband (default 0.85)")
          ->check(CLI::Range(0.0, 1.0));
    }
    sub->callback([&cmd, sub] { cmd.subcommand = sub->get_name(); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : validation_error;
  }
  for (const auto* sub : app.get_subcommands()) {
    if (sub->count("--seed") > 0) cmd.seed = seed;
  }

  try {
    return detail::dispatch(cmd, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return validation_error;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return io_error;
  } catch (const NoSolution& e) {
    err << "no solution: " << e.what() << "\n";
    return infeasible;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return validation_error;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return validation_error;
  }
}

}  // namespace twinbeam::cli

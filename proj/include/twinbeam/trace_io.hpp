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

// Stable text forms of NoiseTrace: CSV (header + fixed column order) and a JSON
// record with metadata. Numbers use the shortest round-trip representation,
// so persisted values re-parse to the identical double.

#include <nlohmann/json.hpp>

#include <charconv>
#include <sstream>
#include <string>
#include <system_error>

#include "twinbeam/detection.hpp"
#include "twinbeam/error.hpp"

namespace twinbeam {

using ordered_json = nlohmann::ordered_json;

inline std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view text) {
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw InvalidArgument("parse_double: not a number: '" + std::string(text) + "'");
  }
  return value;
}

inline constexpr const char* trace_csv_header = "frequency_hz,value_db_rel_snl";

inline std::string trace_to_csv(const NoiseTrace& trace) {
  trace.validate();
  std::string out = std::string(trace_csv_header) + "\n";
  for (std::size_t k = 0; k < trace.values.size(); ++k) {
    out += format_double(trace.frequencies[k]);
    out += ',';
    out += format_double(trace.values[k]);
    out += '\n';
  }
  return out;
}

/// Parses the CSV written by trace_to_csv. Label and metadata are not part of
/// the CSV and must be supplied by the caller.
inline NoiseTrace trace_from_csv(const std::string& text, TraceLabel label = TraceLabel::difference) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != trace_csv_header) {
    throw InvalidArgument("trace_from_csv: missing header '" + std::string(trace_csv_header) + "'");
  }
  NoiseTrace trace;
  trace.label = label;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw InvalidArgument("trace_from_csv: malformed row: " + line);
    trace.frequencies.push_back(parse_double(std::string_view(line).substr(0, comma)));
    trace.values.push_back(parse_double(std::string_view(line).substr(comma + 1)));
  }
  trace.validate();
  return trace;
}

inline TraceLabel trace_label_from_string(const std::string& s) {
  for (auto label : {TraceLabel::probe, TraceLabel::conjugate, TraceLabel::difference, TraceLabel::snl}) {
    if (to_string(label) == s) return label;
  }
  throw InvalidArgument("unknown trace label '" + s + "'");
}

inline ordered_json trace_metadata_json(const NoiseTrace& trace) {
  ordered_json j;
  j["label"] = to_string(trace.label);
  j["scenario"] = trace.metadata.scenario;
  j["seed"] = trace.metadata.seed;
  j["config_hash"] = trace.metadata.config_hash;
  j["n_points"] = trace.values.size();
  return j;
}

inline ordered_json trace_to_json(const NoiseTrace& trace) {
  trace.validate();
  ordered_json j = trace_metadata_json(trace);
  j["frequency_hz"] = trace.frequencies;
  j["value_db_rel_snl"] = trace.values;
  return j;
}

inline NoiseTrace trace_from_json(const ordered_json& j) {
  NoiseTrace trace;
  trace.label = trace_label_from_string(j.at("label").get<std::string>());
  trace.metadata.scenario = j.at("scenario").get<std::string>();
  trace.metadata.seed = j.at("seed").get<std::uint64_t>();
  trace.metadata.config_hash = j.at("config_hash").get<std::string>();
  trace.frequencies = j.at("frequency_hz").get<std::vector<double>>();
  trace.values = j.at("value_db_rel_snl").get<std::vector<double>>();
  trace.validate();
  return trace;
}

}  // namespace twinbeam

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

#include <stdexcept>
#include <string>

namespace twinbeam {

/// Bad argument to a library operation (out-of-range index, negative
/// squeezing parameter, transmittance outside [0, 1], ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A noise ratio was requested whose denominator (total mean photon number or
/// detected power) is zero.
class UndefinedRatio : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A root-finding problem has no solution in its admissible bracket.
class NoSolution : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Schema or physical-range violation in a configuration document. `path()`
/// names the offending key in dotted form, e.g. `losses.polarizer_transmission`.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& what)
      : std::runtime_error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// Filesystem failure; the message carries the path involved.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace twinbeam

// Copyright 2026 The mstdvp authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mstdvp/common.hpp"
#include "mstdvp/hubbard.hpp"

namespace mstdvp::cli {

/// Config problem with the offending line when known.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& message, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " +
                                          message
                                    : message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

enum class RunMode { Exact, Gaussified, Tdvp, Compare, VerifyTheorem1 };
enum class OutputFormat { Csv, JsonLines };

std::string to_string(RunMode mode);
std::string to_string(OutputFormat format);
RunMode parse_mode(const std::string& name);  // throws ConfigError

struct ExperimentConfig {
  // [model]
  enum class ModelKind { Hubbard, SpecFile };
  ModelKind model = ModelKind::Hubbard;
  hubbard::HubbardParams hubbard;
  std::string spec_path;

  // [run]
  bool has_mode = false;
  RunMode mode = RunMode::Exact;
  double t_final = 20.0;
  double dt = 1e-3;
  double sample_interval = 0.05;
  std::vector<double> alphas = {0.5};
  std::uint64_t seed = 0;
  NormKind norm = NormKind::Frobenius;
  int n_modes = 3;   // verify-theorem1 system size
  int n_cases = 50;  // verify-theorem1 case count

  // [output]
  std::string out_dir = "out";
  OutputFormat format = OutputFormat::Csv;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Sectioned key=value text ('#' comments).  Unknown keys, duplicate keys,
/// and type mismatches are errors with line numbers.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string serialize_config(const ExperimentConfig& config);

}  // namespace mstdvp::cli

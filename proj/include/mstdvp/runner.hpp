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

#include <iosfwd>
#include <string>
#include <vector>

#include "mstdvp/config.hpp"
#include "mstdvp/majorana.hpp"

namespace mstdvp::cli {

struct RunSummary {
  std::vector<std::string> outputs;  // paths relative to the output directory
  double wall_seconds = 0.0;
  double max_rel_dev = 0.0;  // verify-theorem1 only
};

/// Resolved model: generator plus the lattice metadata the observables need.
struct Model {
  LindbladSpec spec;
  int modes = 0;
  int sites = 0;
  bool periodic = true;
};

Model resolve_model(const ExperimentConfig& config);
/// Majorana-polynomial generator from a JSON file (see README for schema).
Model load_spec_file(const std::string& path);

/// Executes the configured run and writes trajectory files plus a manifest
/// into the output directory.  Throws ConfigError for bad input and
/// NumericalError when a computation aborts or a verification fails.
RunSummary run(const ExperimentConfig& config, std::ostream& log);

}  // namespace mstdvp::cli

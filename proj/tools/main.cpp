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

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mstdvp/config.hpp"
#include "mstdvp/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

std::vector<double> parse_alpha_flag(const std::string& list) {
  std::vector<double> out;
  std::stringstream ss(list);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    const double alpha = std::stod(piece);
    if (alpha < 0.0 || alpha > 1.0)
      throw mstdvp::cli::ConfigError("--alpha: value outside [0, 1]");
    out.push_back(alpha);
  }
  if (out.empty()) throw mstdvp::cli::ConfigError("--alpha: empty list");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "mstdvp: exact, Gaussified, and variational Lindblad evolution"};
  app.require_subcommand(0, 1);

  std::string config_path, out_dir, alpha_list;
  std::optional<std::uint64_t> seed;
  std::optional<double> dt, t_final;
  app.add_option("--config", config_path, "experiment config file");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed, "random seed override");
  app.add_option("--alpha", alpha_list,
                 "comma-separated metric exponents in [0, 1]");
  app.add_option("--dt", dt, "integrator step override");
  app.add_option("--t-final", t_final, "final time override");

  const std::vector<std::string> modes = {"exact", "gaussified", "tdvp",
                                          "compare", "verify-theorem1"};
  for (const auto& name : modes) app.add_subcommand(name)->silent();

  CLI11_PARSE(app, argc, argv);

  try {
    mstdvp::cli::ExperimentConfig cfg;
    if (!config_path.empty()) cfg = mstdvp::cli::load_config(config_path);
    for (const auto& name : modes) {
      if (app.got_subcommand(name)) {
        cfg.mode = mstdvp::cli::parse_mode(name);
        cfg.has_mode = true;
      }
    }
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (seed) cfg.seed = *seed;
    if (!alpha_list.empty()) cfg.alphas = parse_alpha_flag(alpha_list);
    if (dt) {
      if (!(*dt > 0.0)) throw mstdvp::cli::ConfigError("--dt must be > 0");
      cfg.dt = *dt;
      cfg.sample_interval = std::max(cfg.sample_interval, cfg.dt);
    }
    if (t_final) {
      if (!(*t_final > 0.0))
        throw mstdvp::cli::ConfigError("--t-final must be > 0");
      cfg.t_final = *t_final;
    }

    const mstdvp::cli::RunSummary summary = mstdvp::cli::run(cfg, std::cout);
    std::cout << "done in " << summary.wall_seconds << " s; outputs in "
              << cfg.out_dir << "\n";
    return kExitOk;
  } catch (const mstdvp::cli::ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return kExitConfig;
  } catch (const mstdvp::InvariantError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitNumerical;
  } catch (const mstdvp::NumericalError& err) {
    std::cerr << "numerical abort: " << err.what() << "\n";
    return kExitNumerical;
  }
}

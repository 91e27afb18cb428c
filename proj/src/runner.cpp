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

#include "mstdvp/runner.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "mstdvp/fock.hpp"
#include "mstdvp/gaussian.hpp"
#include "mstdvp/gaussified.hpp"
#include "mstdvp/hubbard.hpp"
#include "mstdvp/random.hpp"
#include "mstdvp/tdvp.hpp"

#ifndef MSTDVP_VERSION
#define MSTDVP_VERSION "0.0.0"
#endif

namespace mstdvp::cli {

namespace {

using nlohmann::json;

std::string format_g17(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

struct Row {
  double t = 0.0;
  double n_up = 0.0, n_down = 0.0;
  double purity = 0.0;
  double c1 = 0.0, ms = 0.0;
  std::optional<double> d_gamma, d_rho;
};

class TrajectoryWriter {
 public:
  TrajectoryWriter(const std::filesystem::path& path, OutputFormat format,
                   bool compare_columns)
      : out_(path), format_(format), compare_(compare_columns) {
    if (!out_) throw ConfigError("cannot open output file " + path.string());
    if (format_ == OutputFormat::Csv) {
      out_ << "t,n_up,n_down,purity,C1,m_s";
      if (compare_) out_ << ",dGamma,dRho";
      out_ << "\n";
    }
  }

  void write(const Row& row) {
    if (format_ == OutputFormat::Csv) {
      out_ << format_g17(row.t) << ',' << format_g17(row.n_up) << ','
           << format_g17(row.n_down) << ',' << format_g17(row.purity) << ','
           << format_g17(row.c1) << ',' << format_g17(row.ms);
      if (compare_)
        out_ << ',' << format_g17(row.d_gamma.value_or(0.0)) << ','
             << format_g17(row.d_rho.value_or(0.0));
      out_ << "\n";
    } else {
      json obj = {{"t", row.t},       {"n_up", row.n_up},
                  {"n_down", row.n_down}, {"purity", row.purity},
                  {"C1", row.c1},     {"m_s", row.ms}};
      if (compare_) {
        obj["dGamma"] = row.d_gamma.value_or(0.0);
        obj["dRho"] = row.d_rho.value_or(0.0);
      }
      out_ << obj.dump() << "\n";
    }
  }

 private:
  std::ofstream out_;
  OutputFormat format_;
  bool compare_;
};

std::string file_name(RunMode mode, OutputFormat format,
                      const std::string& suffix = "") {
  return to_string(mode) + suffix +
         (format == OutputFormat::Csv ? ".csv" : ".jsonl");
}

PolynomialOperator polynomial_from_json(const json& terms,
                                        const std::string& what) {
  PolynomialOperator p;
  for (const auto& term : terms) {
    if (!term.contains("coeff") || !term.contains("indices"))
      throw ConfigError("spec file: " + what +
                        " term needs 'coeff' and 'indices'");
    const auto& coeff = term["coeff"];
    if (!coeff.is_array() || coeff.size() != 2)
      throw ConfigError("spec file: " + what + " coeff must be [re, im]");
    std::vector<int> indices;
    for (const auto& idx : term["indices"])
      indices.push_back(idx.get<int>());
    p += PolynomialOperator::monomial(
        cxd(coeff[0].get<double>(), coeff[1].get<double>()),
        std::move(indices));
  }
  return p;
}

Row make_row(double t, const hubbard::Occupations& occ,
             const hubbard::SpinOrder& order, double purity) {
  Row row;
  row.t = t;
  row.n_up = occ.n_up;
  row.n_down = occ.n_down;
  row.purity = purity;
  row.c1 = order.nn_correlator;
  row.ms = order.staggered_magnetization;
  return row;
}

json config_json(const ExperimentConfig& cfg) {
  json model = {{"type", cfg.model == ExperimentConfig::ModelKind::Hubbard
                             ? "hubbard"
                             : "file"}};
  if (cfg.model == ExperimentConfig::ModelKind::Hubbard) {
    model["L"] = cfg.hubbard.sites;
    model["J"] = cfg.hubbard.hopping;
    model["u"] = cfg.hubbard.interaction;
    model["mu"] = cfg.hubbard.chemical_potential;
    model["kappa"] = cfg.hubbard.decoherence;
    model["periodic"] = cfg.hubbard.periodic;
  } else {
    model["path"] = cfg.spec_path;
  }
  return {{"model", model},
          {"run",
           {{"mode", to_string(cfg.mode)},
            {"t_final", cfg.t_final},
            {"dt", cfg.dt},
            {"sample_interval", cfg.sample_interval},
            {"alpha", cfg.alphas},
            {"seed", cfg.seed},
            {"norm", cfg.norm == NormKind::Frobenius ? "frobenius"
                                                     : "spectral"},
            {"n_modes", cfg.n_modes},
            {"n_cases", cfg.n_cases}}},
          {"output",
           {{"directory", cfg.out_dir},
            {"format", to_string(cfg.format)}}}};
}

}  // namespace

Model load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open spec file '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& err) {
    throw ConfigError("spec file '" + path + "': " + err.what());
  }
  if (!doc.contains("modes"))
    throw ConfigError("spec file: missing 'modes'");
  Model model;
  model.modes = doc["modes"].get<int>();
  if (model.modes < 1) throw ConfigError("spec file: modes must be >= 1");
  if (doc.contains("sites")) {
    model.sites = doc["sites"].get<int>();
  } else {
    if (model.modes % 2 != 0)
      throw ConfigError(
          "spec file: odd mode count needs an explicit 'sites' entry");
    model.sites = model.modes / 2;
  }
  if (doc.contains("hamiltonian"))
    model.spec.hamiltonian =
        polynomial_from_json(doc["hamiltonian"], "hamiltonian");
  if (doc.contains("jumps")) {
    for (const auto& jump : doc["jumps"]) {
      if (!jump.contains("rate") || !jump.contains("terms"))
        throw ConfigError("spec file: jump needs 'rate' and 'terms'");
      model.spec.jumps.push_back(
          {polynomial_from_json(jump["terms"], "jump"),
           jump["rate"].get<double>()});
    }
  }
  try {
    model.spec.validate();
  } catch (const InvariantError& err) {
    throw ConfigError(std::string("spec file: ") + err.what());
  }
  if (model.spec.min_modes() > model.modes)
    throw ConfigError("spec file: terms reference modes beyond 'modes'");
  return model;
}

Model resolve_model(const ExperimentConfig& cfg) {
  if (cfg.model == ExperimentConfig::ModelKind::Hubbard) {
    Model model;
    model.spec = hubbard::build_hubbard(cfg.hubbard);
    model.modes = hubbard::mode_count(cfg.hubbard);
    model.sites = cfg.hubbard.sites;
    model.periodic = cfg.hubbard.periodic;
    return model;
  }
  return load_spec_file(cfg.spec_path);
}

namespace {

struct RunContext {
  const ExperimentConfig& cfg;
  Model model;
  std::filesystem::path out_dir;
  json summary;
  std::vector<std::string> outputs;
};

Eigen::MatrixXcd initial_ground_state(const RunContext& ctx) {
  const fock::DenseGenerator gen = fock::realize(ctx.model.spec,
                                                 ctx.model.modes);
  const Eigen::MatrixXcd h_dense = Eigen::MatrixXcd(gen.hamiltonian);
  return fock::ground_state(h_dense);
}

void run_exact(RunContext& ctx, std::ostream& log) {
  const fock::DenseGenerator gen =
      fock::realize(ctx.model.spec, ctx.model.modes);
  const Eigen::MatrixXcd rho0 = initial_ground_state(ctx);

  const std::string name = file_name(RunMode::Exact, ctx.cfg.format);
  TrajectoryWriter writer(ctx.out_dir / name, ctx.cfg.format, false);
  double final_purity = 0.0;
  fock::integrate_exact_observe(
      gen, rho0, ctx.cfg.t_final, ctx.cfg.dt, ctx.cfg.sample_interval,
      [&](double t, const Eigen::MatrixXcd& rho) {
        const double purity = rho.squaredNorm();
        writer.write(make_row(t, hubbard::occupations(rho, ctx.model.sites),
                              hubbard::spin_order(rho, ctx.model.sites,
                                                  ctx.model.periodic),
                              purity));
        final_purity = purity;
      });
  ctx.outputs.push_back(name);
  ctx.summary["final_purity"] = final_purity;
  log << "exact evolution written to " << name << "\n";
}

void run_gaussified(RunContext& ctx, std::ostream& log) {
  const Eigen::MatrixXcd rho0 = initial_ground_state(ctx);
  const Eigen::MatrixXd gamma0 = gaussian::gaussify(rho0);
  const gaussified::CmTrajectory traj = gaussified::integrate_gaussified(
      gamma0, ctx.model.spec, ctx.cfg.t_final, ctx.cfg.dt,
      ctx.cfg.sample_interval);

  const std::string name = file_name(RunMode::Gaussified, ctx.cfg.format);
  TrajectoryWriter writer(ctx.out_dir / name, ctx.cfg.format, false);
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const Eigen::MatrixXd& gamma = traj.gammas[i];
    writer.write(make_row(traj.times[i],
                          hubbard::occupations(gamma, ctx.model.sites),
                          hubbard::spin_order(gamma, ctx.model.sites,
                                              ctx.model.periodic),
                          gaussian::purity_from_cm(gamma)));
  }
  ctx.outputs.push_back(name);
  ctx.summary["clip_events"] = traj.clip_events;
  ctx.summary["final_purity"] = gaussian::purity_from_cm(traj.gammas.back());
  log << "gaussified evolution written to " << name << "\n";
}

void run_tdvp(RunContext& ctx, std::ostream& log) {
  const fock::DenseGenerator gen =
      fock::realize(ctx.model.spec, ctx.model.modes);
  const Eigen::MatrixXcd rho0 = initial_ground_state(ctx);
  const Eigen::MatrixXd gamma0 = gaussian::gaussify(rho0);
  // The Pfaffian-minor tangent scan is exponential in the mode count; past
  // six modes central differences are cheaper at these dimensions.
  const auto method = ctx.model.modes <= 6
                          ? tdvp::GaussianChart::TangentMethod::Analytic
                          : tdvp::GaussianChart::TangentMethod::FiniteDifference;
  const tdvp::GaussianChart chart(ctx.model.modes, method);
  const Eigen::VectorXd x0 = tdvp::GaussianChart::pack(gamma0);

  for (std::size_t a = 0; a < ctx.cfg.alphas.size(); ++a) {
    const double alpha = ctx.cfg.alphas[a];
    const tdvp::ParamTrajectory traj = tdvp::integrate_tdvp(
        chart, x0, metrics::AlphaMetric::single(alpha), gen, ctx.cfg.t_final,
        ctx.cfg.dt, ctx.cfg.sample_interval);

    std::string suffix;
    if (ctx.cfg.alphas.size() > 1) suffix = "_a" + format_g17(alpha);
    const std::string name = file_name(RunMode::Tdvp, ctx.cfg.format, suffix);
    TrajectoryWriter writer(ctx.out_dir / name, ctx.cfg.format, false);
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
      const Eigen::MatrixXcd rho = chart.state(traj.params[i]);
      writer.write(make_row(traj.times[i],
                            hubbard::occupations(rho, ctx.model.sites),
                            hubbard::spin_order(rho, ctx.model.sites,
                                                ctx.model.periodic),
                            rho.squaredNorm()));
    }
    ctx.outputs.push_back(name);
    log << "tdvp (alpha = " << alpha << ") written to " << name << "\n";
  }
}

void run_compare(RunContext& ctx, std::ostream& log) {
  const fock::DenseGenerator gen =
      fock::realize(ctx.model.spec, ctx.model.modes);
  const Eigen::MatrixXcd rho0 = initial_ground_state(ctx);
  const Eigen::MatrixXd gamma0 = gaussian::gaussify(rho0);

  const gaussified::CmTrajectory cm = gaussified::integrate_gaussified(
      gamma0, ctx.model.spec, ctx.cfg.t_final, ctx.cfg.dt,
      ctx.cfg.sample_interval);

  const std::string name = file_name(RunMode::Compare, ctx.cfg.format);
  TrajectoryWriter writer(ctx.out_dir / name, ctx.cfg.format, true);
  std::size_t index = 0;
  double final_purity = 0.0, final_dgamma = 0.0, final_drho = 0.0;
  fock::integrate_exact_observe(
      gen, rho0, ctx.cfg.t_final, ctx.cfg.dt, ctx.cfg.sample_interval,
      [&](double t, const Eigen::MatrixXcd& rho) {
        if (index >= cm.times.size() ||
            std::abs(cm.times[index] - t) > 1e-9)
          throw NumericalError("compare: sample grids diverged");
        const Eigen::MatrixXd gamma_exact = gaussian::gaussify(rho);
        const Eigen::MatrixXd& gamma_cm = cm.gammas[index];
        const double d_gamma =
            ctx.cfg.norm == NormKind::Frobenius
                ? (gamma_cm - gamma_exact).norm()
                : Eigen::JacobiSVD<Eigen::MatrixXd>(gamma_cm - gamma_exact)
                      .singularValues()(0);
        const Eigen::MatrixXcd rho_g =
            gaussian::dense_from_covariance(gamma_cm);
        const double d_rho = fock::hs_distance(rho_g, rho, ctx.cfg.norm);

        Row row = make_row(t, hubbard::occupations(rho, ctx.model.sites),
                           hubbard::spin_order(rho, ctx.model.sites,
                                               ctx.model.periodic),
                           rho.squaredNorm());
        row.d_gamma = d_gamma;
        row.d_rho = d_rho;
        writer.write(row);
        final_purity = row.purity;
        final_dgamma = d_gamma;
        final_drho = d_rho;
        ++index;
      });
  ctx.outputs.push_back(name);
  ctx.summary["final_purity"] = final_purity;
  ctx.summary["final_dGamma"] = final_dgamma;
  ctx.summary["final_dRho"] = final_drho;
  ctx.summary["clip_events"] = cm.clip_events;
  log << "comparison written to " << name << "\n";
}

double run_verify_theorem1(RunContext& ctx, std::ostream& log) {
  const int modes = ctx.cfg.n_modes;
  if (modes > fock::kMaxDenseModes)
    throw ConfigError("run.n_modes exceeds the dense cap");
  rnd::Rng rng(ctx.cfg.seed);

  std::vector<metrics::AlphaMetric> metric_set;
  std::vector<std::string> metric_names;
  for (double alpha : ctx.cfg.alphas) {
    metric_set.push_back(metrics::AlphaMetric::single(alpha));
    metric_names.push_back(format_g17(alpha));
  }
  if (ctx.cfg.alphas.size() >= 2) {
    metric_set.push_back(metrics::AlphaMetric::combination(
        {{0.5, ctx.cfg.alphas.front()}, {0.5, ctx.cfg.alphas.back()}}));
    metric_names.push_back("combo(" + format_g17(ctx.cfg.alphas.front()) +
                           "," + format_g17(ctx.cfg.alphas.back()) + ")");
  }

  const std::string name =
      std::string("theorem1") +
      (ctx.cfg.format == OutputFormat::Csv ? ".csv" : ".jsonl");
  std::ofstream out(ctx.out_dir / name);
  if (!out) throw ConfigError("cannot open output file " + name);
  if (ctx.cfg.format == OutputFormat::Csv)
    out << "case,metric,rel_dev\n";

  const tdvp::GaussianChart chart(modes);
  double max_rel_dev = 0.0;
  for (int c = 0; c < ctx.cfg.n_cases; ++c) {
    const Eigen::MatrixXd gamma = rnd::random_covariance(rng, modes, 0.9);
    const LindbladSpec spec = rnd::random_spec(rng, modes, 3, 2);
    const fock::DenseGenerator gen = fock::realize(spec, modes);
    const Eigen::MatrixXd reference =
        gaussified::CmGenerator(spec, modes).equation_of_motion(gamma);
    const double ref_scale =
        std::max(reference.cwiseAbs().maxCoeff(), 1e-12);
    const Eigen::VectorXd x = tdvp::GaussianChart::pack(gamma);

    for (std::size_t m = 0; m < metric_set.size(); ++m) {
      const tdvp::TdvpSolution sol =
          tdvp::tdvp_velocity(chart, x, metric_set[m], gen);
      const Eigen::MatrixXd pulled =
          tdvp::GaussianChart::unpack(sol.velocity, modes);
      const double rel_dev =
          (pulled - reference).cwiseAbs().maxCoeff() / ref_scale;
      max_rel_dev = std::max(max_rel_dev, rel_dev);
      if (ctx.cfg.format == OutputFormat::Csv) {
        out << c << ',' << metric_names[m] << ',' << format_g17(rel_dev)
            << "\n";
      } else {
        out << json({{"case", c},
                     {"metric", metric_names[m]},
                     {"rel_dev", rel_dev}})
                   .dump()
            << "\n";
      }
    }
  }
  ctx.outputs.push_back(name);
  ctx.summary["max_rel_dev"] = max_rel_dev;
  log << "theorem-1 verification: max relative velocity deviation = "
      << format_g17(max_rel_dev) << " over " << ctx.cfg.n_cases
      << " cases at N = " << modes << " (report: " << name << ")\n";
  return max_rel_dev;
}

}  // namespace

RunSummary run(const ExperimentConfig& cfg, std::ostream& log) {
  if (!cfg.has_mode)
    throw ConfigError(
        "no mode selected: set run.mode or use a CLI subcommand");
  const auto t_start = std::chrono::steady_clock::now();

  RunContext ctx{cfg, {}, std::filesystem::path(cfg.out_dir), json::object(),
                 {}};
  std::error_code ec;
  std::filesystem::create_directories(ctx.out_dir, ec);
  if (ec)
    throw ConfigError("cannot create output directory '" + cfg.out_dir +
                      "': " + ec.message());
  if (cfg.mode != RunMode::VerifyTheorem1) ctx.model = resolve_model(cfg);

  double max_rel_dev = 0.0;
  bool theorem1_failed = false;
  switch (cfg.mode) {
    case RunMode::Exact:
      run_exact(ctx, log);
      break;
    case RunMode::Gaussified:
      run_gaussified(ctx, log);
      break;
    case RunMode::Tdvp:
      run_tdvp(ctx, log);
      break;
    case RunMode::Compare:
      run_compare(ctx, log);
      break;
    case RunMode::VerifyTheorem1:
      max_rel_dev = run_verify_theorem1(ctx, log);
      theorem1_failed = !(max_rel_dev < 1e-6);
      break;
  }

  const auto t_end = std::chrono::steady_clock::now();
  const double wall =
      std::chrono::duration<double>(t_end - t_start).count();

  json manifest = {{"tool", "mstdvp"},
                   {"version", MSTDVP_VERSION},
                   {"mode", to_string(cfg.mode)},
                   {"seed", cfg.seed},
                   {"parameters", config_json(cfg)},
                   {"versions",
                    {{"mstdvp", MSTDVP_VERSION},
                     {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                   std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                   std::to_string(EIGEN_MINOR_VERSION)}}},
                   {"wall_time_seconds", wall},
                   {"outputs", ctx.outputs},
                   {"summary", ctx.summary}};
  std::ofstream mout(ctx.out_dir / "manifest.json");
  mout << manifest.dump(2) << "\n";

  if (theorem1_failed) {
    std::ostringstream msg;
    msg << "theorem-1 verification failed: max relative deviation "
        << max_rel_dev << " >= 1e-6";
    throw NumericalError(msg.str());
  }

  RunSummary summary;
  summary.outputs = ctx.outputs;
  summary.outputs.push_back("manifest.json");
  summary.wall_seconds = wall;
  summary.max_rel_dev = max_rel_dev;
  return summary;
}

}  // namespace mstdvp::cli

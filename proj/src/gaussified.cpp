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

#include "mstdvp/gaussified.hpp"

#include <array>
#include <cmath>
#include <iostream>
#include <sstream>

#include <Eigen/SVD>

#include "mstdvp/gaussian.hpp"

namespace mstdvp::gaussified {

cxd expectation(const PolynomialOperator& p, const Eigen::MatrixXd& gamma) {
  cxd acc(0.0, 0.0);
  for (const auto& mono : p.monomials())
    acc += mono.coeff * gaussian::wick_expectation(gamma, mono.indices);
  return acc;
}

CmGenerator::CmGenerator(const LindbladSpec& spec, int modes) : modes_(modes) {
  spec.validate();
  if (modes < 1) throw InvariantError("CmGenerator: modes must be >= 1");
  if (spec.min_modes() > modes)
    throw InvariantError("CmGenerator: spec references modes beyond count");
  if (spec.hamiltonian.degree() > 4)
    throw InvariantError(
        "CmGenerator: Hamiltonian degree exceeds 4 (degree overflow)");
  for (const auto& jump : spec.jumps)
    if (jump.op.degree() > 2)
      throw InvariantError(
          "CmGenerator: jump degree exceeds 2 (degree overflow)");

  struct JumpParts {
    PolynomialOperator op, dag, dag_op;
    double rate;
  };
  std::vector<JumpParts> jumps;
  for (const auto& jump : spec.jumps) {
    PolynomialOperator dag = jump.op.adjoint();
    jumps.push_back({jump.op, dag, dag * jump.op, jump.rate});
  }

  const int n = 2 * modes;
  const cxd minus_i(0.0, -1.0);
  pair_terms_.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (int k = 0; k < n; ++k) {
    for (int l = k + 1; l < n; ++l) {
      const PolynomialOperator pair = PolynomialOperator::monomial(1.0, {k, l});
      // Adjoint generator on c_k c_l: tr[c_k c_l L(rho)] = <P_kl>_Gamma.
      PolynomialOperator p =
          minus_i * (pair * spec.hamiltonian - spec.hamiltonian * pair);
      for (const auto& jump : jumps) {
        p += jump.rate * (jump.dag * pair * jump.op -
                          0.5 * (jump.dag_op * pair + pair * jump.dag_op));
      }

      std::vector<Term> terms;
      for (const auto& mono : p.monomials()) {
        if (mono.indices.size() % 2 != 0) continue;  // Wick of odd words is 0
        if (mono.indices.size() > 8)
          throw InvariantError("CmGenerator: contraction degree overflow");
        const int half = static_cast<int>(mono.indices.size()) / 2;
        // dGamma_kl = Re(i coeff w) with w = (-i)^p Pf: fold the phases into
        // one real Pfaffian weight.
        constexpr cxd i_unit(0.0, 1.0);
        constexpr std::array<cxd, 4> minus_i_pow = {
            cxd(1, 0), cxd(0, -1), cxd(-1, 0), cxd(0, 1)};
        const double weight =
            (i_unit * mono.coeff * minus_i_pow[half % 4]).real();
        if (weight == 0.0) continue;
        terms.push_back({weight, mono.indices});
      }
      pair_terms_.push_back(std::move(terms));
    }
  }
}

double CmGenerator::evaluate_pair(const Eigen::MatrixXd& gamma,
                                  std::size_t pair) const {
  double acc = 0.0;
  for (const auto& term : pair_terms_[pair])
    acc += term.weight * gaussian::pfaffian_sub(gamma, term.indices);
  return acc;
}

void CmGenerator::check_input(const Eigen::MatrixXd& gamma) const {
  const int n = 2 * modes_;
  if (gamma.rows() != n || gamma.cols() != n)
    throw InvariantError("CmGenerator: covariance dimension mismatch");
  const double asym = (gamma + gamma.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(1.0, gamma.cwiseAbs().maxCoeff()))
    throw InvariantError("CmGenerator: covariance not antisymmetric");
  // Loose bound: integration handles small spectral excursions itself.
  if (gaussian::physicality_excursion(gamma) > 1e-3)
    throw InvariantError("CmGenerator: covariance is unphysical");
}

Eigen::MatrixXd CmGenerator::equation_of_motion(
    const Eigen::MatrixXd& gamma) const {
  check_input(gamma);
  const int n = 2 * modes_;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  const auto pairs = static_cast<Eigen::Index>(pair_terms_.size());
#pragma omp parallel for schedule(static)
  for (Eigen::Index p = 0; p < pairs; ++p) {
    // row-major pair order: p -> (k, l)
    Eigen::Index k = 0, offset = p;
    while (offset >= n - 1 - k) {
      offset -= n - 1 - k;
      ++k;
    }
    const Eigen::Index l = k + 1 + offset;
    const double value = evaluate_pair(gamma, static_cast<std::size_t>(p));
    out(k, l) = value;
    out(l, k) = -value;
  }
  return out;
}

Eigen::MatrixXd CmGenerator::equation_of_motion_serial(
    const Eigen::MatrixXd& gamma) const {
  check_input(gamma);
  const int n = 2 * modes_;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  std::size_t p = 0;
  for (int k = 0; k < n; ++k) {
    for (int l = k + 1; l < n; ++l, ++p) {
      const double value = evaluate_pair(gamma, p);
      out(k, l) = value;
      out(l, k) = -value;
    }
  }
  return out;
}

Eigen::MatrixXd cm_equation_of_motion(const Eigen::MatrixXd& gamma,
                                      const LindbladSpec& spec) {
  if (gamma.rows() % 2 != 0)
    throw InvariantError("cm_equation_of_motion: odd dimension");
  const int modes = static_cast<int>(gamma.rows() / 2);
  return CmGenerator(spec, modes).equation_of_motion(gamma);
}

namespace {

Eigen::VectorXd pack_upper(const Eigen::MatrixXd& gamma) {
  const Eigen::Index n = gamma.rows();
  Eigen::VectorXd x((n * (n - 1)) / 2);
  Eigen::Index p = 0;
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index l = k + 1; l < n; ++l) x(p++) = gamma(k, l);
  return x;
}

Eigen::MatrixXd unpack_upper(const Eigen::VectorXd& x, Eigen::Index n) {
  Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(n, n);
  Eigen::Index p = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index l = k + 1; l < n; ++l) {
      gamma(k, l) = x(p);
      gamma(l, k) = -x(p);
      ++p;
    }
  }
  return gamma;
}

double norm_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                 NormKind norm) {
  if (norm == NormKind::Frobenius) return (a - b).norm();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a - b);
  return svd.singularValues().size() == 0 ? 0.0 : svd.singularValues()(0);
}

}  // namespace

CmTrajectory integrate_gaussified(const Eigen::MatrixXd& gamma0,
                                  const LindbladSpec& spec, double t_final,
                                  double dt, double sample_interval) {
  if (!(dt > 0.0)) throw InvariantError("integrate_gaussified: dt must be > 0");
  if (sample_interval < dt)
    throw InvariantError("integrate_gaussified: sample_interval < dt");
  gaussian::check_physical(gamma0, 1e-9);
  if (gamma0.rows() % 2 != 0)
    throw InvariantError("integrate_gaussified: odd dimension");
  const int modes = static_cast<int>(gamma0.rows() / 2);
  const Eigen::Index n = gamma0.rows();
  const CmGenerator gen(spec, modes);

  const auto steps = static_cast<long>(std::llround(t_final / dt));
  const auto sample_every =
      std::max<long>(1, std::llround(sample_interval / dt));

  CmTrajectory traj;
  Eigen::VectorXd x = pack_upper(gamma0);
  traj.times.push_back(0.0);
  traj.gammas.push_back(gamma0);

  auto rhs = [&gen, n](const Eigen::VectorXd& y) {
    return pack_upper(gen.equation_of_motion(unpack_upper(y, n)));
  };

  for (long step = 1; step <= steps; ++step) {
    const Eigen::VectorXd k1 = rhs(x);
    const Eigen::VectorXd k2 = rhs(x + (0.5 * dt) * k1);
    const Eigen::VectorXd k3 = rhs(x + (0.5 * dt) * k2);
    const Eigen::VectorXd k4 = rhs(x + dt * k3);
    x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    Eigen::MatrixXd gamma = unpack_upper(x, n);
    const double excursion = gaussian::physicality_excursion(gamma);
    if (excursion > 1e-3) {
      std::ostringstream msg;
      msg << "integrate_gaussified: spectral excursion " << excursion
          << " beyond the abort threshold at t = "
          << static_cast<double>(step) * dt;
      throw NumericalError(msg.str());
    }
    if (excursion > 1e-12) {
      gamma = gaussian::clip_physical(gamma);
      x = pack_upper(gamma);
      if (traj.clip_events == 0)
        std::cerr << "integrate_gaussified: clipping spectral excursion "
                  << excursion << " at t = " << static_cast<double>(step) * dt
                  << "\n";
      ++traj.clip_events;
    }

    if (step % sample_every == 0 || step == steps) {
      traj.times.push_back(static_cast<double>(step) * dt);
      traj.gammas.push_back(unpack_upper(x, n));
    }
  }
  return traj;
}

ComparisonSeries compare_trajectories(const fock::DenseTrajectory& exact,
                                      const CmTrajectory& cm, NormKind norm) {
  if (exact.times.size() != cm.times.size())
    throw InvariantError("compare_trajectories: time-grid mismatch");
  for (std::size_t i = 0; i < exact.times.size(); ++i)
    if (std::abs(exact.times[i] - cm.times[i]) > 1e-9)
      throw InvariantError("compare_trajectories: time-grid mismatch");

  ComparisonSeries series;
  series.times = exact.times;
  for (std::size_t i = 0; i < exact.times.size(); ++i) {
    const Eigen::MatrixXd gamma_exact = gaussian::gaussify(exact.states[i]);
    series.d_gamma.push_back(norm_diff(cm.gammas[i], gamma_exact, norm));
    const Eigen::MatrixXcd rho_g =
        gaussian::dense_from_covariance(cm.gammas[i]);
    series.d_rho.push_back(fock::hs_distance(rho_g, exact.states[i], norm));
  }
  return series;
}

}  // namespace mstdvp::gaussified

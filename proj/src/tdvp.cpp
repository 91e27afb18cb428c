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

#include "mstdvp/tdvp.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "mstdvp/gaussian.hpp"

namespace mstdvp::tdvp {

std::vector<Eigen::MatrixXcd> ManifoldChart::tangent_frame(
    const Eigen::VectorXd& x) const {
  std::vector<Eigen::MatrixXcd> frame;
  frame.reserve(static_cast<std::size_t>(param_dim()));
  for (Eigen::Index j = 0; j < param_dim(); ++j)
    frame.push_back(tangent(x, j));
  return frame;
}

LinearChart::LinearChart(Eigen::MatrixXcd base,
                         std::vector<Eigen::MatrixXcd> basis)
    : base_(std::move(base)), basis_(std::move(basis)) {
  for (const auto& b : basis_) {
    if (b.rows() != base_.rows() || b.cols() != base_.cols())
      throw InvariantError("LinearChart: basis dimension mismatch");
    if ((b - b.adjoint()).cwiseAbs().maxCoeff() > 1e-12 ||
        std::abs(b.trace()) > 1e-10)
      throw InvariantError("LinearChart: basis not traceless Hermitian");
  }
}

LinearChart LinearChart::full_manifold(const Eigen::MatrixXcd& base) {
  const Eigen::Index n = base.rows();
  std::vector<Eigen::MatrixXcd> basis;
  basis.reserve(static_cast<std::size_t>(n * n - 1));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(n, n);
      x(i, j) = x(j, i) = inv_sqrt2;
      basis.push_back(x);
      Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(n, n);
      y(i, j) = cxd(0.0, -inv_sqrt2);
      y(j, i) = cxd(0.0, inv_sqrt2);
      basis.push_back(y);
    }
  }
  for (Eigen::Index k = 1; k < n; ++k) {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n, n);
    const double norm = 1.0 / std::sqrt(static_cast<double>(k * (k + 1)));
    for (Eigen::Index i = 0; i < k; ++i) d(i, i) = norm;
    d(k, k) = -static_cast<double>(k) * norm;
    basis.push_back(d);
  }
  return LinearChart(base, std::move(basis));
}

Eigen::Index LinearChart::param_dim() const {
  return static_cast<Eigen::Index>(basis_.size());
}

Eigen::MatrixXcd LinearChart::state(const Eigen::VectorXd& x) const {
  if (x.size() != param_dim())
    throw InvariantError("LinearChart: parameter dimension mismatch");
  Eigen::MatrixXcd rho = base_;
  for (Eigen::Index j = 0; j < x.size(); ++j)
    rho += x(j) * basis_[static_cast<std::size_t>(j)];
  return rho;
}

Eigen::MatrixXcd LinearChart::tangent(const Eigen::VectorXd&,
                                      Eigen::Index j) const {
  if (j < 0 || j >= param_dim())
    throw InvariantError("LinearChart: tangent index out of range");
  return basis_[static_cast<std::size_t>(j)];
}

GaussianChart::GaussianChart(int modes, TangentMethod method)
    : modes_(modes), method_(method) {
  fock::fock_dim(modes);  // enforces the dense cap
  for (int k = 0; k < 2 * modes; ++k)
    majoranas_.push_back(fock::majorana_permutation(modes, k));
}

Eigen::Index GaussianChart::param_dim() const {
  return static_cast<Eigen::Index>(modes_) * (2 * modes_ - 1);
}

Eigen::VectorXd GaussianChart::pack(const Eigen::MatrixXd& gamma) {
  const Eigen::Index n = gamma.rows();
  Eigen::VectorXd x((n * (n - 1)) / 2);
  Eigen::Index p = 0;
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index l = k + 1; l < n; ++l) x(p++) = gamma(k, l);
  return x;
}

Eigen::MatrixXd GaussianChart::unpack(const Eigen::VectorXd& x, int modes) {
  const Eigen::Index n = 2 * modes;
  if (x.size() != (n * (n - 1)) / 2)
    throw InvariantError("GaussianChart: parameter dimension mismatch");
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

Eigen::MatrixXcd GaussianChart::state(const Eigen::VectorXd& x) const {
  return gaussian::dense_from_covariance(unpack(x, modes_));
}

Eigen::MatrixXcd GaussianChart::analytic_tangent(const Eigen::MatrixXd& gamma,
                                                 int k, int l) const {
  // rho(Gamma) = 2^-N sum_S i^(|S|/2) Pf(Gamma_S) c_S over even subsets S;
  // differentiating Pf(Gamma_S) by the (k,l) entry leaves the Pfaffian minor
  // with sign (-1)^(pos_k + pos_l + 1).
  const int n = 2 * modes_;
  const Eigen::Index dim = fock::fock_dim(modes_);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  const double scale = std::pow(2.0, -modes_);
  constexpr std::array<cxd, 4> i_pow = {cxd(1, 0), cxd(0, 1), cxd(-1, 0),
                                        cxd(0, -1)};

  const std::uint64_t pair_mask =
      (std::uint64_t{1} << k) | (std::uint64_t{1} << l);
  std::vector<int> others;
  for (int b = 0; b < n; ++b)
    if (b != k && b != l) others.push_back(b);
  const int free_bits = n - 2;

  std::vector<int> subset, minor;
  subset.reserve(static_cast<std::size_t>(n));
  minor.reserve(static_cast<std::size_t>(n));
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << free_bits); ++m) {
    if (std::popcount(m) % 2 != 0) continue;
    std::uint64_t mask = pair_mask;
    for (int b = 0; b < free_bits; ++b)
      if (m & (std::uint64_t{1} << b))
        mask |= std::uint64_t{1} << others[static_cast<std::size_t>(b)];

    subset.clear();
    minor.clear();
    int pos_k = 0, pos_l = 0;
    for (int b = 0; b < n; ++b) {
      if (!(mask & (std::uint64_t{1} << b))) continue;
      if (b == k) pos_k = static_cast<int>(subset.size());
      if (b == l) pos_l = static_cast<int>(subset.size());
      subset.push_back(b);
      if (b != k && b != l) minor.push_back(b);
    }

    const double pf = gaussian::pfaffian_sub(gamma, minor);
    if (pf == 0.0) continue;
    const int p = static_cast<int>(subset.size()) / 2;
    const double minor_sign = ((pos_k + pos_l + 1) % 2 == 0) ? 1.0 : -1.0;
    const cxd coeff = scale * i_pow[p % 4] * minor_sign * pf;

    fock::SignedPermutation word =
        majoranas_[static_cast<std::size_t>(subset.back())];
    for (int s = static_cast<int>(subset.size()) - 2; s >= 0; --s)
      word = fock::compose(majoranas_[static_cast<std::size_t>(subset[s])],
                           word);
    for (Eigen::Index col = 0; col < dim; ++col)
      out(word.target[col], col) += coeff * word.phase[col];
  }
  return out;
}

Eigen::MatrixXcd GaussianChart::tangent(const Eigen::VectorXd& x,
                                        Eigen::Index j) const {
  if (j < 0 || j >= param_dim())
    throw InvariantError("GaussianChart: tangent index out of range");
  if (method_ == TangentMethod::Analytic) {
    const int n = 2 * modes_;
    Eigen::Index p = 0;
    for (int k = 0; k < n; ++k) {
      for (int l = k + 1; l < n; ++l) {
        if (p == j) return analytic_tangent(unpack(x, modes_), k, l);
        ++p;
      }
    }
    throw InvariantError("GaussianChart: tangent index out of range");
  }
  const double h = 1e-5;
  Eigen::VectorXd xp = x, xm = x;
  xp(j) += h;
  xm(j) -= h;
  Eigen::MatrixXcd t = (state(xp) - state(xm)) / (2.0 * h);
  t -= (t.trace() / static_cast<double>(t.rows())) *
       Eigen::MatrixXcd::Identity(t.rows(), t.cols());
  return 0.5 * (t + t.adjoint().eval());
}

namespace {

double frobenius_inner_real(const Eigen::MatrixXcd& a,
                            const Eigen::MatrixXcd& b) {
  return a.conjugate().cwiseProduct(b).sum().real();
}

struct Assembled {
  Eigen::MatrixXd gram;
  Eigen::VectorXd force;
  double generator_norm = 0.0;  // M(L, L)
};

Assembled assemble(const ManifoldChart& chart, const Eigen::VectorXd& x,
                   const metrics::AlphaMetric& metric,
                   const fock::DenseGenerator* gen) {
  const Eigen::MatrixXcd rho = chart.state(x);
  const metrics::OmegaOperator omega(rho, metric);
  const std::vector<Eigen::MatrixXcd> frame = chart.tangent_frame(x);
  const Eigen::Index d = chart.param_dim();

  std::vector<Eigen::MatrixXcd> omega_frame;
  omega_frame.reserve(frame.size());
  for (const auto& t : frame) omega_frame.push_back(omega.apply(t));

  Assembled out;
  out.gram.resize(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index k = j; k < d; ++k) {
      const double g = frobenius_inner_real(
          frame[static_cast<std::size_t>(j)],
          omega_frame[static_cast<std::size_t>(k)]);
      out.gram(j, k) = g;
      out.gram(k, j) = g;
    }

  if (gen != nullptr) {
    const Eigen::MatrixXcd l_rho = fock::lindblad_rhs(*gen, rho);
    const Eigen::MatrixXcd omega_l = omega.apply(l_rho);
    out.force.resize(d);
    for (Eigen::Index j = 0; j < d; ++j)
      out.force(j) =
          frobenius_inner_real(frame[static_cast<std::size_t>(j)], omega_l);
    out.generator_norm = frobenius_inner_real(l_rho, omega_l);
  }
  return out;
}

}  // namespace

Eigen::MatrixXd gram_matrix(const ManifoldChart& chart,
                            const Eigen::VectorXd& x,
                            const metrics::AlphaMetric& metric) {
  return assemble(chart, x, metric, nullptr).gram;
}

Eigen::VectorXd force_vector(const ManifoldChart& chart,
                             const Eigen::VectorXd& x,
                             const metrics::AlphaMetric& metric,
                             const fock::DenseGenerator& gen) {
  return assemble(chart, x, metric, &gen).force;
}

TdvpSolution tdvp_velocity(const ManifoldChart& chart, const Eigen::VectorXd& x,
                           const metrics::AlphaMetric& metric,
                           const fock::DenseGenerator& gen) {
  Assembled parts = assemble(chart, x, metric, &gen);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(parts.gram);
  if (es.info() != Eigen::Success)
    throw NumericalError("tdvp_velocity: Gram eigensolver failed");
  const Eigen::VectorXd evals = es.eigenvalues();
  const double top = evals.cwiseAbs().maxCoeff();
  const double cutoff = 1e-10 * top;

  TdvpSolution sol;
  sol.gram = std::move(parts.gram);
  sol.force = std::move(parts.force);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(evals.size());
  bool truncated = (top == 0.0);
  for (Eigen::Index i = 0; i < evals.size(); ++i) {
    if (evals(i) > cutoff)
      inv(i) = 1.0 / evals(i);
    else
      truncated = true;
  }
  sol.velocity = es.eigenvectors() *
                 inv.asDiagonal() * (es.eigenvectors().transpose() * sol.force);
  sol.used_pseudo_inverse = truncated;
  const double bottom = evals.minCoeff();
  sol.gram_condition = (top > 0.0 && bottom > 0.0)
                           ? top / bottom
                           : std::numeric_limits<double>::infinity();

  if (!sol.velocity.allFinite())
    throw NumericalError("tdvp_velocity: non-finite solution");

  const double quad = sol.velocity.dot(sol.gram * sol.velocity);
  sol.residual =
      std::max(0.0, parts.generator_norm - 2.0 * sol.velocity.dot(sol.force) +
                        quad);
  return sol;
}

ParamTrajectory integrate_tdvp(const ManifoldChart& chart,
                               const Eigen::VectorXd& x0,
                               const metrics::AlphaMetric& metric,
                               const fock::DenseGenerator& gen, double t_final,
                               double dt, double sample_interval) {
  if (!(dt > 0.0)) throw InvariantError("integrate_tdvp: dt must be > 0");
  if (sample_interval < dt)
    throw InvariantError("integrate_tdvp: sample_interval < dt");

  ParamTrajectory traj;
  auto velocity = [&](const Eigen::VectorXd& x) {
    const TdvpSolution sol = tdvp_velocity(chart, x, metric, gen);
    if (!(sol.gram_condition < 1e12)) {
      std::ostringstream msg;
      msg << "integrate_tdvp: Gram conditioning collapse (condition "
          << sol.gram_condition << ")";
      throw NumericalError(msg.str());
    }
    traj.pseudo_inverse_used |= sol.used_pseudo_inverse;
    return sol.velocity;
  };

  const auto steps = static_cast<long>(std::llround(t_final / dt));
  const auto sample_every =
      std::max<long>(1, std::llround(sample_interval / dt));

  Eigen::VectorXd x = x0;
  traj.times.push_back(0.0);
  traj.params.push_back(x);
  for (long step = 1; step <= steps; ++step) {
    const Eigen::VectorXd k1 = velocity(x);
    const Eigen::VectorXd k2 = velocity(x + (0.5 * dt) * k1);
    const Eigen::VectorXd k3 = velocity(x + (0.5 * dt) * k2);
    const Eigen::VectorXd k4 = velocity(x + dt * k3);
    x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const double t = static_cast<double>(step) * dt;
    try {
      fock::check_density(chart.state(x), 1e-7, 1e-7, -1e-7);
    } catch (const InvariantError& err) {
      std::ostringstream msg;
      msg << "integrate_tdvp: state invariant violated at t = " << t << " ("
          << err.what() << ")";
      throw NumericalError(msg.str());
    }
    if (step % sample_every == 0 || step == steps) {
      traj.times.push_back(t);
      traj.params.push_back(x);
    }
  }
  return traj;
}

}  // namespace mstdvp::tdvp

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

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "mstdvp/common.hpp"
#include "mstdvp/fock.hpp"
#include "mstdvp/metrics.hpp"

namespace mstdvp::tdvp {

// Projected flow on a parametrized manifold of density matrices: the
// generator is replaced by its metric-orthogonal projection onto the tangent
// span, v = G^+ l with G_jk = <d_j rho, Omega(d_k rho)> and
// l_j = <d_j rho, Omega(L(rho))>.

/// A parametrization x -> rho(x) with tangent access.  Implementations must
/// be reentrant; tangents are expected traceless Hermitian.
class ManifoldChart {
 public:
  virtual ~ManifoldChart() = default;
  virtual Eigen::Index param_dim() const = 0;
  virtual Eigen::MatrixXcd state(const Eigen::VectorXd& x) const = 0;
  virtual Eigen::MatrixXcd tangent(const Eigen::VectorXd& x,
                                   Eigen::Index j) const = 0;
  /// All tangents at once; the default just loops over `tangent`.
  virtual std::vector<Eigen::MatrixXcd> tangent_frame(
      const Eigen::VectorXd& x) const;
};

/// rho(x) = base + sum_j x_j B_j over a fixed traceless Hermitian set.
class LinearChart : public ManifoldChart {
 public:
  LinearChart(Eigen::MatrixXcd base, std::vector<Eigen::MatrixXcd> basis);
  /// The complete chart over all density matrices around `base`
  /// (D = n^2 - 1 generalized Gell-Mann directions).
  static LinearChart full_manifold(const Eigen::MatrixXcd& base);

  Eigen::Index param_dim() const override;
  Eigen::MatrixXcd state(const Eigen::VectorXd& x) const override;
  Eigen::MatrixXcd tangent(const Eigen::VectorXd& x,
                           Eigen::Index j) const override;

 private:
  Eigen::MatrixXcd base_;
  std::vector<Eigen::MatrixXcd> basis_;
};

/// Gaussian states charted by the strictly upper triangle of the covariance
/// matrix, D = N(2N-1).  Tangents d rho / d Gamma_kl come from exact Pfaffian
/// minors of the monomial expansion of rho(Gamma), or from central finite
/// differences (step 1e-5) as a fallback.
class GaussianChart : public ManifoldChart {
 public:
  enum class TangentMethod { Analytic, FiniteDifference };

  explicit GaussianChart(int modes,
                         TangentMethod method = TangentMethod::Analytic);

  Eigen::Index param_dim() const override;
  Eigen::MatrixXcd state(const Eigen::VectorXd& x) const override;
  Eigen::MatrixXcd tangent(const Eigen::VectorXd& x,
                           Eigen::Index j) const override;

  int modes() const { return modes_; }
  /// Strictly-upper-triangle coordinates, row-major pair order.
  static Eigen::VectorXd pack(const Eigen::MatrixXd& gamma);
  static Eigen::MatrixXd unpack(const Eigen::VectorXd& x, int modes);

 private:
  Eigen::MatrixXcd analytic_tangent(const Eigen::MatrixXd& gamma, int k,
                                    int l) const;
  int modes_;
  TangentMethod method_;
  std::vector<fock::SignedPermutation> majoranas_;
};

struct TdvpSolution {
  Eigen::VectorXd velocity;
  Eigen::MatrixXd gram;
  Eigen::VectorXd force;
  double residual = 0.0;            // M(A* - L, A* - L) >= 0
  bool used_pseudo_inverse = false;
  double gram_condition = 0.0;      // max/min eigenvalue ratio
};

Eigen::MatrixXd gram_matrix(const ManifoldChart& chart,
                            const Eigen::VectorXd& x,
                            const metrics::AlphaMetric& metric);

Eigen::VectorXd force_vector(const ManifoldChart& chart,
                             const Eigen::VectorXd& x,
                             const metrics::AlphaMetric& metric,
                             const fock::DenseGenerator& gen);

/// Least-squares optimum of M(A - L(rho), A - L(rho)) over the tangent span.
/// A singular Gram matrix falls back to the minimum-norm solution through a
/// pseudo-inverse with relative cutoff 1e-10 and sets the flag.
TdvpSolution tdvp_velocity(const ManifoldChart& chart, const Eigen::VectorXd& x,
                           const metrics::AlphaMetric& metric,
                           const fock::DenseGenerator& gen);

struct ParamTrajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> params;
  bool pseudo_inverse_used = false;
};

/// RK4 on the chart parameters.  Aborts when the Gram condition number
/// exceeds 1e12 or a visited state breaks the density invariants (1e-7).
ParamTrajectory integrate_tdvp(const ManifoldChart& chart,
                               const Eigen::VectorXd& x0,
                               const metrics::AlphaMetric& metric,
                               const fock::DenseGenerator& gen, double t_final,
                               double dt, double sample_interval = 0.05);

}  // namespace mstdvp::tdvp

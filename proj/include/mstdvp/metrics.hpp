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

#include <vector>

#include <Eigen/Dense>

#include "mstdvp/common.hpp"

namespace mstdvp::metrics {

// Monotone Riemannian metrics on full-rank density matrices, built from the
// superoperator family
//   Omega^alpha_rho(sigma) = (rho^-a sigma rho^(a-1) + rho^(a-1) sigma rho^-a)/2
// and convex combinations thereof.  M_rho(A, B) = tr[A^dag Omega_rho(B)].

/// Convex combination of alpha exponents: weights positive and normalized,
/// every alpha in [0, 1].
struct AlphaMetric {
  struct Term {
    double weight;
    double alpha;
  };
  std::vector<Term> terms;

  static AlphaMetric single(double alpha);
  static AlphaMetric combination(std::vector<Term> terms);
  void validate() const;  // throws InvariantError
};

/// Omega_rho for a fixed (rho, metric) pair.  Diagonalizes rho once; in the
/// eigenbasis Omega acts entrywise through a positive kernel, which makes the
/// inverse an entrywise division.
class OmegaOperator {
 public:
  /// Requires min eigenvalue of rho above `eig_floor` (default 1e-10).
  OmegaOperator(const Eigen::MatrixXcd& rho, const AlphaMetric& metric,
                double eig_floor = 1e-10);

  Eigen::MatrixXcd apply(const Eigen::MatrixXcd& sigma) const;
  Eigen::MatrixXcd apply_inverse(const Eigen::MatrixXcd& tau) const;
  /// tr[A^dag Omega(B)].
  cxd form(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) const;

  const Eigen::MatrixXd& kernel() const { return kernel_; }

 private:
  Eigen::MatrixXcd basis_;   // eigenvectors of rho
  Eigen::MatrixXd kernel_;   // entrywise factors in that basis
};

Eigen::MatrixXcd omega_apply(const Eigen::MatrixXcd& rho,
                             const AlphaMetric& metric,
                             const Eigen::MatrixXcd& sigma);
Eigen::MatrixXcd omega_inverse(const Eigen::MatrixXcd& rho,
                               const AlphaMetric& metric,
                               const Eigen::MatrixXcd& tau);
cxd metric_form(const Eigen::MatrixXcd& rho, const AlphaMetric& metric,
                const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace mstdvp::metrics

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

#include "mstdvp/metrics.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace mstdvp::metrics {

AlphaMetric AlphaMetric::single(double alpha) {
  AlphaMetric m{{{1.0, alpha}}};
  m.validate();
  return m;
}

AlphaMetric AlphaMetric::combination(std::vector<Term> terms) {
  AlphaMetric m{std::move(terms)};
  m.validate();
  return m;
}

void AlphaMetric::validate() const {
  if (terms.empty()) throw InvariantError("AlphaMetric: no terms");
  double total = 0.0;
  for (const auto& t : terms) {
    if (!(t.weight > 0.0)) throw InvariantError("AlphaMetric: weight <= 0");
    if (!(t.alpha >= 0.0 && t.alpha <= 1.0))
      throw InvariantError("AlphaMetric: alpha outside [0, 1]");
    total += t.weight;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw InvariantError("AlphaMetric: weights do not sum to 1");
}

OmegaOperator::OmegaOperator(const Eigen::MatrixXcd& rho,
                             const AlphaMetric& metric, double eig_floor) {
  metric.validate();
  if (rho.rows() != rho.cols())
    throw InvariantError("OmegaOperator: state not square");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw InvariantError("OmegaOperator: state not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
  if (es.info() != Eigen::Success)
    throw NumericalError("OmegaOperator: eigensolver failed");
  const Eigen::VectorXd p = es.eigenvalues();
  if (p.minCoeff() <= eig_floor) {
    std::ostringstream msg;
    msg << "OmegaOperator: state is singular within the floor (min eigenvalue "
        << p.minCoeff() << ")";
    throw InvariantError(msg.str());
  }
  basis_ = es.eigenvectors();

  const Eigen::Index n = p.size();
  kernel_.resize(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      double k = 0.0;
      for (const auto& term : metric.terms) {
        const double alpha = term.alpha;
        k += term.weight * 0.5 *
             (std::pow(p(a), -alpha) * std::pow(p(b), alpha - 1.0) +
              std::pow(p(a), alpha - 1.0) * std::pow(p(b), -alpha));
      }
      kernel_(a, b) = k;
    }
  }
}

Eigen::MatrixXcd OmegaOperator::apply(const Eigen::MatrixXcd& sigma) const {
  if (sigma.rows() != basis_.rows() || sigma.cols() != basis_.rows())
    throw InvariantError("OmegaOperator::apply: dimension mismatch");
  Eigen::MatrixXcd tilde = basis_.adjoint() * sigma * basis_;
  tilde.array() *= kernel_.array();
  return basis_ * tilde * basis_.adjoint();
}

Eigen::MatrixXcd OmegaOperator::apply_inverse(
    const Eigen::MatrixXcd& tau) const {
  if (tau.rows() != basis_.rows() || tau.cols() != basis_.rows())
    throw InvariantError("OmegaOperator::apply_inverse: dimension mismatch");
  Eigen::MatrixXcd tilde = basis_.adjoint() * tau * basis_;
  tilde.array() /= kernel_.array();
  return basis_ * tilde * basis_.adjoint();
}

cxd OmegaOperator::form(const Eigen::MatrixXcd& a,
                        const Eigen::MatrixXcd& b) const {
  if (a.rows() != basis_.rows() || b.rows() != basis_.rows() ||
      a.cols() != basis_.rows() || b.cols() != basis_.rows())
    throw InvariantError("OmegaOperator::form: dimension mismatch");
  const Eigen::MatrixXcd at = basis_.adjoint() * a * basis_;
  const Eigen::MatrixXcd bt = basis_.adjoint() * b * basis_;
  cxd acc(0.0, 0.0);
  for (Eigen::Index col = 0; col < at.cols(); ++col)
    for (Eigen::Index row = 0; row < at.rows(); ++row)
      acc += std::conj(at(row, col)) * kernel_(row, col) * bt(row, col);
  return acc;
}

Eigen::MatrixXcd omega_apply(const Eigen::MatrixXcd& rho,
                             const AlphaMetric& metric,
                             const Eigen::MatrixXcd& sigma) {
  return OmegaOperator(rho, metric).apply(sigma);
}

Eigen::MatrixXcd omega_inverse(const Eigen::MatrixXcd& rho,
                               const AlphaMetric& metric,
                               const Eigen::MatrixXcd& tau) {
  return OmegaOperator(rho, metric).apply_inverse(tau);
}

cxd metric_form(const Eigen::MatrixXcd& rho, const AlphaMetric& metric,
                const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return OmegaOperator(rho, metric).form(a, b);
}

}  // namespace mstdvp::metrics

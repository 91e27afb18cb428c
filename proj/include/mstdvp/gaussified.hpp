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
#include "mstdvp/fock.hpp"
#include "mstdvp/majorana.hpp"

namespace mstdvp::gaussified {

// Polynomially-scaling covariance-matrix evolution: dGamma_kl/dt =
// i tr[c_k c_l L(rho_G)] evaluated entirely through Wick contractions.  The
// adjoint generator applied to each c_k c_l is expanded symbolically once;
// evaluating the equation of motion then only takes Pfaffians of <= 6x6
// submatrices.

/// Gaussian-state expectation of a polynomial, term by term through Wick.
cxd expectation(const PolynomialOperator& p, const Eigen::MatrixXd& gamma);

/// Compiled contraction plan for a fixed generator and mode count.
/// Requires Hamiltonian degree <= 4 and jump degree <= 2.
class CmGenerator {
 public:
  CmGenerator(const LindbladSpec& spec, int modes);

  int modes() const { return modes_; }

  /// dGamma/dt; entries (k,l) are independent and computed in parallel.
  /// Bit-identical to the serial variant for any thread count.
  Eigen::MatrixXd equation_of_motion(const Eigen::MatrixXd& gamma) const;
  Eigen::MatrixXd equation_of_motion_serial(const Eigen::MatrixXd& gamma) const;

 private:
  double evaluate_pair(const Eigen::MatrixXd& gamma, std::size_t pair) const;
  void check_input(const Eigen::MatrixXd& gamma) const;

  struct Term {
    double weight;            // Re(i coeff (-i)^p), Pfaffian prefactor
    std::vector<int> indices; // strictly increasing, even length
  };
  int modes_;
  std::vector<std::vector<Term>> pair_terms_;  // (k,l) pairs, row-major
};

/// One-shot convenience wrapper around CmGenerator.
Eigen::MatrixXd cm_equation_of_motion(const Eigen::MatrixXd& gamma,
                                      const LindbladSpec& spec);

struct CmTrajectory {
  std::vector<double> times;
  std::vector<Eigen::MatrixXd> gammas;
  int clip_events = 0;
};

/// RK4 on the strictly upper triangle (antisymmetry is exact by
/// construction).  Spectral excursions of i*Gamma beyond 1 are clipped back
/// with a logged warning; an excursion beyond 1e-3 aborts.
CmTrajectory integrate_gaussified(const Eigen::MatrixXd& gamma0,
                                  const LindbladSpec& spec, double t_final,
                                  double dt, double sample_interval = 0.05);

struct ComparisonSeries {
  std::vector<double> times;
  std::vector<double> d_gamma;  // ||Gamma_G(t) - Gamma_exact(t)||
  std::vector<double> d_rho;    // ||rho_G(t) - rho(t)||
};

/// Distance series between an exact trajectory and a CM trajectory on the
/// same time grid; rho_G is rebuilt with dense_from_covariance.
ComparisonSeries compare_trajectories(const fock::DenseTrajectory& exact,
                                      const CmTrajectory& cm,
                                      NormKind norm = NormKind::Frobenius);

}  // namespace mstdvp::gaussified

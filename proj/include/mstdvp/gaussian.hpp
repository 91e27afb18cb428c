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

#include <span>

#include <Eigen/Dense>

#include "mstdvp/common.hpp"

namespace mstdvp::gaussian {

// Covariance-matrix calculus for fermionic Gaussian states.  The CM is
// Gamma_kl = (i/2) tr([c_k, c_l] rho); it is real antisymmetric and physical
// iff the eigenvalues of i*Gamma lie in [-1, 1].  The vacuum of one mode has
// Gamma = [[0, 1], [-1, 0]].

/// Pfaffian of a real antisymmetric matrix via Parlett-Reid elimination with
/// partial pivoting; Pf(A)^2 = det(A).  Odd dimension or an asymmetry above
/// `antisym_tol` (relative to the largest entry) is an error.
double pfaffian(Eigen::MatrixXd a, double antisym_tol = 1e-12);

/// Throws InvariantError unless gamma is antisymmetric within `tol` and the
/// spectrum of i*gamma stays inside [-1-tol, 1+tol].
void check_physical(const Eigen::MatrixXd& gamma, double tol = 1e-9);

/// max(0, ||gamma||_2 - 1): how far the spectrum pokes outside [-1, 1].
double physicality_excursion(const Eigen::MatrixXd& gamma);

/// Gamma_kl = (i/2) tr([c_k, c_l] rho) for any state of dimension 2^N.
Eigen::MatrixXd covariance_from_dense(const Eigen::MatrixXcd& rho);

/// The map G: rho -> Gaussian state with the same covariance matrix, reported
/// as that matrix.  Identical to covariance_from_dense; separate name for the
/// role it plays.
Eigen::MatrixXd gaussify(const Eigen::MatrixXcd& rho);

/// Gaussian-state expectation tr[rho_G c_{j1} ... c_{jk}] for an arbitrary
/// index word: repeated indices are removed via c_k^2 = 1, odd words vanish,
/// and the rest is (-i)^p Pf of the corresponding 2p x 2p submatrix.
cxd wick_expectation(const Eigen::MatrixXd& gamma, std::span<const int> indices);

/// Pfaffian of the submatrix gamma[rows, rows] for strictly increasing rows.
double pfaffian_sub(const Eigen::MatrixXd& gamma, std::span<const int> rows);

/// O Gamma O^T = directsum_j lambda_j [[0,1],[-1,0]] with orthogonal O and
/// lambda sorted descending, all >= 0.
struct StandardForm {
  Eigen::MatrixXd O;
  Eigen::VectorXd lambda;
};
StandardForm standard_form(const Eigen::MatrixXd& gamma,
                           double residual_tol = 1e-9);

/// Dense state prod_j (1 + i lambda_j ct_{2j-1} ct_{2j})/2 in the rotated
/// Majorana basis ct = O c.  Subject to the dense mode cap.
Eigen::MatrixXcd dense_from_covariance(const Eigen::MatrixXd& gamma);

/// tr[rho_G^2] = prod_j (1 + lambda_j^2)/2.
double purity_from_cm(const Eigen::MatrixXd& gamma);

/// Clamps the standard-form coefficients to [-1, 1] and rebuilds gamma.
Eigen::MatrixXd clip_physical(const Eigen::MatrixXd& gamma);

}  // namespace mstdvp::gaussian

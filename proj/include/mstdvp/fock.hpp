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

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "mstdvp/common.hpp"
#include "mstdvp/kernels.hpp"
#include "mstdvp/majorana.hpp"

namespace mstdvp::fock {

using kernels::SpMat;

// Dense Hilbert-space oracle.  Jordan-Wigner layout: mode m maps to qubit m
// with a_m = (prod_{k<m} Z_k) (X_m + i Y_m)/2; occupation of mode m on basis
// index b is bit m of b, the vacuum is index 0.  Everything here scales as
// 2^N and is capped to keep that explicit.

inline constexpr int kMaxDenseModes = 12;

/// 2^modes, rejecting modes outside [1, kMaxDenseModes].
Eigen::Index fock_dim(int modes);

/// A scaled one-entry-per-column matrix: M e_j = phase[j] e_[target[j]].
/// Majorana monomials are exactly of this form, which keeps composition and
/// traces at O(dim).
struct SignedPermutation {
  std::vector<Eigen::Index> target;
  std::vector<cxd> phase;

  Eigen::Index dim() const { return static_cast<Eigen::Index>(target.size()); }
  static SignedPermutation identity(Eigen::Index dim);
};

/// a o b (apply b first).
SignedPermutation compose(const SignedPermutation& a,
                          const SignedPermutation& b);

/// The Majorana c_k on `modes` modes as a signed permutation.
SignedPermutation majorana_permutation(int modes, int k);

/// tr[M rho].
cxd trace_with(const SignedPermutation& m, const Eigen::MatrixXcd& rho);

/// Dense Majoranas c_0 .. c_{2N-1}; each Hermitian with c_k^2 = 1.
std::vector<Eigen::MatrixXcd> build_majoranas(int modes);

Eigen::MatrixXcd dense_operator(const PolynomialOperator& p, int modes);
SpMat sparse_operator(const PolynomialOperator& p, int modes);

/// tr[p rho] evaluated monomial-by-monomial in O(terms * dim).
cxd expectation(const PolynomialOperator& p, const Eigen::MatrixXcd& rho);

/// Basis vector for the given occupation pattern (occ[m] = mode m filled).
Eigen::VectorXcd basis_vector(const std::vector<bool>& occupations);
Eigen::MatrixXcd basis_projector(const std::vector<bool>& occupations);

/// Throws InvariantError unless rho is Hermitian/unit-trace/PSD within the
/// given tolerances.
void check_density(const Eigen::MatrixXcd& rho, double herm_tol = 1e-12,
                   double trace_tol = 1e-10, double eig_floor = -1e-9);

/// Lindblad generator realized at a fixed Fock dimension.  Operators are
/// stored sparse; Fock realizations of few-body polynomials have O(dim)
/// nonzeros per monomial.
struct DenseGenerator {
  Eigen::Index dim = 0;
  SpMat hamiltonian;
  struct Jump {
    SpMat op;
    SpMat dag_op;  // op^dag op
    double rate;
  };
  std::vector<Jump> jumps;
};

DenseGenerator realize(const LindbladSpec& spec, int modes);
DenseGenerator make_generator(
    const Eigen::MatrixXcd& hamiltonian,
    const std::vector<std::pair<Eigen::MatrixXcd, double>>& jumps);

/// -i[H, rho] + sum_x rate_x (j rho j^dag - 1/2 {j^dag j, rho}).
/// Result is traceless Hermitian up to roundoff.
Eigen::MatrixXcd lindblad_rhs(const DenseGenerator& gen,
                              const Eigen::MatrixXcd& rho);
Eigen::MatrixXcd lindblad_rhs_serial(const DenseGenerator& gen,
                                     const Eigen::MatrixXcd& rho);

struct DenseTrajectory {
  std::vector<double> times;
  std::vector<Eigen::MatrixXcd> states;
};

/// Fixed-step RK4.  Samples every `sample_interval` (>= dt) plus the initial
/// and final states; every sample is validated and a violation aborts with a
/// diagnostic.  `observer`, when given, receives each sample instead of
/// storing the trajectory.
DenseTrajectory integrate_exact(const DenseGenerator& gen,
                                const Eigen::MatrixXcd& rho0, double t_final,
                                double dt, double sample_interval = 0.05);
void integrate_exact_observe(
    const DenseGenerator& gen, const Eigen::MatrixXcd& rho0, double t_final,
    double dt, double sample_interval,
    const std::function<void(double, const Eigen::MatrixXcd&)>& observer);

/// Rank-1 projector onto the lowest eigenvector; degeneracy of the lowest
/// eigenvalue within `degeneracy_tol` is an error.
Eigen::MatrixXcd ground_state(const Eigen::MatrixXcd& hamiltonian,
                              double degeneracy_tol = 1e-10);

/// ||A - B|| in the chosen norm (Frobenius by default).
double hs_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                   NormKind norm = NormKind::Frobenius);

}  // namespace mstdvp::fock

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

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "mstdvp/common.hpp"
#include "mstdvp/majorana.hpp"

namespace mstdvp::rnd {

// Seeded generator with pinned variate algorithms (uniform via 53-bit
// mantissa, normal via Box-Muller) so that a given seed reproduces the same
// stream on every platform.  std::*_distribution is avoided on purpose: its
// output sequence is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();                     // [0, 1)
  double uniform(double lo, double hi);
  double gauss();                       // standard normal
  int uniform_int(int lo, int hi);      // inclusive bounds

 private:
  std::mt19937_64 engine_;
};

Eigen::MatrixXcd random_complex(Rng& rng, Eigen::Index rows, Eigen::Index cols);
Eigen::MatrixXcd random_hermitian(Rng& rng, Eigen::Index dim);
Eigen::MatrixXcd random_traceless_hermitian(Rng& rng, Eigen::Index dim);

/// Full-rank density matrix; `floor` mixes in the maximally mixed state to
/// bound the spectrum away from zero.
Eigen::MatrixXcd random_density(Rng& rng, Eigen::Index dim, double floor = 0.1);

/// Haar-ish orthogonal matrix from the QR of a Gaussian matrix.
Eigen::MatrixXd random_orthogonal(Rng& rng, Eigen::Index n);

/// Physical covariance matrix with standard-form coefficients drawn uniformly
/// from [-lambda_max, lambda_max].
Eigen::MatrixXd random_covariance(Rng& rng, int modes, double lambda_max);

/// Kraus operators of a random CPT map (rows of a Haar-ish isometry).
std::vector<Eigen::MatrixXcd> random_kraus_set(Rng& rng, Eigen::Index dim,
                                               int count);

/// Random generator with a Hermitian Hamiltonian of degree <= 4 and
/// `n_jumps` jump polynomials of degree <= 2.
LindbladSpec random_spec(Rng& rng, int modes, int n_quartic, int n_jumps);

}  // namespace mstdvp::rnd

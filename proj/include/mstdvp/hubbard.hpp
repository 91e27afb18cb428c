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
#include "mstdvp/majorana.hpp"

namespace mstdvp::hubbard {

// 1d spinful Hubbard chain with a spin-decoherence bath.  Site x and spin s
// (0 = up, 1 = down) occupy fermionic mode 2x + s.
//
//   H = J sum_{x,s} (a^dag_{x,s} a_{x+1,s} + h.c.)
//       + u sum_x n_{x,up} n_{x,down} + mu sum_{x,s} n_{x,s}
//   j_x = a^dag_{x,up} a_{x,down}   with rate kappa.
//
// The hopping is explicitly Hermitized; the bare directed sum alone would
// not be a Hamiltonian.

struct HubbardParams {
  int sites = 4;
  double hopping = 1.0;             // J, the energy unit
  double interaction = 4.0;         // u
  double chemical_potential = -2.0; // mu
  double decoherence = 1.0;         // kappa
  bool periodic = true;
};

int mode_index(int site, int spin);
int mode_count(const HubbardParams& params);

/// Validates params (sites >= 2, kappa >= 0) and builds the generator.
/// kappa = 0 yields an empty dissipator.
LindbladSpec build_hubbard(const HubbardParams& params);

struct Occupations {
  double n_up = 0.0;
  double n_down = 0.0;
  std::vector<double> site_up;
  std::vector<double> site_down;
};

/// Mode occupations from a dense state or, via Wick, from a covariance
/// matrix (n_m = (1 - Gamma_{2m,2m+1})/2).
Occupations occupations(const Eigen::MatrixXcd& rho, int sites);
Occupations occupations(const Eigen::MatrixXd& gamma, int sites);

struct SpinOrder {
  std::vector<double> local_sz;         // s_x = (n_up - n_down)/2
  double nn_correlator = 0.0;           // C1 = avg_x <Sz_x Sz_{x+1}>
  double staggered_magnetization = 0.0; // m_s = avg_x (-1)^x s_x
};

SpinOrder spin_order(const Eigen::MatrixXcd& rho, int sites,
                     bool periodic = true);
SpinOrder spin_order(const Eigen::MatrixXd& gamma, int sites,
                     bool periodic = true);

/// The fully polarized product state prod_x a^dag_{x,up} |0>.
Eigen::MatrixXcd polarized_state(int sites);
Eigen::MatrixXd polarized_covariance(int sites);

}  // namespace mstdvp::hubbard

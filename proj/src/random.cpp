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

#include "mstdvp/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mstdvp::rnd {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::gauss() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

int Rng::uniform_int(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(engine_() % span);
}

Eigen::MatrixXcd random_complex(Rng& rng, Eigen::Index rows,
                                Eigen::Index cols) {
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i)
      m(i, j) = cxd(rng.gauss(), rng.gauss());
  return m;
}

Eigen::MatrixXcd random_hermitian(Rng& rng, Eigen::Index dim) {
  const Eigen::MatrixXcd g = random_complex(rng, dim, dim);
  return 0.5 * (g + g.adjoint());
}

Eigen::MatrixXcd random_traceless_hermitian(Rng& rng, Eigen::Index dim) {
  Eigen::MatrixXcd h = random_hermitian(rng, dim);
  h -= (h.trace() / static_cast<double>(dim)) *
       Eigen::MatrixXcd::Identity(dim, dim);
  return h;
}

Eigen::MatrixXcd random_density(Rng& rng, Eigen::Index dim, double floor) {
  const Eigen::MatrixXcd g = random_complex(rng, dim, dim);
  Eigen::MatrixXcd rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = (1.0 - floor) * rho +
        (floor / static_cast<double>(dim)) *
            Eigen::MatrixXcd::Identity(dim, dim);
  return 0.5 * (rho + rho.adjoint());
}

Eigen::MatrixXd random_orthogonal(Rng& rng, Eigen::Index n) {
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = rng.gauss();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

Eigen::MatrixXd random_covariance(Rng& rng, int modes, double lambda_max) {
  const int n = 2 * modes;
  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < modes; ++j) {
    const double lambda = rng.uniform(-lambda_max, lambda_max);
    block(2 * j, 2 * j + 1) = lambda;
    block(2 * j + 1, 2 * j) = -lambda;
  }
  const Eigen::MatrixXd o = random_orthogonal(rng, n);
  Eigen::MatrixXd gamma = o.transpose() * block * o;
  // exact antisymmetry regardless of roundoff in the congruence
  for (int k = 0; k < n; ++k) {
    gamma(k, k) = 0.0;
    for (int l = k + 1; l < n; ++l) gamma(l, k) = -gamma(k, l);
  }
  return gamma;
}

std::vector<Eigen::MatrixXcd> random_kraus_set(Rng& rng, Eigen::Index dim,
                                               int count) {
  // Columns of a Haar-ish isometry C^dim -> C^(dim*count), sliced into
  // blocks; sum_i K_i^dag K_i = 1 holds by construction.
  const Eigen::MatrixXcd g = random_complex(rng, dim * count, dim);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ() *
                       Eigen::MatrixXcd::Identity(dim * count, dim);
  std::vector<Eigen::MatrixXcd> kraus;
  kraus.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    kraus.push_back(q.block(i * dim, 0, dim, dim));
  return kraus;
}

LindbladSpec random_spec(Rng& rng, int modes, int n_quartic, int n_jumps) {
  const int n = 2 * modes;
  LindbladSpec spec;
  // Quadratic part: i r c_k c_l is Hermitian for real r.
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l)
      spec.hamiltonian +=
          PolynomialOperator::monomial(cxd(0.0, rng.gauss() * 0.5), {k, l});
  // Quartic part: real coefficients on distinct index quadruples.
  for (int q = 0; q < n_quartic; ++q) {
    std::vector<int> idx;
    while (idx.size() < 4) {
      const int candidate = rng.uniform_int(0, n - 1);
      if (std::find(idx.begin(), idx.end(), candidate) == idx.end())
        idx.push_back(candidate);
    }
    std::sort(idx.begin(), idx.end());
    spec.hamiltonian +=
        PolynomialOperator::monomial(cxd(rng.gauss() * 0.5, 0.0), idx);
  }
  for (int j = 0; j < n_jumps; ++j) {
    PolynomialOperator op;
    for (int k = 0; k < n; ++k)
      op += PolynomialOperator::monomial(
          cxd(rng.gauss(), rng.gauss()) * 0.3, {k});
    const int pairs = rng.uniform_int(1, 3);
    for (int p = 0; p < pairs; ++p) {
      const int k = rng.uniform_int(0, n - 2);
      const int l = rng.uniform_int(k + 1, n - 1);
      op += PolynomialOperator::monomial(cxd(rng.gauss(), rng.gauss()) * 0.3,
                                         {k, l});
    }
    spec.jumps.push_back({op, rng.uniform(0.2, 1.0)});
  }
  return spec;
}

}  // namespace mstdvp::rnd

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

#include "mstdvp/gaussian.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include <Eigen/Eigenvalues>

#include "mstdvp/fock.hpp"
#include "mstdvp/majorana.hpp"

namespace mstdvp::gaussian {

namespace {

void require_even_square(const Eigen::MatrixXd& a, const char* who) {
  if (a.rows() != a.cols()) {
    std::ostringstream msg;
    msg << who << ": matrix is not square";
    throw InvariantError(msg.str());
  }
  if (a.rows() % 2 != 0) {
    std::ostringstream msg;
    msg << who << ": odd dimension " << a.rows();
    throw InvariantError(msg.str());
  }
}

void require_antisymmetric(const Eigen::MatrixXd& a, double tol,
                           const char* who) {
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const double asym = (a + a.transpose()).cwiseAbs().maxCoeff();
  if (asym > tol * scale) {
    std::ostringstream msg;
    msg << who << ": input is not antisymmetric (residual " << asym << ")";
    throw InvariantError(msg.str());
  }
}

}  // namespace

double pfaffian(Eigen::MatrixXd a, double antisym_tol) {
  require_even_square(a, "pfaffian");
  require_antisymmetric(a, antisym_tol, "pfaffian");
  const Eigen::Index n = a.rows();
  if (n == 0) return 1.0;

  // Parlett-Reid: congruence by Gauss transformations brings A to
  // tridiagonal form; row/column swaps flip the sign, the Pfaffian is the
  // product of the super-diagonal pivots.
  double pf = 1.0;
  for (Eigen::Index k = 0; k + 1 < n; k += 2) {
    Eigen::Index pivot = k + 1;
    for (Eigen::Index i = k + 2; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(pivot, k))) pivot = i;
    if (pivot != k + 1) {
      a.row(k + 1).swap(a.row(pivot));
      a.col(k + 1).swap(a.col(pivot));
      pf = -pf;
    }
    const double head = a(k, k + 1);
    if (head == 0.0) return 0.0;
    pf *= head;
    if (k + 2 >= n) break;
    const Eigen::Index rest = n - (k + 2);
    const Eigen::VectorXd tau = a.block(k, k + 2, 1, rest).transpose() / head;
    const Eigen::VectorXd col = a.block(k + 2, k + 1, rest, 1);
    // A' = A + tau col^T - col tau^T on the trailing block
    a.block(k + 2, k + 2, rest, rest).noalias() += tau * col.transpose();
    a.block(k + 2, k + 2, rest, rest).noalias() -= col * tau.transpose();
  }
  return pf;
}

namespace {

// Expansion along the first active row; exact for the small submatrices that
// Wick contractions produce (2p <= 8 keeps this under 105 terms).
double pfaffian_small(const Eigen::MatrixXd& gamma, const int* idx, int m) {
  if (m == 0) return 1.0;
  if (m == 2) return gamma(idx[0], idx[1]);
  std::array<int, 8> rest{};
  double acc = 0.0;
  double sign = 1.0;
  for (int t = 1; t < m; ++t) {
    const double head = gamma(idx[0], idx[t]);
    if (head != 0.0) {
      int r = 0;
      for (int s = 1; s < m; ++s)
        if (s != t) rest[r++] = idx[s];
      acc += sign * head * pfaffian_small(gamma, rest.data(), m - 2);
    }
    sign = -sign;
  }
  return acc;
}

constexpr std::array<cxd, 4> kMinusIPow = {cxd(1, 0), cxd(0, -1), cxd(-1, 0),
                                           cxd(0, 1)};

}  // namespace

cxd wick_expectation(const Eigen::MatrixXd& gamma,
                     std::span<const int> indices) {
  require_even_square(gamma, "wick_expectation");
  const int n = static_cast<int>(gamma.rows());
  std::vector<int> raw(indices.begin(), indices.end());
  for (int k : raw)
    if (k < 0 || k >= n)
      throw InvariantError("wick_expectation: index out of range");
  auto [sign, canon] = canonical_indices(std::move(raw));
  if (canon.size() % 2 != 0) return cxd(0.0, 0.0);  // parity superselection
  const int p = static_cast<int>(canon.size()) / 2;
  double pf;
  if (canon.size() <= 8) {
    pf = pfaffian_small(gamma, canon.data(), static_cast<int>(canon.size()));
  } else {
    Eigen::MatrixXd sub(canon.size(), canon.size());
    for (std::size_t r = 0; r < canon.size(); ++r)
      for (std::size_t c = 0; c < canon.size(); ++c)
        sub(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            gamma(canon[r], canon[c]);
    pf = pfaffian(sub);
  }
  return static_cast<double>(sign) * kMinusIPow[p % 4] * pf;
}

double pfaffian_sub(const Eigen::MatrixXd& gamma, std::span<const int> rows) {
  if (rows.size() % 2 != 0)
    throw InvariantError("pfaffian_sub: odd index count");
  for (std::size_t i = 0; i + 1 < rows.size(); ++i)
    if (rows[i] >= rows[i + 1])
      throw InvariantError("pfaffian_sub: indices not strictly increasing");
  if (!rows.empty() && (rows.front() < 0 || rows.back() >= gamma.rows()))
    throw InvariantError("pfaffian_sub: index out of range");
  if (rows.size() <= 8)
    return pfaffian_small(gamma, rows.data(), static_cast<int>(rows.size()));
  Eigen::MatrixXd sub(rows.size(), rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows.size(); ++c)
      sub(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          gamma(rows[r], rows[c]);
  return pfaffian(sub);
}

Eigen::MatrixXd covariance_from_dense(const Eigen::MatrixXcd& rho) {
  const Eigen::Index dim = rho.rows();
  if (rho.cols() != dim) throw InvariantError("covariance: state not square");
  int modes = 0;
  while ((Eigen::Index{1} << modes) < dim) ++modes;
  if ((Eigen::Index{1} << modes) != dim)
    throw InvariantError("covariance: dimension is not a power of two");
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-10)
    throw InvariantError("covariance: state is not Hermitian");

  const int n = 2 * modes;
  std::vector<fock::SignedPermutation> c;
  c.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    c.push_back(fock::majorana_permutation(modes, k));

  Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    for (int l = k + 1; l < n; ++l) {
      // [c_k, c_l] = 2 c_k c_l for k != l
      const cxd t = fock::trace_with(fock::compose(c[k], c[l]), rho);
      const double value = (cxd(0.0, 1.0) * t).real();
      gamma(k, l) = value;
      gamma(l, k) = -value;
    }
  }
  return gamma;
}

Eigen::MatrixXd gaussify(const Eigen::MatrixXcd& rho) {
  return covariance_from_dense(rho);
}

double physicality_excursion(const Eigen::MatrixXd& gamma) {
  Eigen::MatrixXcd igamma = cxd(0.0, 1.0) * gamma.cast<cxd>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(igamma,
                                                     Eigen::EigenvaluesOnly);
  const double top = es.eigenvalues().cwiseAbs().maxCoeff();
  return std::max(0.0, top - 1.0);
}

void check_physical(const Eigen::MatrixXd& gamma, double tol) {
  require_even_square(gamma, "check_physical");
  require_antisymmetric(gamma, 1e-12, "check_physical");
  const double excursion = physicality_excursion(gamma);
  if (excursion > tol) {
    std::ostringstream msg;
    msg << "covariance matrix unphysical: |spectrum| exceeds 1 by "
        << excursion;
    throw InvariantError(msg.str());
  }
}

StandardForm standard_form(const Eigen::MatrixXd& gamma, double residual_tol) {
  require_even_square(gamma, "standard_form");
  require_antisymmetric(gamma, 1e-12, "standard_form");
  const Eigen::Index n = gamma.rows();
  const int modes = static_cast<int>(n / 2);

  // The real Schur form of an antisymmetric matrix is block diagonal with
  // 2x2 blocks [[0, b], [-b, 0]] plus 1x1 zeros.
  Eigen::MatrixXd t;
  Eigen::MatrixXd u;
  if (gamma.cwiseAbs().maxCoeff() == 0.0) {
    t = Eigen::MatrixXd::Zero(n, n);
    u = Eigen::MatrixXd::Identity(n, n);
  } else {
    Eigen::RealSchur<Eigen::MatrixXd> schur(gamma);
    if (schur.info() != Eigen::Success)
      throw NumericalError("standard_form: Schur iteration failed");
    t = schur.matrixT();
    u = schur.matrixU();
  }

  const double scale = std::max(1.0, gamma.cwiseAbs().maxCoeff());
  const double block_thresh = 1e-12 * scale;

  struct Block {
    double lambda;
    Eigen::Index first, second;
  };
  std::vector<Block> blocks;
  std::vector<Eigen::Index> singles;
  Eigen::Index i = 0;
  while (i < n) {
    if (i + 1 < n && std::abs(t(i, i + 1)) > block_thresh) {
      const double b = 0.5 * (t(i, i + 1) - t(i + 1, i));
      if (b >= 0.0)
        blocks.push_back({b, i, i + 1});
      else
        blocks.push_back({-b, i + 1, i});  // swap enforces lambda >= 0
      i += 2;
    } else {
      singles.push_back(i);
      i += 1;
    }
  }
  for (std::size_t s = 0; s + 1 < singles.size(); s += 2)
    blocks.push_back({0.0, singles[s], singles[s + 1]});
  if (blocks.size() != static_cast<std::size_t>(modes))
    throw NumericalError("standard_form: failed to pair Schur blocks");

  std::stable_sort(blocks.begin(), blocks.end(),
                   [](const Block& a, const Block& b) {
                     return a.lambda > b.lambda;
                   });

  StandardForm form;
  form.O.resize(n, n);
  form.lambda.resize(modes);
  for (int j = 0; j < modes; ++j) {
    form.lambda(j) = blocks[static_cast<std::size_t>(j)].lambda;
    form.O.row(2 * j) = u.col(blocks[static_cast<std::size_t>(j)].first);
    form.O.row(2 * j + 1) = u.col(blocks[static_cast<std::size_t>(j)].second);
  }

  Eigen::MatrixXd target = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < modes; ++j) {
    target(2 * j, 2 * j + 1) = form.lambda(j);
    target(2 * j + 1, 2 * j) = -form.lambda(j);
  }
  const double residual =
      (form.O * gamma * form.O.transpose() - target).cwiseAbs().maxCoeff();
  if (residual > residual_tol * scale) {
    std::ostringstream msg;
    msg << "standard_form: block-diagonal residual " << residual;
    throw NumericalError(msg.str());
  }
  return form;
}

Eigen::MatrixXcd dense_from_covariance(const Eigen::MatrixXd& gamma) {
  const StandardForm form = standard_form(gamma);
  const int modes = static_cast<int>(form.lambda.size());
  const Eigen::Index dim = fock::fock_dim(modes);

  Eigen::VectorXd lambda = form.lambda;
  for (int j = 0; j < modes; ++j) {
    if (std::abs(lambda(j)) > 1.0 + 1e-9) {
      std::ostringstream msg;
      msg << "dense_from_covariance: coefficient " << lambda(j)
          << " outside [-1, 1] beyond tolerance";
      throw InvariantError(msg.str());
    }
    lambda(j) = std::clamp(lambda(j), -1.0, 1.0);
  }

  const std::vector<Eigen::MatrixXcd> c = fock::build_majoranas(modes);
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(dim, dim);
  Eigen::MatrixXcd rho = eye;
  Eigen::MatrixXcd ct1(dim, dim), ct2(dim, dim), pair(dim, dim);
  for (int j = 0; j < modes; ++j) {
    ct1.setZero();
    ct2.setZero();
    for (int l = 0; l < 2 * modes; ++l) {
      if (form.O(2 * j, l) != 0.0) ct1 += form.O(2 * j, l) * c[l];
      if (form.O(2 * j + 1, l) != 0.0) ct2 += form.O(2 * j + 1, l) * c[l];
    }
    pair.noalias() = ct1 * ct2;
    const Eigen::MatrixXcd factor = 0.5 * (eye + cxd(0.0, lambda(j)) * pair);
    rho = (rho * factor).eval();
  }
  return rho;
}

double purity_from_cm(const Eigen::MatrixXd& gamma) {
  require_even_square(gamma, "purity_from_cm");
  Eigen::MatrixXcd igamma = cxd(0.0, 1.0) * gamma.cast<cxd>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(igamma,
                                                     Eigen::EigenvaluesOnly);
  // Eigenvalues come in +/- lambda pairs; the product below counts each
  // (1 + lambda^2) twice.
  const int modes = static_cast<int>(gamma.rows() / 2);
  double log_product = 0.0;
  for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j)
    log_product += std::log1p(es.eigenvalues()(j) * es.eigenvalues()(j));
  return std::exp(0.5 * log_product) / std::pow(2.0, modes);
}

Eigen::MatrixXd clip_physical(const Eigen::MatrixXd& gamma) {
  const StandardForm form = standard_form(gamma);
  const Eigen::Index n = gamma.rows();
  const int modes = static_cast<int>(n / 2);
  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < modes; ++j) {
    const double lambda = std::clamp(form.lambda(j), -1.0, 1.0);
    block(2 * j, 2 * j + 1) = lambda;
    block(2 * j + 1, 2 * j) = -lambda;
  }
  Eigen::MatrixXd out = form.O.transpose() * block * form.O;
  for (Eigen::Index k = 0; k < n; ++k) {
    out(k, k) = 0.0;
    for (Eigen::Index l = k + 1; l < n; ++l) out(l, k) = -out(k, l);
  }
  return out;
}

}  // namespace mstdvp::gaussian

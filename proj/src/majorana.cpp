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

#include "mstdvp/majorana.hpp"

#include <algorithm>
#include <cmath>

namespace mstdvp {

std::pair<int, std::vector<int>> canonical_indices(std::vector<int> indices) {
  int sign = 1;
  bool dirty = true;
  while (dirty) {
    dirty = false;
    std::size_t i = 0;
    while (i + 1 < indices.size()) {
      if (indices[i] == indices[i + 1]) {
        // c_k c_k = 1
        indices.erase(indices.begin() + static_cast<long>(i),
                      indices.begin() + static_cast<long>(i) + 2);
        dirty = true;
        if (i > 0) --i;
      } else if (indices[i] > indices[i + 1]) {
        std::swap(indices[i], indices[i + 1]);
        sign = -sign;
        dirty = true;
        ++i;
      } else {
        ++i;
      }
    }
  }
  return {sign, std::move(indices)};
}

PolynomialOperator PolynomialOperator::constant(cxd value) {
  return monomial(value, {});
}

PolynomialOperator PolynomialOperator::monomial(cxd coeff,
                                                std::vector<int> indices) {
  for (int k : indices) {
    if (k < 0) throw InvariantError("negative Majorana index");
  }
  auto [sign, canon] = canonical_indices(std::move(indices));
  PolynomialOperator p;
  p.terms_.push_back({coeff * static_cast<double>(sign), std::move(canon)});
  p.normalize();
  return p;
}

int PolynomialOperator::degree() const {
  std::size_t d = 0;
  for (const auto& m : terms_) d = std::max(d, m.indices.size());
  return static_cast<int>(d);
}

int PolynomialOperator::max_index() const {
  int top = -1;
  for (const auto& m : terms_)
    if (!m.indices.empty()) top = std::max(top, m.indices.back());
  return top;
}

namespace {

bool monomial_order(const MajoranaMonomial& a, const MajoranaMonomial& b) {
  if (a.indices.size() != b.indices.size())
    return a.indices.size() < b.indices.size();
  return a.indices < b.indices;
}

// (c_{i1} ... c_{ik})^dag = c_{ik} ... c_{i1}: reversing k distinct
// anticommuting factors costs (-1)^{k(k-1)/2}.
double reversal_sign(std::size_t k) {
  return (k * (k - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
}

}  // namespace

void PolynomialOperator::normalize() {
  std::sort(terms_.begin(), terms_.end(), monomial_order);
  std::vector<MajoranaMonomial> merged;
  for (auto& m : terms_) {
    if (!merged.empty() && merged.back().indices == m.indices) {
      merged.back().coeff += m.coeff;
    } else {
      merged.push_back(std::move(m));
    }
  }
  std::erase_if(merged, [](const MajoranaMonomial& m) {
    return m.coeff == cxd(0.0, 0.0);
  });
  terms_ = std::move(merged);
}

PolynomialOperator PolynomialOperator::adjoint() const {
  PolynomialOperator out;
  out.terms_ = terms_;
  for (auto& m : out.terms_)
    m.coeff = std::conj(m.coeff) * reversal_sign(m.indices.size());
  out.normalize();
  return out;
}

bool PolynomialOperator::is_hermitian(double tol) const {
  PolynomialOperator diff = *this - adjoint();
  for (const auto& m : diff.terms_)
    if (std::abs(m.coeff) > tol) return false;
  return true;
}

PolynomialOperator PolynomialOperator::compressed(double eps) const {
  PolynomialOperator out;
  out.terms_ = terms_;
  std::erase_if(out.terms_, [eps](const MajoranaMonomial& m) {
    return std::abs(m.coeff) <= eps;
  });
  return out;
}

PolynomialOperator& PolynomialOperator::operator+=(
    const PolynomialOperator& rhs) {
  terms_.insert(terms_.end(), rhs.terms_.begin(), rhs.terms_.end());
  normalize();
  return *this;
}

PolynomialOperator& PolynomialOperator::operator-=(
    const PolynomialOperator& rhs) {
  for (const auto& m : rhs.terms_) terms_.push_back({-m.coeff, m.indices});
  normalize();
  return *this;
}

PolynomialOperator& PolynomialOperator::operator*=(cxd scale) {
  if (scale == cxd(0.0, 0.0)) {
    terms_.clear();
    return *this;
  }
  for (auto& m : terms_) m.coeff *= scale;
  return *this;
}

PolynomialOperator PolynomialOperator::operator*(
    const PolynomialOperator& rhs) const {
  PolynomialOperator out;
  out.terms_.reserve(terms_.size() * rhs.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : rhs.terms_) {
      std::vector<int> idx;
      idx.reserve(a.indices.size() + b.indices.size());
      idx.insert(idx.end(), a.indices.begin(), a.indices.end());
      idx.insert(idx.end(), b.indices.begin(), b.indices.end());
      auto [sign, canon] = canonical_indices(std::move(idx));
      out.terms_.push_back(
          {a.coeff * b.coeff * static_cast<double>(sign), std::move(canon)});
    }
  }
  out.normalize();
  return out;
}

PolynomialOperator to_majorana_polynomial(
    const std::vector<FermionTerm>& terms) {
  PolynomialOperator total;
  for (const auto& term : terms) {
    PolynomialOperator factor_product = PolynomialOperator::constant(term.coeff);
    for (const auto& op : term.factors) {
      if (op.mode < 0) throw InvariantError("malformed term: negative mode");
      // a = (c_{2m} - i c_{2m+1})/2, a^dag = (c_{2m} + i c_{2m+1})/2
      const cxd half_i = op.create ? cxd(0.0, 0.5) : cxd(0.0, -0.5);
      PolynomialOperator ladder =
          PolynomialOperator::monomial(0.5, {2 * op.mode}) +
          PolynomialOperator::monomial(half_i, {2 * op.mode + 1});
      factor_product = factor_product * ladder;
    }
    total += factor_product;
  }
  return total;
}

int LindbladSpec::min_modes() const {
  int n = hamiltonian.min_modes();
  for (const auto& j : jumps) n = std::max(n, j.op.min_modes());
  return n;
}

void LindbladSpec::validate(double tol) const {
  if (!hamiltonian.is_hermitian(tol))
    throw InvariantError("LindbladSpec: Hamiltonian is not Hermitian");
  for (const auto& j : jumps)
    if (!(j.rate >= 0.0))
      throw InvariantError("LindbladSpec: negative jump rate");
}

}  // namespace mstdvp

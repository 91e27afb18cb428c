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

#include <utility>
#include <vector>

#include "mstdvp/common.hpp"

namespace mstdvp {

// Symbolic operators over the Majorana algebra {c_k, c_l} = 2 delta_kl.
// Mode m (0-based) owns the two Majoranas c_{2m} = a_m^dag + a_m and
// c_{2m+1} = -i(a_m^dag - a_m), so a_m = (c_{2m} - i c_{2m+1})/2.

/// One term coeff * c_{i0} c_{i1} ... with strictly increasing indices.
/// An empty index list is the identity.
struct MajoranaMonomial {
  cxd coeff;
  std::vector<int> indices;
};

/// Sorts `indices` into strictly increasing order, cancelling repeated
/// Majoranas via c_k^2 = 1.  Returns the sign (+1/-1) collected from the
/// transpositions; exact integer bookkeeping, no floating point.
std::pair<int, std::vector<int>> canonical_indices(std::vector<int> indices);

/// Finite sum of Majorana monomials, kept in canonical form: every monomial
/// reduced, monomials ordered by (degree, indices), duplicates merged,
/// exact-zero coefficients dropped.
class PolynomialOperator {
 public:
  PolynomialOperator() = default;  // zero operator

  static PolynomialOperator constant(cxd value);
  /// Builds coeff * c_{i...} from an arbitrary (unsorted, repeating) list.
  static PolynomialOperator monomial(cxd coeff, std::vector<int> indices);

  const std::vector<MajoranaMonomial>& monomials() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Largest monomial length (0 for the zero or constant operator).
  int degree() const;
  /// Largest Majorana index present, -1 if none.
  int max_index() const;
  /// Smallest mode count able to host this operator.
  int min_modes() const { return max_index() < 0 ? 0 : max_index() / 2 + 1; }

  PolynomialOperator adjoint() const;
  bool is_hermitian(double tol = 1e-12) const;
  /// Drops monomials with |coeff| <= eps.
  PolynomialOperator compressed(double eps) const;

  PolynomialOperator& operator+=(const PolynomialOperator& rhs);
  PolynomialOperator& operator-=(const PolynomialOperator& rhs);
  PolynomialOperator& operator*=(cxd scale);

  friend PolynomialOperator operator+(PolynomialOperator a,
                                      const PolynomialOperator& b) {
    return a += b;
  }
  friend PolynomialOperator operator-(PolynomialOperator a,
                                      const PolynomialOperator& b) {
    return a -= b;
  }
  friend PolynomialOperator operator*(PolynomialOperator a, cxd s) {
    return a *= s;
  }
  friend PolynomialOperator operator*(cxd s, PolynomialOperator a) {
    return a *= s;
  }
  PolynomialOperator operator*(const PolynomialOperator& rhs) const;

 private:
  void normalize();
  std::vector<MajoranaMonomial> terms_;
};

/// A single ladder operator a_mode or a_mode^dag.
struct LadderOp {
  int mode;
  bool create;
};

/// coeff * (product of ladder operators), e.g. a 4-factor Hubbard term.
struct FermionTerm {
  cxd coeff;
  std::vector<LadderOp> factors;
};

/// Expands second-quantized terms into the Majorana monomial basis.
PolynomialOperator to_majorana_polynomial(const std::vector<FermionTerm>& terms);

/// Generator data: Hamiltonian plus (jump operator, rate) pairs.
struct LindbladSpec {
  PolynomialOperator hamiltonian;
  struct Jump {
    PolynomialOperator op;
    double rate;
  };
  std::vector<Jump> jumps;

  int min_modes() const;
  /// Throws InvariantError on a non-Hermitian Hamiltonian or negative rate.
  void validate(double tol = 1e-12) const;
};

}  // namespace mstdvp

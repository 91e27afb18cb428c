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

#include <doctest.h>

#include "mstdvp/fock.hpp"
#include "mstdvp/majorana.hpp"
#include "mstdvp/random.hpp"
#include "test_util.hpp"

using namespace mstdvp;

TEST_CASE("canonical index reduction") {
  SUBCASE("already sorted") {
    auto [sign, idx] = canonical_indices({0, 2, 5});
    CHECK(sign == 1);
    CHECK(idx == std::vector<int>{0, 2, 5});
  }
  SUBCASE("one transposition") {
    auto [sign, idx] = canonical_indices({3, 1});
    CHECK(sign == -1);
    CHECK(idx == std::vector<int>{1, 3});
  }
  SUBCASE("square cancels") {
    auto [sign, idx] = canonical_indices({2, 2});
    CHECK(sign == 1);
    CHECK(idx.empty());
  }
  SUBCASE("c1 c2 c1 = -c2") {
    auto [sign, idx] = canonical_indices({1, 2, 1});
    CHECK(sign == -1);
    CHECK(idx == std::vector<int>{2});
  }
  SUBCASE("full reversal of four") {
    // (-1)^{4*3/2} = 1... but reversal needs 6 transpositions
    auto [sign, idx] = canonical_indices({3, 2, 1, 0});
    CHECK(sign == 1);
    CHECK(idx == std::vector<int>{0, 1, 2, 3});
  }
}

TEST_CASE("polynomial algebra against dense realization") {
  rnd::Rng rng(11);
  const int modes = 3;

  auto random_poly = [&](int terms) {
    PolynomialOperator p;
    for (int t = 0; t < terms; ++t) {
      std::vector<int> idx;
      const int len = rng.uniform_int(0, 4);
      for (int i = 0; i < len; ++i)
        idx.push_back(rng.uniform_int(0, 2 * modes - 1));
      p += PolynomialOperator::monomial(cxd(rng.gauss(), rng.gauss()), idx);
    }
    return p;
  };

  for (int trial = 0; trial < 20; ++trial) {
    const PolynomialOperator a = random_poly(4);
    const PolynomialOperator b = random_poly(4);
    const Eigen::MatrixXcd da = fock::dense_operator(a, modes);
    const Eigen::MatrixXcd db = fock::dense_operator(b, modes);
    CHECK(test::max_abs_diff(fock::dense_operator(a * b, modes), da * db) <
          1e-12);
    CHECK(test::max_abs_diff(fock::dense_operator(a + b, modes), da + db) <
          1e-12);
    CHECK(test::max_abs_diff(fock::dense_operator(a.adjoint(), modes),
                             da.adjoint()) < 1e-12);
  }
}

TEST_CASE("second-quantized conversion") {
  SUBCASE("number operator") {
    // a^dag a = 1/2 - (i/2) c_{2m} c_{2m+1}
    const PolynomialOperator n =
        to_majorana_polynomial({{1.0, {{1, true}, {1, false}}}});
    REQUIRE(n.monomials().size() == 2);
    CHECK(n.monomials()[0].indices.empty());
    CHECK(n.monomials()[0].coeff == cxd(0.5, 0.0));
    CHECK(n.monomials()[1].indices == std::vector<int>{2, 3});
    CHECK(n.monomials()[1].coeff == cxd(0.0, -0.5));
  }
  SUBCASE("hopping term has four quadratic monomials") {
    const PolynomialOperator hop = to_majorana_polynomial(
        {{1.0, {{0, true}, {1, false}}}, {1.0, {{1, true}, {0, false}}}});
    CHECK(hop.degree() == 2);
    CHECK(hop.monomials().size() == 4);
    CHECK(hop.is_hermitian());
  }
  SUBCASE("empty term list") {
    CHECK(to_majorana_polynomial({}).is_zero());
  }
  SUBCASE("dense equivalence against ladder matrices") {
    // two modes, mixed creation/annihilation string
    const PolynomialOperator p = to_majorana_polynomial(
        {{cxd(0.3, -0.7), {{0, true}, {1, false}}}, {2.0, {{1, true}, {1, false}}}});
    Eigen::MatrixXcd sp = Eigen::MatrixXcd::Zero(2, 2);  // annihilator
    sp(0, 1) = 1.0;
    Eigen::MatrixXcd z = Eigen::MatrixXcd::Identity(2, 2);
    z(1, 1) = -1.0;
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2, 2);
    // mode 0 is bit 0 (fastest index): a_0 = I (x) sp, a_1 = sp (x) Z
    const Eigen::MatrixXcd a0 = test::kron(id, sp);
    const Eigen::MatrixXcd a1 = test::kron(sp, z);
    const Eigen::MatrixXcd expected =
        cxd(0.3, -0.7) * a0.adjoint() * a1 + 2.0 * a1.adjoint() * a1;
    CHECK(test::max_abs_diff(fock::dense_operator(p, 2), expected) < 1e-12);
  }
  SUBCASE("malformed term") {
    CHECK_THROWS_AS(to_majorana_polynomial({{1.0, {{-1, false}}}}),
                    InvariantError);
  }
}

TEST_CASE("hermiticity bookkeeping") {
  // i c_k c_l is Hermitian, c_k c_l is not
  CHECK(PolynomialOperator::monomial(cxd(0.0, 1.5), {0, 3}).is_hermitian());
  CHECK_FALSE(PolynomialOperator::monomial(1.0, {0, 3}).is_hermitian());
  // real quartic monomials are Hermitian
  CHECK(PolynomialOperator::monomial(2.0, {0, 1, 2, 3}).is_hermitian());

  LindbladSpec bad;
  bad.hamiltonian = PolynomialOperator::monomial(1.0, {0, 1});
  CHECK_THROWS_AS(bad.validate(), InvariantError);

  LindbladSpec negative_rate;
  negative_rate.hamiltonian = PolynomialOperator::constant(0.0);
  negative_rate.jumps.push_back({PolynomialOperator::monomial(1.0, {0}), -1.0});
  CHECK_THROWS_AS(negative_rate.validate(), InvariantError);
}

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

#include <cmath>

#include "mstdvp/fock.hpp"
#include "mstdvp/random.hpp"
#include "test_util.hpp"

using namespace mstdvp;

TEST_CASE("single-mode Majoranas") {
  const auto c = fock::build_majoranas(1);
  Eigen::MatrixXcd c0(2, 2), c1(2, 2);
  c0 << 0, 1, 1, 0;
  c1 << 0, cxd(0, 1), cxd(0, -1), 0;
  CHECK(test::max_abs_diff(c[0], c0) == 0.0);
  CHECK(test::max_abs_diff(c[1], c1) == 0.0);
}

TEST_CASE("Majorana algebra is exact") {
  for (int modes : {2, 4, 6}) {
    const auto c = fock::build_majoranas(modes);
    const Eigen::MatrixXcd eye =
        Eigen::MatrixXcd::Identity(c[0].rows(), c[0].cols());
    for (std::size_t k = 0; k < c.size(); ++k) {
      CHECK(std::abs(c[k].trace()) == 0.0);
      CHECK(test::max_abs_diff(c[k], c[k].adjoint().eval()) == 0.0);
      for (std::size_t l = k; l < c.size(); ++l) {
        const Eigen::MatrixXcd anti = c[k] * c[l] + c[l] * c[k];
        const Eigen::MatrixXcd expected = (k == l) ? 2.0 * eye : 0.0 * eye;
        CHECK(test::max_abs_diff(anti, expected) == 0.0);
      }
    }
  }
}

TEST_CASE("dense cap") {
  CHECK_THROWS_AS(fock::fock_dim(13), InvariantError);
  CHECK_THROWS_AS(fock::fock_dim(0), InvariantError);
  CHECK(fock::fock_dim(12) == 4096);
}

TEST_CASE("lindblad_rhs basics") {
  SUBCASE("zero generator") {
    LindbladSpec spec;  // H = 0, no jumps
    const auto gen = fock::realize(spec, 2);
    rnd::Rng rng(3);
    const Eigen::MatrixXcd rho = rnd::random_density(rng, 4);
    CHECK(fock::lindblad_rhs(gen, rho).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("single-mode amplitude decay") {
    LindbladSpec spec;
    spec.jumps.push_back(
        {to_majorana_polynomial({{1.0, {{0, false}}}}), 1.0});
    const auto gen = fock::realize(spec, 1);
    const Eigen::MatrixXcd rho = fock::basis_projector({true});
    const Eigen::MatrixXcd expected =
        fock::basis_projector({false}) - fock::basis_projector({true});
    CHECK(test::max_abs_diff(fock::lindblad_rhs(gen, rho), expected) < 1e-14);
  }
  SUBCASE("commuting Hamiltonian, no jumps") {
    LindbladSpec spec;
    spec.hamiltonian = to_majorana_polynomial(
        {{0.7, {{0, true}, {0, false}}}, {-1.3, {{1, true}, {1, false}}}});
    const auto gen = fock::realize(spec, 2);
    // any diagonal state commutes with a number-conserving diagonal H
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(4, 4);
    rho.diagonal() << 0.4, 0.3, 0.2, 0.1;
    CHECK(fock::lindblad_rhs(gen, rho).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("dimension mismatch") {
    LindbladSpec spec;
    const auto gen = fock::realize(spec, 2);
    CHECK_THROWS_AS(
        fock::lindblad_rhs(gen, Eigen::MatrixXcd::Identity(8, 8)),
        InvariantError);
  }
}

TEST_CASE("generator preserves the trace") {
  rnd::Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int modes = rng.uniform_int(2, 4);
    const LindbladSpec spec = rnd::random_spec(rng, modes, 2, 2);
    const auto gen = fock::realize(spec, modes);
    const Eigen::MatrixXcd rho = rnd::random_density(rng, gen.dim);
    const Eigen::MatrixXcd rhs = fock::lindblad_rhs(gen, rho);
    CHECK(std::abs(rhs.trace()) < 1e-10);
    CHECK(test::max_abs_diff(rhs, rhs.adjoint().eval()) < 1e-12);
  }
}

TEST_CASE("integrate_exact") {
  SUBCASE("frozen generator keeps the state") {
    LindbladSpec spec;
    const auto gen = fock::realize(spec, 2);
    rnd::Rng rng(5);
    const Eigen::MatrixXcd rho0 = rnd::random_density(rng, 4);
    const auto traj = fock::integrate_exact(gen, rho0, 1.0, 1e-2, 0.5);
    for (const auto& rho : traj.states)
      CHECK(test::max_abs_diff(rho, rho0) == 0.0);
  }
  SUBCASE("single decaying mode follows exp(-t)") {
    LindbladSpec spec;
    spec.jumps.push_back(
        {to_majorana_polynomial({{1.0, {{0, false}}}}), 1.0});
    const auto gen = fock::realize(spec, 1);
    const Eigen::MatrixXcd rho0 = fock::basis_projector({true});
    const PolynomialOperator number =
        to_majorana_polynomial({{1.0, {{0, true}, {0, false}}}});
    const auto traj = fock::integrate_exact(gen, rho0, 5.0, 1e-3, 0.5);
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
      const double n = fock::expectation(number, traj.states[i]).real();
      CHECK(std::abs(n - std::exp(-traj.times[i])) < 1e-6);
      CHECK(std::abs(traj.states[i].trace().real() - 1.0) < 1e-9);
    }
  }
  SUBCASE("positivity under random generators") {
    rnd::Rng rng(23);
    for (int trial = 0; trial < 3; ++trial) {
      const int modes = 2 + trial % 2;
      LindbladSpec spec = rnd::random_spec(rng, modes, 2, 2);
      for (auto& jump : spec.jumps) jump.rate = std::min(jump.rate, 1.0);
      const auto gen = fock::realize(spec, modes);
      const Eigen::MatrixXcd rho0 = rnd::random_density(rng, gen.dim);
      // check_density inside the integrator enforces min eigenvalue >= -1e-9
      const auto traj = fock::integrate_exact(gen, rho0, 5.0, 1e-3, 1.0);
      CHECK(traj.times.back() == doctest::Approx(5.0));
    }
  }
  SUBCASE("input validation") {
    LindbladSpec spec;
    const auto gen = fock::realize(spec, 1);
    const Eigen::MatrixXcd rho0 = fock::basis_projector({false});
    CHECK_THROWS_AS(fock::integrate_exact(gen, rho0, 1.0, 0.0), InvariantError);
    CHECK_THROWS_AS(fock::integrate_exact(gen, rho0, 1.0, 1e-2, 1e-3),
                    InvariantError);
  }
}

TEST_CASE("ground_state") {
  SUBCASE("diagonal Hamiltonian") {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(4, 4);
    h.diagonal() << 0, 1, 2, 3;
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
    expected(0, 0) = 1.0;
    CHECK(test::max_abs_diff(fock::ground_state(h), expected) < 1e-14);
  }
  SUBCASE("-Z picks the +1 eigenvector of Z") {
    Eigen::MatrixXcd h(2, 2);
    h << -1, 0, 0, 1;
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(2, 2);
    expected(0, 0) = 1.0;  // Z e0 = +e0
    CHECK(test::max_abs_diff(fock::ground_state(h), expected) < 1e-14);
  }
  SUBCASE("degenerate spectrum is rejected") {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(3, 3);
    h.diagonal() << 0, 0, 1;
    CHECK_THROWS_AS(fock::ground_state(h), NumericalError);
  }
  SUBCASE("non-Hermitian input is rejected") {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2, 2);
    h(0, 1) = 1.0;
    CHECK_THROWS_AS(fock::ground_state(h), InvariantError);
  }
}

TEST_CASE("hs_distance") {
  rnd::Rng rng(7);
  const Eigen::MatrixXcd a = rnd::random_complex(rng, 5, 5);
  CHECK(fock::hs_distance(a, a) == 0.0);
  CHECK(fock::hs_distance(Eigen::MatrixXcd::Identity(2, 2),
                          Eigen::MatrixXcd::Zero(2, 2)) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  const Eigen::MatrixXcd b = rnd::random_complex(rng, 5, 5);
  double direct = 0.0;
  for (Eigen::Index i = 0; i < 5; ++i)
    for (Eigen::Index j = 0; j < 5; ++j)
      direct += std::norm(a(i, j) - b(i, j));
  CHECK(std::abs(fock::hs_distance(a, b) - std::sqrt(direct)) < 1e-12);
  // spectral norm of a known diagonal difference
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(3, 3);
  d.diagonal() << 3.0, -4.0, 1.0;
  CHECK(fock::hs_distance(d, Eigen::MatrixXcd::Zero(3, 3),
                          NormKind::Spectral) == doctest::Approx(4.0));
  CHECK_THROWS_AS(fock::hs_distance(a, Eigen::MatrixXcd::Zero(2, 2)),
                  InvariantError);
}

TEST_CASE("basis vectors and expectation") {
  const Eigen::VectorXcd vac = fock::basis_vector({false, false});
  CHECK(vac(0) == cxd(1.0, 0.0));
  const Eigen::VectorXcd full = fock::basis_vector({true, true});
  CHECK(full(3) == cxd(1.0, 0.0));
  // <n_0> on |10> (mode 0 occupied, mode 1 empty)
  const Eigen::MatrixXcd rho = fock::basis_projector({true, false});
  const PolynomialOperator n0 =
      to_majorana_polynomial({{1.0, {{0, true}, {0, false}}}});
  const PolynomialOperator n1 =
      to_majorana_polynomial({{1.0, {{1, true}, {1, false}}}});
  CHECK(fock::expectation(n0, rho).real() == doctest::Approx(1.0));
  CHECK(fock::expectation(n1, rho).real() == doctest::Approx(0.0));
}

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

#include "mstdvp/hubbard.hpp"

#include "mstdvp/fock.hpp"
#include "mstdvp/gaussified.hpp"

namespace mstdvp::hubbard {

int mode_index(int site, int spin) { return 2 * site + spin; }

int mode_count(const HubbardParams& params) { return 2 * params.sites; }

namespace {

void validate(const HubbardParams& p) {
  if (p.sites < 2) throw InvariantError("HubbardParams: sites must be >= 2");
  if (!(p.decoherence >= 0.0))
    throw InvariantError("HubbardParams: negative decoherence rate");
}

PolynomialOperator number_op(int mode) {
  return to_majorana_polynomial(
      {{1.0, {{mode, true}, {mode, false}}}});
}

PolynomialOperator sz_op(int site) {
  // Sz_x = (n_up - n_down)/2
  PolynomialOperator sz = number_op(mode_index(site, 0));
  sz -= number_op(mode_index(site, 1));
  return sz * cxd(0.5, 0.0);
}

}  // namespace

LindbladSpec build_hubbard(const HubbardParams& params) {
  validate(params);
  const int sites = params.sites;
  std::vector<FermionTerm> terms;

  const int bonds = params.periodic ? sites : sites - 1;
  for (int x = 0; x < bonds; ++x) {
    const int next = (x + 1) % sites;
    for (int s = 0; s < 2; ++s) {
      const int a = mode_index(x, s);
      const int b = mode_index(next, s);
      terms.push_back({params.hopping, {{a, true}, {b, false}}});
      terms.push_back({params.hopping, {{b, true}, {a, false}}});  // h.c.
    }
  }
  for (int x = 0; x < sites; ++x) {
    terms.push_back({params.interaction,
                     {{mode_index(x, 0), true},
                      {mode_index(x, 0), false},
                      {mode_index(x, 1), true},
                      {mode_index(x, 1), false}}});
  }
  for (int x = 0; x < sites; ++x)
    for (int s = 0; s < 2; ++s)
      terms.push_back({params.chemical_potential,
                       {{mode_index(x, s), true}, {mode_index(x, s), false}}});

  LindbladSpec spec;
  spec.hamiltonian = to_majorana_polynomial(terms);
  if (params.decoherence > 0.0) {
    for (int x = 0; x < sites; ++x) {
      const PolynomialOperator j = to_majorana_polynomial(
          {{1.0, {{mode_index(x, 0), true}, {mode_index(x, 1), false}}}});
      spec.jumps.push_back({j, params.decoherence});
    }
  }
  spec.validate();
  return spec;
}

namespace {

template <typename State, typename Expect>
Occupations occupations_impl(const State& state, int sites, Expect&& expect) {
  Occupations occ;
  occ.site_up.resize(static_cast<std::size_t>(sites));
  occ.site_down.resize(static_cast<std::size_t>(sites));
  for (int x = 0; x < sites; ++x) {
    for (int s = 0; s < 2; ++s) {
      const double n =
          expect(number_op(mode_index(x, s)), state).real();
      if (s == 0) {
        occ.site_up[static_cast<std::size_t>(x)] = n;
        occ.n_up += n;
      } else {
        occ.site_down[static_cast<std::size_t>(x)] = n;
        occ.n_down += n;
      }
    }
  }
  return occ;
}

template <typename State, typename Expect>
SpinOrder spin_order_impl(const State& state, int sites, bool periodic,
                          Expect&& expect) {
  SpinOrder order;
  order.local_sz.resize(static_cast<std::size_t>(sites));
  for (int x = 0; x < sites; ++x)
    order.local_sz[static_cast<std::size_t>(x)] =
        expect(sz_op(x), state).real();

  const int bonds = periodic ? sites : sites - 1;
  double acc = 0.0;
  for (int x = 0; x < bonds; ++x) {
    const int next = (x + 1) % sites;
    acc += expect(sz_op(x) * sz_op(next), state).real();
  }
  order.nn_correlator = acc / static_cast<double>(bonds);

  double stag = 0.0;
  for (int x = 0; x < sites; ++x)
    stag += (x % 2 == 0 ? 1.0 : -1.0) *
            order.local_sz[static_cast<std::size_t>(x)];
  order.staggered_magnetization = stag / static_cast<double>(sites);
  return order;
}

}  // namespace

Occupations occupations(const Eigen::MatrixXcd& rho, int sites) {
  return occupations_impl(rho, sites,
                          [](const PolynomialOperator& p,
                             const Eigen::MatrixXcd& s) {
                            return fock::expectation(p, s);
                          });
}

Occupations occupations(const Eigen::MatrixXd& gamma, int sites) {
  return occupations_impl(gamma, sites,
                          [](const PolynomialOperator& p,
                             const Eigen::MatrixXd& g) {
                            return gaussified::expectation(p, g);
                          });
}

SpinOrder spin_order(const Eigen::MatrixXcd& rho, int sites, bool periodic) {
  return spin_order_impl(rho, sites, periodic,
                         [](const PolynomialOperator& p,
                            const Eigen::MatrixXcd& s) {
                           return fock::expectation(p, s);
                         });
}

SpinOrder spin_order(const Eigen::MatrixXd& gamma, int sites, bool periodic) {
  return spin_order_impl(gamma, sites, periodic,
                         [](const PolynomialOperator& p,
                            const Eigen::MatrixXd& g) {
                           return gaussified::expectation(p, g);
                         });
}

Eigen::MatrixXcd polarized_state(int sites) {
  std::vector<bool> occ(static_cast<std::size_t>(2 * sites), false);
  for (int x = 0; x < sites; ++x)
    occ[static_cast<std::size_t>(mode_index(x, 0))] = true;
  return fock::basis_projector(occ);
}

Eigen::MatrixXd polarized_covariance(int sites) {
  const int n = 4 * sites;
  Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(n, n);
  for (int m = 0; m < 2 * sites; ++m) {
    // occupied modes carry Gamma block -J, empty ones +J
    const bool occupied = (m % 2 == 0);
    gamma(2 * m, 2 * m + 1) = occupied ? -1.0 : 1.0;
    gamma(2 * m + 1, 2 * m) = -gamma(2 * m, 2 * m + 1);
  }
  return gamma;
}

}  // namespace mstdvp::hubbard

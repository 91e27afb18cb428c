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

#include "mstdvp/fock.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace mstdvp::fock {

Eigen::Index fock_dim(int modes) {
  if (modes < 1) throw InvariantError("mode count must be >= 1");
  if (modes > kMaxDenseModes) {
    std::ostringstream msg;
    msg << "mode count " << modes << " exceeds the dense cap of "
        << kMaxDenseModes;
    throw InvariantError(msg.str());
  }
  return Eigen::Index{1} << modes;
}

SignedPermutation SignedPermutation::identity(Eigen::Index dim) {
  SignedPermutation p;
  p.target.resize(static_cast<std::size_t>(dim));
  p.phase.assign(static_cast<std::size_t>(dim), cxd(1.0, 0.0));
  for (Eigen::Index j = 0; j < dim; ++j) p.target[j] = j;
  return p;
}

SignedPermutation compose(const SignedPermutation& a,
                          const SignedPermutation& b) {
  if (a.dim() != b.dim()) throw InvariantError("compose: dimension mismatch");
  SignedPermutation out;
  const Eigen::Index dim = a.dim();
  out.target.resize(static_cast<std::size_t>(dim));
  out.phase.resize(static_cast<std::size_t>(dim));
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Eigen::Index mid = b.target[j];
    out.target[j] = a.target[mid];
    out.phase[j] = b.phase[j] * a.phase[mid];
  }
  return out;
}

SignedPermutation majorana_permutation(int modes, int k) {
  if (k < 0 || k >= 2 * modes)
    throw InvariantError("Majorana index out of range");
  const Eigen::Index dim = fock_dim(modes);
  const int mode = k / 2;
  const bool second = (k % 2) != 0;  // c_{2m+1} flavor
  const std::uint64_t string_mask = (std::uint64_t{1} << mode) - 1;
  const std::uint64_t flip = std::uint64_t{1} << mode;

  SignedPermutation p;
  p.target.resize(static_cast<std::size_t>(dim));
  p.phase.resize(static_cast<std::size_t>(dim));
  for (Eigen::Index j = 0; j < dim; ++j) {
    const auto b = static_cast<std::uint64_t>(j);
    const double string =
        (std::popcount(b & string_mask) % 2 == 0) ? 1.0 : -1.0;
    cxd phase(string, 0.0);
    if (second) {
      // c_{2m+1} = -i(a^dag - a): -i on creation, +i on annihilation.
      phase *= (b & flip) ? cxd(0.0, 1.0) : cxd(0.0, -1.0);
    }
    p.target[j] = static_cast<Eigen::Index>(b ^ flip);
    p.phase[j] = phase;
  }
  return p;
}

cxd trace_with(const SignedPermutation& m, const Eigen::MatrixXcd& rho) {
  if (m.dim() != rho.rows() || rho.rows() != rho.cols())
    throw InvariantError("trace_with: dimension mismatch");
  cxd acc(0.0, 0.0);
  for (Eigen::Index j = 0; j < m.dim(); ++j)
    acc += m.phase[j] * rho(j, m.target[j]);
  return acc;
}

std::vector<Eigen::MatrixXcd> build_majoranas(int modes) {
  const Eigen::Index dim = fock_dim(modes);
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(static_cast<std::size_t>(2 * modes));
  for (int k = 0; k < 2 * modes; ++k) {
    const SignedPermutation p = majorana_permutation(modes, k);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) m(p.target[j], j) = p.phase[j];
    out.push_back(std::move(m));
  }
  return out;
}

namespace {

SignedPermutation monomial_permutation(const MajoranaMonomial& mono,
                                       int modes) {
  const Eigen::Index dim = fock_dim(modes);
  SignedPermutation acc = SignedPermutation::identity(dim);
  // Rightmost factor acts first.
  for (auto it = mono.indices.rbegin(); it != mono.indices.rend(); ++it)
    acc = compose(majorana_permutation(modes, *it), acc);
  return acc;
}

}  // namespace

Eigen::MatrixXcd dense_operator(const PolynomialOperator& p, int modes) {
  const Eigen::Index dim = fock_dim(modes);
  if (p.min_modes() > modes)
    throw InvariantError("polynomial references modes beyond the given count");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& mono : p.monomials()) {
    const SignedPermutation perm = monomial_permutation(mono, modes);
    for (Eigen::Index j = 0; j < dim; ++j)
      out(perm.target[j], j) += mono.coeff * perm.phase[j];
  }
  return out;
}

SpMat sparse_operator(const PolynomialOperator& p, int modes) {
  const Eigen::Index dim = fock_dim(modes);
  if (p.min_modes() > modes)
    throw InvariantError("polynomial references modes beyond the given count");
  std::vector<Eigen::Triplet<cxd>> triplets;
  triplets.reserve(p.monomials().size() * static_cast<std::size_t>(dim));
  for (const auto& mono : p.monomials()) {
    const SignedPermutation perm = monomial_permutation(mono, modes);
    for (Eigen::Index j = 0; j < dim; ++j)
      triplets.emplace_back(static_cast<int>(perm.target[j]),
                            static_cast<int>(j), mono.coeff * perm.phase[j]);
  }
  SpMat m(dim, dim);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.prune([](int, int, const cxd& v) { return v != cxd(0.0, 0.0); });
  m.makeCompressed();
  return m;
}

cxd expectation(const PolynomialOperator& p, const Eigen::MatrixXcd& rho) {
  const Eigen::Index dim = rho.rows();
  int modes = 0;
  while ((Eigen::Index{1} << modes) < dim) ++modes;
  if ((Eigen::Index{1} << modes) != dim)
    throw InvariantError("state dimension is not a power of two");
  cxd acc(0.0, 0.0);
  for (const auto& mono : p.monomials())
    acc += mono.coeff * trace_with(monomial_permutation(mono, modes), rho);
  return acc;
}

Eigen::VectorXcd basis_vector(const std::vector<bool>& occupations) {
  const int modes = static_cast<int>(occupations.size());
  const Eigen::Index dim = fock_dim(modes);
  std::uint64_t idx = 0;
  for (int m = 0; m < modes; ++m)
    if (occupations[static_cast<std::size_t>(m)]) idx |= std::uint64_t{1} << m;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(static_cast<Eigen::Index>(idx)) = cxd(1.0, 0.0);
  return v;
}

Eigen::MatrixXcd basis_projector(const std::vector<bool>& occupations) {
  const Eigen::VectorXcd v = basis_vector(occupations);
  return v * v.adjoint();
}

void check_density(const Eigen::MatrixXcd& rho, double herm_tol,
                   double trace_tol, double eig_floor) {
  if (rho.rows() != rho.cols()) throw InvariantError("density: not square");
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > herm_tol) {
    std::ostringstream msg;
    msg << "density: Hermiticity violated by " << herm;
    throw InvariantError(msg.str());
  }
  const double trace_err = std::abs(rho.trace() - cxd(1.0, 0.0));
  if (trace_err > trace_tol) {
    std::ostringstream msg;
    msg << "density: trace deviates from 1 by " << trace_err;
    throw InvariantError(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho,
                                                     Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < eig_floor) {
    std::ostringstream msg;
    msg << "density: minimum eigenvalue " << min_eig << " below floor "
        << eig_floor;
    throw InvariantError(msg.str());
  }
}

DenseGenerator realize(const LindbladSpec& spec, int modes) {
  spec.validate();
  if (spec.min_modes() > modes)
    throw InvariantError("spec references modes beyond the given count");
  DenseGenerator gen;
  gen.dim = fock_dim(modes);
  gen.hamiltonian = sparse_operator(spec.hamiltonian, modes);
  for (const auto& jump : spec.jumps) {
    DenseGenerator::Jump j;
    j.op = sparse_operator(jump.op, modes);
    j.dag_op = sparse_operator(jump.op.adjoint() * jump.op, modes);
    j.rate = jump.rate;
    gen.jumps.push_back(std::move(j));
  }
  return gen;
}

DenseGenerator make_generator(
    const Eigen::MatrixXcd& hamiltonian,
    const std::vector<std::pair<Eigen::MatrixXcd, double>>& jumps) {
  const double herm =
      (hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-12)
    throw InvariantError("make_generator: Hamiltonian is not Hermitian");
  DenseGenerator gen;
  gen.dim = hamiltonian.rows();
  gen.hamiltonian = hamiltonian.sparseView();
  gen.hamiltonian.makeCompressed();
  for (const auto& [op, rate] : jumps) {
    if (op.rows() != gen.dim || op.cols() != gen.dim)
      throw InvariantError("make_generator: jump dimension mismatch");
    if (!(rate >= 0.0)) throw InvariantError("make_generator: negative rate");
    DenseGenerator::Jump j;
    j.op = op.sparseView();
    j.op.makeCompressed();
    Eigen::MatrixXcd dag_op = op.adjoint() * op;
    j.dag_op = dag_op.sparseView();
    j.dag_op.makeCompressed();
    j.rate = rate;
    gen.jumps.push_back(std::move(j));
  }
  return gen;
}

namespace {

template <typename Spmm>
Eigen::MatrixXcd lindblad_rhs_impl(const DenseGenerator& gen,
                                   const Eigen::MatrixXcd& rho, Spmm&& mul) {
  if (rho.rows() != gen.dim || rho.cols() != gen.dim)
    throw InvariantError("lindblad_rhs: dimension mismatch");
  const cxd minus_i(0.0, -1.0);
  // rho H = (H rho)^dag for Hermitian H and rho.
  Eigen::MatrixXcd h_rho = mul(gen.hamiltonian, rho);
  Eigen::MatrixXcd out = minus_i * (h_rho - h_rho.adjoint());
  for (const auto& jump : gen.jumps) {
    Eigen::MatrixXcd j_rho = mul(jump.op, rho);
    Eigen::MatrixXcd rho_jdag = j_rho.adjoint();
    Eigen::MatrixXcd sandwich = mul(jump.op, rho_jdag);
    Eigen::MatrixXcd t = mul(jump.dag_op, rho);
    out.noalias() += jump.rate * (sandwich - 0.5 * (t + t.adjoint()));
  }
  return out;
}

}  // namespace

Eigen::MatrixXcd lindblad_rhs(const DenseGenerator& gen,
                              const Eigen::MatrixXcd& rho) {
  return lindblad_rhs_impl(gen, rho, [](const SpMat& a,
                                        const Eigen::MatrixXcd& x) {
    return kernels::spmm(a, x);
  });
}

Eigen::MatrixXcd lindblad_rhs_serial(const DenseGenerator& gen,
                                     const Eigen::MatrixXcd& rho) {
  return lindblad_rhs_impl(gen, rho, [](const SpMat& a,
                                        const Eigen::MatrixXcd& x) {
    return kernels::spmm_serial(a, x);
  });
}

void integrate_exact_observe(
    const DenseGenerator& gen, const Eigen::MatrixXcd& rho0, double t_final,
    double dt, double sample_interval,
    const std::function<void(double, const Eigen::MatrixXcd&)>& observer) {
  if (!(dt > 0.0)) throw InvariantError("integrate_exact: dt must be > 0");
  if (!(t_final >= 0.0)) throw InvariantError("integrate_exact: t_final < 0");
  if (sample_interval < dt)
    throw InvariantError("integrate_exact: sample_interval < dt");
  check_density(rho0);

  const auto steps = static_cast<long>(std::llround(t_final / dt));
  const auto sample_every =
      std::max<long>(1, std::llround(sample_interval / dt));

  Eigen::MatrixXcd rho = rho0;
  observer(0.0, rho);

  Eigen::MatrixXcd k1, k2, k3, k4;
  for (long step = 1; step <= steps; ++step) {
    k1 = lindblad_rhs(gen, rho);
    k2 = lindblad_rhs(gen, rho + (0.5 * dt) * k1);
    k3 = lindblad_rhs(gen, rho + (0.5 * dt) * k2);
    k4 = lindblad_rhs(gen, rho + dt * k3);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    if (step % sample_every == 0 || step == steps) {
      const double t = static_cast<double>(step) * dt;
      try {
        check_density(rho, 1e-12, 1e-9, -1e-9);
      } catch (const InvariantError& err) {
        std::ostringstream msg;
        msg << "integrate_exact: state invariant violated at t = " << t << " ("
            << err.what() << "); the step size is likely too large";
        throw NumericalError(msg.str());
      }
      observer(t, rho);
    }
  }
}

DenseTrajectory integrate_exact(const DenseGenerator& gen,
                                const Eigen::MatrixXcd& rho0, double t_final,
                                double dt, double sample_interval) {
  DenseTrajectory traj;
  integrate_exact_observe(gen, rho0, t_final, dt, sample_interval,
                          [&traj](double t, const Eigen::MatrixXcd& rho) {
                            traj.times.push_back(t);
                            traj.states.push_back(rho);
                          });
  return traj;
}

Eigen::MatrixXcd ground_state(const Eigen::MatrixXcd& hamiltonian,
                              double degeneracy_tol) {
  if (hamiltonian.rows() != hamiltonian.cols())
    throw InvariantError("ground_state: not square");
  const double herm =
      (hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-12)
    throw InvariantError("ground_state: Hamiltonian is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hamiltonian);
  if (es.info() != Eigen::Success)
    throw NumericalError("ground_state: eigensolver failed");
  const auto& evals = es.eigenvalues();
  if (evals.size() >= 2 && evals(1) - evals(0) < degeneracy_tol) {
    std::ostringstream msg;
    msg << "ground_state: lowest eigenvalue degenerate within "
        << degeneracy_tol << " (gap " << evals(1) - evals(0) << ")";
    throw NumericalError(msg.str());
  }
  const Eigen::VectorXcd v = es.eigenvectors().col(0);
  return v * v.adjoint();
}

double hs_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                   NormKind norm) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InvariantError("hs_distance: dimension mismatch");
  if (norm == NormKind::Frobenius) return (a - b).norm();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a - b);
  return svd.singularValues().size() == 0 ? 0.0 : svd.singularValues()(0);
}

}  // namespace mstdvp::fock

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

// Times the OpenMP kernels against their serial references on the default
// workload (4-site chain, 8 modes) and checks that both paths agree bitwise.

#include <chrono>
#include <cstdio>
#include <functional>

#include "mstdvp/fock.hpp"
#include "mstdvp/gaussified.hpp"
#include "mstdvp/hubbard.hpp"
#include "mstdvp/kernels.hpp"
#include "mstdvp/random.hpp"

namespace {

template <typename M>
bool bitwise_equal(const M& a, const M& b) {
  return (a - b).cwiseAbs().maxCoeff() == 0.0;
}

double time_ms(const std::function<void()>& work, int reps) {
  work();  // warm-up
  const auto start = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) work();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count() /
         reps;
}

void report(const char* name, double serial_ms, double parallel_ms,
            bool identical) {
  std::printf("%-28s serial %9.3f ms   parallel %9.3f ms   speedup %5.2fx   "
              "bitwise %s\n",
              name, serial_ms, parallel_ms, serial_ms / parallel_ms,
              identical ? "equal" : "DIFFER");
}

}  // namespace

int main() {
  using namespace mstdvp;

  std::printf("threads: %d\n", kernels::max_threads());
  rnd::Rng rng(42);

  const hubbard::HubbardParams params;  // L = 4, 8 modes, dim 256
  const LindbladSpec spec = hubbard::build_hubbard(params);
  const int modes = hubbard::mode_count(params);
  const fock::DenseGenerator gen = fock::realize(spec, modes);
  const Eigen::MatrixXcd rho = rnd::random_density(rng, gen.dim);

  {
    Eigen::MatrixXcd serial_out, parallel_out;
    const double serial_ms = time_ms(
        [&] { serial_out = fock::lindblad_rhs_serial(gen, rho); }, 20);
    const double parallel_ms =
        time_ms([&] { parallel_out = fock::lindblad_rhs(gen, rho); }, 20);
    report("lindblad_rhs (dim 256)", serial_ms, parallel_ms,
           bitwise_equal(serial_out, parallel_out));
  }

  {
    const gaussified::CmGenerator cm(spec, modes);
    const Eigen::MatrixXd gamma = rnd::random_covariance(rng, modes, 0.8);
    Eigen::MatrixXd serial_out, parallel_out;
    const double serial_ms = time_ms(
        [&] { serial_out = cm.equation_of_motion_serial(gamma); }, 50);
    const double parallel_ms =
        time_ms([&] { parallel_out = cm.equation_of_motion(gamma); }, 50);
    report("cm_equation_of_motion (N=8)", serial_ms, parallel_ms,
           bitwise_equal(serial_out, parallel_out));
  }

  {
    Eigen::SparseMatrix<cxd, Eigen::RowMajor> h = gen.hamiltonian;
    Eigen::MatrixXcd serial_out, parallel_out;
    const double serial_ms =
        time_ms([&] { serial_out = kernels::spmm_serial(h, rho); }, 50);
    const double parallel_ms =
        time_ms([&] { parallel_out = kernels::spmm(h, rho); }, 50);
    report("spmm H*rho (dim 256)", serial_ms, parallel_ms,
           bitwise_equal(serial_out, parallel_out));
  }

  return 0;
}

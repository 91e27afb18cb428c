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

#include "mstdvp/kernels.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace mstdvp::kernels {

namespace {

// One output column: y(:,col) = A x(:,col), rows in CSR order.
inline void spmm_column(const SpMat& a, const Eigen::MatrixXcd& x,
                        Eigen::MatrixXcd& y, Eigen::Index col) {
  const int* outer = a.outerIndexPtr();
  const int* inner = a.innerIndexPtr();
  const cxd* vals = a.valuePtr();
  const cxd* xc = x.col(col).data();
  cxd* yc = y.col(col).data();
  const Eigen::Index rows = a.rows();
  for (Eigen::Index i = 0; i < rows; ++i) {
    cxd acc(0.0, 0.0);
    for (int p = outer[i]; p < outer[i + 1]; ++p) acc += vals[p] * xc[inner[p]];
    yc[i] = acc;
  }
}

}  // namespace

void spmm(const SpMat& a, const Eigen::MatrixXcd& x, Eigen::MatrixXcd& y) {
  if (a.cols() != x.rows()) throw InvariantError("spmm: dimension mismatch");
  y.resize(a.rows(), x.cols());
  const Eigen::Index cols = x.cols();
#pragma omp parallel for schedule(static)
  for (Eigen::Index c = 0; c < cols; ++c) spmm_column(a, x, y, c);
}

void spmm_serial(const SpMat& a, const Eigen::MatrixXcd& x,
                 Eigen::MatrixXcd& y) {
  if (a.cols() != x.rows()) throw InvariantError("spmm: dimension mismatch");
  y.resize(a.rows(), x.cols());
  for (Eigen::Index c = 0; c < x.cols(); ++c) spmm_column(a, x, y, c);
}

Eigen::MatrixXcd spmm(const SpMat& a, const Eigen::MatrixXcd& x) {
  Eigen::MatrixXcd y;
  spmm(a, x, y);
  return y;
}

Eigen::MatrixXcd spmm_serial(const SpMat& a, const Eigen::MatrixXcd& x) {
  Eigen::MatrixXcd y;
  spmm_serial(a, x, y);
  return y;
}

int max_threads() {
#if defined(_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace mstdvp::kernels

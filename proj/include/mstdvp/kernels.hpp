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

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "mstdvp/common.hpp"

namespace mstdvp::kernels {

using SpMat = Eigen::SparseMatrix<cxd, Eigen::RowMajor>;

// Hot inner kernels.  Each has an OpenMP variant and a plain-loop serial
// reference; both run the same per-entry summation order, so their results
// are bit-identical and independent of the thread count.

/// Y = A * X with sparse A (compressed row storage) and dense X.
void spmm(const SpMat& a, const Eigen::MatrixXcd& x, Eigen::MatrixXcd& y);
void spmm_serial(const SpMat& a, const Eigen::MatrixXcd& x,
                 Eigen::MatrixXcd& y);

Eigen::MatrixXcd spmm(const SpMat& a, const Eigen::MatrixXcd& x);
Eigen::MatrixXcd spmm_serial(const SpMat& a, const Eigen::MatrixXcd& x);

int max_threads();

}  // namespace mstdvp::kernels

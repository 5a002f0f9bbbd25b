// core/include/tinyst/tensor.h

// Copyright 2026  The tinyst Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef TINYST_TENSOR_H_
#define TINYST_TENSOR_H_

#include <cstddef>
#include <vector>

namespace tinyst {

// Dense row-major 2-D array of doubles. Everything in the model is rank 2
// (batches are ragged lists of these, never a padded third axis).
struct Tensor {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> v;

  Tensor() = default;
  Tensor(std::size_t r, std::size_t c) : rows(r), cols(c), v(r * c, 0.0) {}

  static Tensor zeros(std::size_t r, std::size_t c) { return Tensor(r, c); }
  static Tensor full(std::size_t r, std::size_t c, double value) {
    Tensor t(r, c);
    for (double& x : t.v) x = value;
    return t;
  }

  double& at(std::size_t i, std::size_t j) { return v[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return v[i * cols + j]; }

  std::size_t size() const { return rows * cols; }
  bool same_shape(const Tensor& o) const {
    return rows == o.rows && cols == o.cols;
  }
  void fill(double value) {
    for (double& x : v) x = value;
  }
};

// C = A(m x k) * B(k x n). ikj loop order keeps B rows hot in cache.
Tensor matmul(const Tensor& a, const Tensor& b);

// C = A(m x k) * B(n x k)^T.
Tensor matmul_nt(const Tensor& a, const Tensor& b);

// C = A(k x m)^T * B(k x n). Used by matmul backward rules.
Tensor matmul_tn(const Tensor& a, const Tensor& b);

void add_inplace(Tensor& dst, const Tensor& src);
// dst += s * src
void axpy_inplace(Tensor& dst, double s, const Tensor& src);

Tensor transpose(const Tensor& a);

bool all_finite(const Tensor& a);

}  // namespace tinyst

#endif  // TINYST_TENSOR_H_

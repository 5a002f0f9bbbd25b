// core/src/tensor.cc

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

#include "tinyst/tensor.h"

#include <cmath>

#include "tinyst/errors.h"

namespace tinyst {

Tensor matmul(const Tensor& a, const Tensor& b) {
  if (a.cols != b.rows) throw LayoutError("matmul shape mismatch");
  Tensor c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    const double* arow = a.v.data() + i * a.cols;
    double* crow = c.v.data() + i * c.cols;
    for (std::size_t k = 0; k < a.cols; ++k) {
      const double aik = arow[k];
      if (aik == 0.0) continue;
      const double* brow = b.v.data() + k * b.cols;
      for (std::size_t j = 0; j < b.cols; ++j) crow[j] += aik * brow[j];
    }
  }
  return c;
}

Tensor matmul_nt(const Tensor& a, const Tensor& b) {
  if (a.cols != b.cols) throw LayoutError("matmul_nt shape mismatch");
  Tensor c(a.rows, b.rows);
  for (std::size_t i = 0; i < a.rows; ++i) {
    const double* arow = a.v.data() + i * a.cols;
    double* crow = c.v.data() + i * c.cols;
    for (std::size_t j = 0; j < b.rows; ++j) {
      const double* brow = b.v.data() + j * b.cols;
      double acc = 0.0;
      for (std::size_t k = 0; k < a.cols; ++k) acc += arow[k] * brow[k];
      crow[j] = acc;
    }
  }
  return c;
}

Tensor matmul_tn(const Tensor& a, const Tensor& b) {
  if (a.rows != b.rows) throw LayoutError("matmul_tn shape mismatch");
  Tensor c(a.cols, b.cols);
  for (std::size_t k = 0; k < a.rows; ++k) {
    const double* arow = a.v.data() + k * a.cols;
    const double* brow = b.v.data() + k * b.cols;
    for (std::size_t i = 0; i < a.cols; ++i) {
      const double aki = arow[i];
      if (aki == 0.0) continue;
      double* crow = c.v.data() + i * c.cols;
      for (std::size_t j = 0; j < b.cols; ++j) crow[j] += aki * brow[j];
    }
  }
  return c;
}

void add_inplace(Tensor& dst, const Tensor& src) {
  if (!dst.same_shape(src)) throw LayoutError("add shape mismatch");
  for (std::size_t i = 0; i < dst.v.size(); ++i) dst.v[i] += src.v[i];
}

void axpy_inplace(Tensor& dst, double s, const Tensor& src) {
  if (!dst.same_shape(src)) throw LayoutError("axpy shape mismatch");
  for (std::size_t i = 0; i < dst.v.size(); ++i) dst.v[i] += s * src.v[i];
}

Tensor transpose(const Tensor& a) {
  Tensor t(a.cols, a.rows);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) t.at(j, i) = a.at(i, j);
  return t;
}

bool all_finite(const Tensor& a) {
  for (double x : a.v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace tinyst

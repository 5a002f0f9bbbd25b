// tests/unit/tensor_test.cc

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

#include <limits>

#include "doctest.h"
#include "tinyst/errors.h"
#include "tinyst/rng.h"

namespace tinyst {

namespace {

Tensor random_tensor(std::size_t r, std::size_t c, Rng& rng) {
  Tensor t(r, c);
  for (double& v : t.v) v = rng.uniform_real(-2.0, 2.0);
  return t;
}

}  // namespace

TEST_SUITE("tensor") {

TEST_CASE("matmul matches a hand example") {
  Tensor a(2, 3);
  a.v = {1, 2, 3, 4, 5, 6};
  Tensor b(3, 2);
  b.v = {7, 8, 9, 10, 11, 12};
  const Tensor c = matmul(a, b);
  REQUIRE(c.rows == 2);
  REQUIRE(c.cols == 2);
  CHECK(c.at(0, 0) == 58);
  CHECK(c.at(0, 1) == 64);
  CHECK(c.at(1, 0) == 139);
  CHECK(c.at(1, 1) == 154);

  Tensor bad(2, 2);
  CHECK_THROWS_AS(matmul(a, bad), LayoutError);
}

TEST_CASE("transposed products agree with explicit transposes") {
  Rng rng(17);
  const Tensor a = random_tensor(4, 3, rng);
  const Tensor b = random_tensor(5, 3, rng);
  const Tensor c = random_tensor(4, 5, rng);
  const Tensor nt = matmul_nt(a, b);          // a * b^T
  const Tensor nt_ref = matmul(a, transpose(b));
  const Tensor tn = matmul_tn(a, c);          // a^T * c
  const Tensor tn_ref = matmul(transpose(a), c);
  for (std::size_t i = 0; i < nt.v.size(); ++i)
    CHECK(nt.v[i] == doctest::Approx(nt_ref.v[i]).epsilon(1e-12));
  for (std::size_t i = 0; i < tn.v.size(); ++i)
    CHECK(tn.v[i] == doctest::Approx(tn_ref.v[i]).epsilon(1e-12));
}

TEST_CASE("axpy and add accumulate in place") {
  Tensor a(1, 3);
  a.v = {1, 2, 3};
  Tensor b(1, 3);
  b.v = {10, 20, 30};
  add_inplace(a, b);
  CHECK(a.v[2] == 33);
  axpy_inplace(a, 0.5, b);
  CHECK(a.v[0] == 16);
}

TEST_CASE("all_finite spots NaN and infinity") {
  Tensor t(1, 2);
  t.v = {1.0, 2.0};
  CHECK(all_finite(t));
  t.v[1] = std::numeric_limits<double>::quiet_NaN();
  CHECK_FALSE(all_finite(t));
  t.v[1] = std::numeric_limits<double>::infinity();
  CHECK_FALSE(all_finite(t));
}

}  // TEST_SUITE

}  // namespace tinyst

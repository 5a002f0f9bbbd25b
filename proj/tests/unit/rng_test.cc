// tests/unit/rng_test.cc

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

#include "tinyst/rng.h"

#include <cmath>
#include <set>

#include "doctest.h"

namespace tinyst {

TEST_SUITE("rng") {

TEST_CASE("same seed reproduces the stream") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("uniform_below stays in range and hits all residues") {
  Rng rng(7);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t v = rng.uniform_below(7);
    CHECK(v < 7);
    seen.insert(v);
  }
  CHECK(seen.size() == 7);
}

TEST_CASE("uniform_int is inclusive on both ends") {
  Rng rng(9);
  bool lo = false, hi = false;
  for (int i = 0; i < 2000; ++i) {
    const std::int64_t v = rng.uniform_int(-2, 3);
    CHECK(v >= -2);
    CHECK(v <= 3);
    lo = lo || v == -2;
    hi = hi || v == 3;
  }
  CHECK(lo);
  CHECK(hi);
}

TEST_CASE("real01 lies in the half-open unit interval") {
  Rng rng(3);
  for (int i = 0; i < 5000; ++i) {
    const double x = rng.real01();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("normal is roughly standard") {
  Rng rng(12);
  const int n = 20000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    sum += x;
    sq += x * x;
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  CHECK(std::fabs(mean) < 0.05);
  CHECK(std::fabs(var - 1.0) < 0.05);
}

TEST_CASE("derive_seed separates tags and arguments") {
  const std::uint64_t base = 1;
  std::set<std::uint64_t> seeds;
  seeds.insert(derive_seed(base, "bucket", 0, 0));
  seeds.insert(derive_seed(base, "bucket", 1, 0));
  seeds.insert(derive_seed(base, "bucket", 0, 1));
  seeds.insert(derive_seed(base, "mask", 0, 0));
  seeds.insert(derive_seed(2, "bucket", 0, 0));
  CHECK(seeds.size() == 5);
  CHECK(derive_seed(base, "bucket", 3, 4) == derive_seed(base, "bucket", 3, 4));
}

}  // TEST_SUITE

}  // namespace tinyst

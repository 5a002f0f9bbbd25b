// tests/unit/autodiff_test.cc

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

#include "tinyst/autodiff.h"

#include <cmath>
#include <functional>
#include <memory>
#include <vector>

#include "doctest.h"
#include "tinyst/errors.h"
#include "tinyst/rng.h"

namespace tinyst {

namespace {

using NodeId = Tape::NodeId;

Tensor random_tensor(std::size_t r, std::size_t c, Rng& rng, double lo = -2.0,
                     double hi = 2.0) {
  Tensor t(r, c);
  for (double& v : t.v) v = rng.uniform_real(lo, hi);
  return t;
}

// Weighted sum of all output entries via scalar_chain, so every op feeds a
// genuine scalar loss with a nontrivial output gradient.
NodeId reduce(Tape& tape, NodeId x, std::uint64_t seed) {
  const Tensor& v = tape.val(x);
  Rng rng(seed);
  Tensor w(v.rows, v.cols);
  double s = 0.0;
  for (std::size_t i = 0; i < v.v.size(); ++i) {
    w.v[i] = rng.uniform_real(0.5, 1.5);
    s += w.v[i] * v.v[i];
  }
  return tape.scalar_chain(x, s, w);
}

using Builder = std::function<NodeId(Tape&, const std::vector<NodeId>&)>;

// Central-difference check of every input coordinate. make_tape supplies
// the tape so stochastic ops (dropout) can be replayed bit-identically.
void check_gradients(const Builder& build, const std::vector<Tensor>& inputs,
                     const std::function<std::unique_ptr<Tape>()>& make_tape,
                     double tol = 1e-6) {
  std::vector<Tensor> sinks;
  sinks.reserve(inputs.size());
  for (const Tensor& in : inputs) sinks.push_back(Tensor::zeros(in.rows, in.cols));

  {
    const std::unique_ptr<Tape> tape = make_tape();
    std::vector<NodeId> ids;
    for (std::size_t i = 0; i < inputs.size(); ++i)
      ids.push_back(tape->param(inputs[i], &sinks[i]));
    const NodeId out = build(*tape, ids);
    REQUIRE(tape->val(out).rows == 1);
    REQUIRE(tape->val(out).cols == 1);
    tape->backward(out);
  }

  const double h = 1e-5;
  auto value_at = [&](const std::vector<Tensor>& points) {
    const std::unique_ptr<Tape> t = make_tape();
    std::vector<NodeId> nids;
    for (const Tensor& p : points) nids.push_back(t->leaf(p));
    return t->val(build(*t, nids)).at(0, 0);
  };

  for (std::size_t k = 0; k < inputs.size(); ++k) {
    for (std::size_t j = 0; j < inputs[k].v.size(); ++j) {
      std::vector<Tensor> plus = inputs, minus = inputs;
      plus[k].v[j] += h;
      minus[k].v[j] -= h;
      const double numeric = (value_at(plus) - value_at(minus)) / (2.0 * h);
      const double analytic = sinks[k].v[j];
      const double rel = std::fabs(analytic - numeric) /
                         std::max({1.0, std::fabs(analytic), std::fabs(numeric)});
      CHECK(rel < tol);
    }
  }
}

std::unique_ptr<Tape> plain_tape() { return std::make_unique<Tape>(); }

}  // namespace

TEST_SUITE("autodiff") {

TEST_CASE("elementwise and broadcast ops differentiate") {
  Rng rng(101);
  SUBCASE("add") {
    const std::vector<Tensor> in = {random_tensor(3, 4, rng),
                                    random_tensor(3, 4, rng)};
    check_gradients(
        [](Tape& t, const std::vector<NodeId>& p) {
          return reduce(t, t.add(p[0], p[1]), 1);
        },
        in, plain_tape);
  }
  SUBCASE("add_rowvec") {
    const std::vector<Tensor> in = {random_tensor(3, 4, rng),
                                    random_tensor(1, 4, rng)};
    check_gradients(
        [](Tape& t, const std::vector<NodeId>& p) {
          return reduce(t, t.add_rowvec(p[0], p[1]), 2);
        },
        in, plain_tape);
  }
  SUBCASE("scale") {
    const std::vector<Tensor> in = {random_tensor(2, 5, rng)};
    check_gradients(
        [](Tape& t, const std::vector<NodeId>& p) {
          return reduce(t, t.scale(p[0], -1.7), 3);
        },
        in, plain_tape);
  }
  SUBCASE("relu away from the kink") {
    Tensor x = random_tensor(3, 3, rng);
    for (double& v : x.v) v += (v >= 0 ? 0.5 : -0.5);
    check_gradients(
        [](Tape& t, const std::vector<NodeId>& p) {
          return reduce(t, t.relu(p[0]), 4);
        },
        {x}, plain_tape);
  }
}

TEST_CASE("matrix products differentiate") {
  Rng rng(102);
  const std::vector<Tensor> in = {random_tensor(3, 4, rng),
                                  random_tensor(4, 2, rng),
                                  random_tensor(5, 2, rng)};
  check_gradients(
      [](Tape& t, const std::vector<NodeId>& p) {
        const NodeId ab = t.matmul(p[0], p[1]);  // 3 x 2
        const NodeId nt = t.matmul_nt(ab, p[2]);  // 3 x 5
        return reduce(t, nt, 5);
      },
      in, plain_tape);
}

TEST_CASE("normalization and attention pieces differentiate") {
  Rng rng(103);
  SUBCASE("layernorm") {
    const std::vector<Tensor> in = {random_tensor(4, 6, rng),
                                    random_tensor(1, 6, rng, 0.5, 1.5),
                                    random_tensor(1, 6, rng)};
    check_gradients(
        [](Tape& t, const std::vector<NodeId>& p) {
          return reduce(t, t.layernorm(p[0], p[1], p[2]), 6);
        },
        in, plain_tape, 5e-6);
  }
  SUBCASE("softmax_rows") {
    const std::vector<Tensor> in = {random_tensor(3, 5, rng)};
    check_gradients(
        [](Tape& t, const std::vector<NodeId>& p) {
          return reduce(t, t.softmax_rows(p[0]), 7);
        },
        in, plain_tape);
  }
  SUBCASE("causal_mask then softmax") {
    const std::vector<Tensor> in = {random_tensor(4, 4, rng)};
    check_gradients(
        [](Tape& t, const std::vector<NodeId>& p) {
          return reduce(t, t.softmax_rows(t.causal_mask(p[0])), 8);
        },
        in, plain_tape);
  }
}

TEST_CASE("structural ops differentiate") {
  Rng rng(104);
  SUBCASE("dwconv3") {
    const std::vector<Tensor> in = {random_tensor(5, 3, rng),
                                    random_tensor(3, 3, rng),
                                    random_tensor(1, 3, rng)};
    check_gradients(
        [](Tape& t, const std::vector<NodeId>& p) {
          return reduce(t, t.dwconv3(p[0], p[1], p[2]), 9);
        },
        in, plain_tape);
  }
  SUBCASE("embed") {
    const std::vector<Tensor> in = {random_tensor(6, 4, rng)};
    check_gradients(
        [](Tape& t, const std::vector<NodeId>& p) {
          // Repeated ids exercise gradient accumulation into one row.
          return reduce(t, t.embed({1, 3, 1, 5}, p[0]), 10);
        },
        in, plain_tape);
  }
  SUBCASE("frame_stack") {
    const std::vector<Tensor> in = {random_tensor(7, 3, rng)};
    check_gradients(
        [](Tape& t, const std::vector<NodeId>& p) {
          return reduce(t, t.frame_stack(p[0], 4), 11);
        },
        in, plain_tape);
  }
  SUBCASE("col_slice and col_concat") {
    const std::vector<Tensor> in = {random_tensor(3, 6, rng)};
    check_gradients(
        [](Tape& t, const std::vector<NodeId>& p) {
          const NodeId left = t.col_slice(p[0], 0, 2);
          const NodeId right = t.col_slice(p[0], 2, 6);
          return reduce(t, t.col_concat({right, left}), 12);
        },
        in, plain_tape);
  }
  SUBCASE("weighted_sum") {
    const std::vector<Tensor> in = {random_tensor(2, 3, rng),
                                    random_tensor(4, 1, rng)};
    check_gradients(
        [](Tape& t, const std::vector<NodeId>& p) {
          const NodeId a = reduce(t, p[0], 13);
          const NodeId b = reduce(t, p[1], 14);
          return t.weighted_sum({a, b}, {0.25, -1.5});
        },
        in, plain_tape);
  }
}

TEST_CASE("dropout differentiates under a replayed mask") {
  Rng data_rng(105);
  const std::vector<Tensor> in = {random_tensor(4, 5, data_rng)};
  // Each tape gets a fresh generator with the same seed, so the mask is
  // identical across the analytic pass and every finite-difference probe.
  std::vector<std::unique_ptr<Rng>> rngs;
  check_gradients(
      [](Tape& t, const std::vector<NodeId>& p) {
        return reduce(t, t.dropout(p[0]), 15);
      },
      in, [&rngs] {
        rngs.push_back(std::make_unique<Rng>(77));
        return std::make_unique<Tape>(true, rngs.back().get(), 0.4);
      });
}

TEST_CASE("dropout is identity in eval mode") {
  Rng rng(106);
  const Tensor x = random_tensor(3, 3, rng);
  Tape tape;  // eval
  const NodeId id = tape.dropout(tape.leaf(x));
  CHECK(tape.val(id).v == x.v);
}

TEST_CASE("softmax rows sum to one and causal rows are lower-triangular") {
  Rng rng(107);
  Tape tape;
  const NodeId x = tape.leaf(random_tensor(4, 4, rng));
  const NodeId sm = tape.softmax_rows(tape.causal_mask(x));
  const Tensor& v = tape.val(sm);
  for (std::size_t i = 0; i < 4; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < 4; ++j) {
      row += v.at(i, j);
      if (j > i) CHECK(v.at(i, j) == 0.0);
    }
    CHECK(row == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("frame_stack pads the ragged tail with zeros") {
  Tensor x(5, 2);
  for (std::size_t i = 0; i < x.v.size(); ++i) x.v[i] = static_cast<double>(i + 1);
  Tape tape;
  const NodeId s = tape.frame_stack(tape.leaf(x), 2);
  const Tensor& v = tape.val(s);
  REQUIRE(v.rows == 3);
  REQUIRE(v.cols == 4);
  CHECK(v.at(0, 0) == 1.0);  // frame 0
  CHECK(v.at(0, 2) == 3.0);  // frame 1
  CHECK(v.at(2, 0) == 9.0);  // frame 4
  CHECK(v.at(2, 2) == 0.0);  // padding
  CHECK(v.at(2, 3) == 0.0);
}

TEST_CASE("shape violations raise LayoutError") {
  Tape tape;
  const NodeId a = tape.leaf(Tensor(2, 3));
  const NodeId b = tape.leaf(Tensor(3, 2));
  CHECK_THROWS_AS(tape.add(a, b), LayoutError);
  CHECK_THROWS_AS(tape.add_rowvec(a, b), LayoutError);
  CHECK_THROWS_AS(tape.matmul(a, a), LayoutError);
  CHECK_THROWS_AS(tape.col_slice(a, 2, 1), LayoutError);
}

}  // TEST_SUITE

}  // namespace tinyst

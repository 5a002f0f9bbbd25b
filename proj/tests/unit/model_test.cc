// tests/unit/model_test.cc

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

#include "tinyst/model.h"

#include <cmath>
#include <fstream>

#include "doctest.h"
#include "support/synth.h"
#include "tinyst/errors.h"
#include "tinyst/vocab.h"

namespace tinyst {

namespace {

Tensor feat(std::size_t frames, std::size_t bins, std::uint64_t seed) {
  const FeatureMatrix f = testsupport::random_features(frames, bins, seed);
  Tensor t(frames, bins);
  t.v = f.values;
  return t;
}

GradBatch toy_batch(const ModelConfig& cfg) {
  GradBatch b;
  b.features = {feat(6, cfg.feat_dim, 1), feat(4, cfg.feat_dim, 2)};
  b.prefixes = {{Vocab::kBos, 4, 5}, {Vocab::kBos, 5}};
  b.targets = {{4, 5, Vocab::kEos}, {5, Vocab::kEos}};
  return b;
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("config validation names the offending field") {
  ModelConfig cfg;
  cfg.vocab_size = 10;
  CHECK_NOTHROW(cfg.validate());
  cfg.d_model = 63;  // not divisible by n_heads = 4
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = ModelConfig();
  cfg.vocab_size = 4;  // no real tokens
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = ModelConfig();
  cfg.vocab_size = 10;
  cfg.dropout = 1.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = ModelConfig();
  cfg.vocab_size = 10;
  cfg.conv_subsample_factor = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("init is deterministic and covers the registry") {
  const ModelState a = testsupport::toy_model(8, 3);
  const ModelState b = testsupport::toy_model(8, 3);
  const ModelState c = testsupport::toy_model(8, 4);
  // 1 enc + 1 dec layer: 9 shared/registry params + 22 + 26.
  CHECK(a.params.size() == 57);
  REQUIRE(a.params.size() == b.params.size());
  bool all_same = true, any_diff_seed = false;
  for (std::size_t i = 0; i < a.params.size(); ++i) {
    CHECK(a.params[i].name == b.params[i].name);
    all_same = all_same && a.params[i].value.v == b.params[i].value.v;
    any_diff_seed =
        any_diff_seed || a.params[i].value.v != c.params[i].value.v;
  }
  CHECK(all_same);
  CHECK(any_diff_seed);
  // Biases start at zero, gains at one, moments at zero.
  for (const Param& p : a.params) {
    if (p.kind == ParamKind::kBias)
      for (double v : p.value.v) CHECK(v == 0.0);
    if (p.kind == ParamKind::kGain)
      for (double v : p.value.v) CHECK(v == 1.0);
    for (double v : p.adam_m.v) CHECK(v == 0.0);
    for (double v : p.adam_v.v) CHECK(v == 0.0);
  }
}

TEST_CASE("sinusoid positions interleave sin and cos") {
  const Tensor pe = sinusoid_positions(3, 4);
  REQUIRE(pe.rows == 3);
  REQUIRE(pe.cols == 4);
  CHECK(pe.at(0, 0) == 0.0);
  CHECK(pe.at(0, 1) == 1.0);
  CHECK(pe.at(0, 2) == 0.0);
  CHECK(pe.at(0, 3) == 1.0);
  CHECK(pe.at(1, 0) == doctest::Approx(std::sin(1.0)).epsilon(1e-12));
  CHECK(pe.at(1, 1) == doctest::Approx(std::cos(1.0)).epsilon(1e-12));
  for (double v : pe.v) {
    CHECK(v <= 1.0);
    CHECK(v >= -1.0);
  }
}

TEST_CASE("encode subsamples the time axis") {
  const ModelState m = testsupport::toy_model(8, 5);
  ModelGraph g(m);
  const Tape::NodeId mem = g.encode(feat(7, m.cfg.feat_dim, 9));
  // ceil(7 / 2) rows at d_model columns.
  CHECK(g.tape().val(mem).rows == 4);
  CHECK(g.tape().val(mem).cols == static_cast<std::size_t>(m.cfg.d_model));

  ModelGraph g2(m);
  CHECK_THROWS_AS(g2.encode(feat(1, m.cfg.feat_dim, 9)), TooShortError);
  ModelGraph g3(m);
  CHECK_THROWS_AS(g3.encode(feat(6, m.cfg.feat_dim + 1, 9)), LayoutError);
}

TEST_CASE("decode_logits wants a BOS-led prefix") {
  const ModelState m = testsupport::toy_model(8, 6);
  ModelGraph g(m);
  const Tape::NodeId mem = g.encode(feat(6, m.cfg.feat_dim, 3));
  const Tape::NodeId logits = g.decode_logits(mem, {Vocab::kBos, 4, 5});
  CHECK(g.tape().val(logits).rows == 3);
  CHECK(g.tape().val(logits).cols == 8);
  CHECK_THROWS_AS(g.decode_logits(mem, {4, 5}), UsageError);
  CHECK_THROWS_AS(g.decode_logits(mem, {}), UsageError);
}

TEST_CASE("forward is deterministic in eval mode") {
  const ModelState m = testsupport::toy_model(8, 7);
  const std::vector<Tensor> feats = {feat(6, m.cfg.feat_dim, 4)};
  const std::vector<std::vector<int>> prefixes = {{Vocab::kBos, 4}};
  const std::vector<Tensor> a = forward(m, feats, prefixes);
  const std::vector<Tensor> b = forward(m, feats, prefixes);
  REQUIRE(a.size() == 1);
  CHECK(a[0].v == b[0].v);
}

TEST_CASE("batch_loss_grads reports the same loss as batch_loss_value") {
  ModelState m = testsupport::toy_model(8, 8);
  const GradBatch batch = toy_batch(m.cfg);
  const double value = batch_loss_value(m, batch, 0.1);
  double reported = 0.0;
  batch_loss_grads(m, batch, 0.1, &reported);
  CHECK(reported == doctest::Approx(value).epsilon(1e-12));
}

TEST_CASE("grad_check passes on a toy model") {
  ModelState m = testsupport::toy_model(8, 9);
  const GradBatch batch = toy_batch(m.cfg);
  GradCheckOptions opts;
  opts.n_samples = 60;
  opts.seed = 5;
  const GradCheckReport report = grad_check(m, batch, opts);
  INFO("worst: " << report.worst_param << " rel " << report.max_rel_err);
  CHECK(report.pass);
  CHECK(report.n_checked >= 60);
  CHECK(report.max_rel_err < opts.tolerance);
}

TEST_CASE("checkpoints round trip bit-identically") {
  const std::string dir = testsupport::fresh_dir("model_ckpt");
  ModelState m = testsupport::toy_model(8, 10);
  m.step = 123;
  m.epoch = 7;
  m.params[0].adam_m.v[0] = 0.25;  // moment payload must survive
  const std::string path = dir + "/model.ckpt";
  save_checkpoint(m, path);
  const ModelState r = load_checkpoint(path);
  CHECK(r.step == 123);
  CHECK(r.epoch == 7);
  REQUIRE(r.params.size() == m.params.size());
  for (std::size_t i = 0; i < m.params.size(); ++i) {
    CHECK(r.params[i].name == m.params[i].name);
    CHECK(r.params[i].value.v == m.params[i].value.v);
    CHECK(r.params[i].adam_m.v == m.params[i].adam_m.v);
    CHECK(r.params[i].adam_v.v == m.params[i].adam_v.v);
  }
}

TEST_CASE("corrupt checkpoints are rejected") {
  const std::string dir = testsupport::fresh_dir("model_ckpt_bad");
  const ModelState m = testsupport::toy_model(8, 11);
  const std::string path = dir + "/model.ckpt";
  save_checkpoint(m, path);

  // Truncate the tensor payload.
  std::ifstream in(path, std::ios::binary);
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  in.close();
  std::ofstream(path, std::ios::binary)
      << bytes.substr(0, bytes.size() - 16);
  CHECK_THROWS_AS(load_checkpoint(path), CorruptFileError);

  std::ofstream(dir + "/junk.ckpt", std::ios::binary) << "not a checkpoint";
  CHECK_THROWS_AS(load_checkpoint(dir + "/junk.ckpt"), DataError);
  CHECK_THROWS_AS(load_checkpoint(dir + "/absent.ckpt"), DataError);
}

}  // TEST_SUITE

}  // namespace tinyst

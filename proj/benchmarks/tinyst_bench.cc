// benchmarks/tinyst_bench.cc

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

// Microbenchmarks for the pipeline's hot paths: the log-mel front end, the
// teacher-forced forward/backward pass, beam decoding and corpus scoring.
// Fixtures are deterministic so numbers are comparable across runs.

#include <benchmark/benchmark.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "tinyst/decode.h"
#include "tinyst/dsp.h"
#include "tinyst/metrics.h"
#include "tinyst/model.h"
#include "tinyst/rng.h"
#include "tinyst/tensor.h"
#include "tinyst/training.h"

namespace tinyst {
namespace {

Waveform sine(double hz, double seconds) {
  Waveform w;
  const std::size_t n = static_cast<std::size_t>(seconds * kSampleRateHz);
  w.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    w.samples[i] =
        0.5 * std::sin(2.0 * 3.14159265358979323846 * hz * i / kSampleRateHz);
  return w;
}

Tensor random_features(std::size_t frames, std::uint64_t seed) {
  Rng rng(seed);
  Tensor t(frames, kNumMels);
  for (double& x : t.v) x = rng.uniform_real(-1.0, 1.0);
  return t;
}

ModelState bench_model(std::size_t vocab) {
  ModelConfig cfg;
  cfg.d_model = 32;
  cfg.n_heads = 4;
  cfg.enc_layers = 2;
  cfg.dec_layers = 2;
  cfg.ff_dim = 64;
  cfg.conv_subsample_factor = 4;
  cfg.dropout = 0.0;
  cfg.feat_dim = kNumMels;
  cfg.vocab_size = vocab;
  return init(cfg, 17);
}

GradBatch bench_batch(const ModelState& state) {
  GradBatch b;
  b.features = {random_features(60, 5), random_features(48, 6)};
  const int v = static_cast<int>(state.cfg.vocab_size);
  Rng rng(9);
  for (std::size_t i = 0; i < b.features.size(); ++i) {
    std::vector<int> prefix = {1};  // BOS
    std::vector<int> target;
    for (int k = 0; k < 10; ++k) {
      const int tok = 4 + static_cast<int>(rng.uniform_below(
                              static_cast<std::uint64_t>(v - 4)));
      prefix.push_back(tok);
      target.push_back(tok);
    }
    target.push_back(2);  // EOS
    b.prefixes.push_back(prefix);
    b.targets.push_back(target);
  }
  return b;
}

void BM_LogMel(benchmark::State& state) {
  const Waveform w = sine(440.0, static_cast<double>(state.range(0)));
  for (auto _ : state) {
    FeatureMatrix f = log_mel(w);
    benchmark::DoNotOptimize(f.values.data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(w.samples.size()));
}
BENCHMARK(BM_LogMel)->Arg(1)->Arg(5);

void BM_Cmvn(benchmark::State& state) {
  const FeatureMatrix f = log_mel(sine(700.0, 3.0));
  for (auto _ : state) {
    FeatureMatrix n = cmvn(f);
    benchmark::DoNotOptimize(n.values.data());
  }
}
BENCHMARK(BM_Cmvn);

void BM_ForwardBackward(benchmark::State& state) {
  ModelState model = bench_model(32);
  const GradBatch batch = bench_batch(model);
  for (auto _ : state) {
    auto grads = batch_loss_grads(model, batch, 0.1);
    benchmark::DoNotOptimize(&grads);
  }
}
BENCHMARK(BM_ForwardBackward);

void BM_GreedyDecode(benchmark::State& state) {
  const ModelState model = bench_model(32);
  const Tensor feats = random_features(80, 11);
  for (auto _ : state) {
    Hypothesis h = greedy_decode(model, feats, 24);
    benchmark::DoNotOptimize(&h);
  }
}
BENCHMARK(BM_GreedyDecode);

void BM_BeamSearch(benchmark::State& state) {
  const ModelState model = bench_model(32);
  const Tensor feats = random_features(80, 11);
  const std::size_t beam = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    Hypothesis h = beam_search(model, feats, beam, 24);
    benchmark::DoNotOptimize(&h);
  }
}
BENCHMARK(BM_BeamSearch)->Arg(5)->Arg(10);

void BM_CorpusBleu(benchmark::State& state) {
  Rng rng(23);
  std::vector<std::string> hyps, refs;
  for (int i = 0; i < 200; ++i) {
    std::string h, r;
    for (int k = 0; k < 15; ++k) {
      const std::string word(1 + rng.uniform_below(7),
                             static_cast<char>('a' + rng.uniform_below(26)));
      r += word + " ";
      h += (rng.uniform_below(10) < 7 ? word : "xq") + " ";
    }
    hyps.push_back(h);
    refs.push_back(r);
  }
  for (auto _ : state) {
    ScoreReport rep = corpus_bleu(hyps, refs);
    benchmark::DoNotOptimize(&rep);
  }
  state.SetItemsProcessed(state.iterations() * 200);
}
BENCHMARK(BM_CorpusBleu);

}  // namespace
}  // namespace tinyst

BENCHMARK_MAIN();

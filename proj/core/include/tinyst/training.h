// core/include/tinyst/training.h

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

#ifndef TINYST_TRAINING_H_
#define TINYST_TRAINING_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tinyst/augment.h"
#include "tinyst/config.h"
#include "tinyst/corpus.h"
#include "tinyst/dsp.h"
#include "tinyst/model.h"
#include "tinyst/tensor.h"
#include "tinyst/vocab.h"

namespace tinyst {

struct HyperParams {
  double lr_peak = 3e-4;  // toy-scale default; sweeps rescale around it
  double label_smoothing = 0.1;
  std::size_t batch_size = 32;
  long warmup_steps = 250;
  long patience = 10;
  std::size_t beam_size = 10;
  long max_epochs = 100;
  std::uint64_t seed = 1;

  // Throws ConfigError naming the first offending field.
  void validate() const;
  // Flat key-value file with keys lr_peak, label_smoothing, batch_size,
  // warmup_steps, patience, beam_size, max_epochs, seed; absent keys keep
  // their defaults.
  static HyperParams from_config(const Config& c);
};

struct EpochRecord {
  long epoch = 0;            // contiguous from 1 across phases
  std::string phase;         // "train", "joint" or "target"
  std::size_t n_train = 0;   // utterances seen this epoch (after expansion)
  double train_loss = 0.0;   // mean over non-PAD target positions
  double dev_bleu = 0.0;     // greedy decoding
  double dev_chrf = 0.0;
  double lr = 0.0;           // at epoch end
};

struct TrainLog {
  std::vector<EpochRecord> records;
  long best_epoch = 0;  // epoch with maximum dev BLEU (first on ties)
  std::string stop_reason;  // "early_stop", "max_epochs" or "fixed_k"

  // One JSON object per record, then one summary line.
  std::string to_jsonl() const;
  static TrainLog from_jsonl(const std::string& text);
};

// Smoothed negative log-likelihood of one teacher-forced item, summed over
// non-PAD positions. dlogits is the gradient of that sum.
struct LossSum {
  double sum = 0.0;
  Tensor dlogits;
  long n_positions = 0;
};
LossSum label_smoothed_loss_sum(const Tensor& logits,
                                const std::vector<int>& targets, double eps,
                                int pad_id);

// Mean over non-PAD positions; an all-PAD target yields loss 0 and a zero
// gradient. eps outside [0,1) -> DomainError.
struct LossResult {
  double loss = 0.0;
  Tensor dlogits;
};
LossResult label_smoothed_loss(const Tensor& logits,
                               const std::vector<int>& targets, double eps,
                               int pad_id);

// Linear warmup to lr_peak over warmup_steps, then inverse-square-root
// decay: lr(t) = peak * sqrt(W / t). Continuous at t = W; lr(0) = 0.
double lr_at_step(long t, const HyperParams& hp);

// One bias-corrected Adam update (beta 0.9/0.98, eps 1e-9) over every
// parameter; increments state.step. A non-finite gradient aborts with
// NumericalError("optimizer") before any parameter is touched.
void adam_step(ModelState& state, const std::map<std::string, Tensor>& grads,
               double lr);

// Patience-based stopping on a maximized score; improvement is strict.
class EarlyStopper {
 public:
  explicit EarlyStopper(long patience);

  // Feeds the next score; returns true when it improves on the best.
  bool observe(double score);
  bool should_stop() const { return since_best_ >= patience_; }
  long best_index() const { return best_index_; }  // 1-based
  double best_score() const { return best_score_; }

 private:
  long patience_;
  long n_seen_ = 0;
  long best_index_ = 0;
  long since_best_ = 0;
  double best_score_ = 0.0;
};

Tensor feature_tensor(const FeatureMatrix& f);

// Memoized WAV -> features pipeline: read, apply the speed factor encoded
// in a "#sp<factor>" id suffix, log-mel, per-utterance CMVN. Relative
// audio paths resolve against base_dir.
class FeatureCache {
 public:
  explicit FeatureCache(std::string base_dir);

  const FeatureMatrix& get(const Utterance& u);
  std::size_t size() const { return cache_.size(); }

 private:
  std::string base_dir_;
  std::map<std::string, FeatureMatrix> cache_;
};

struct TrainResult {
  ModelState model;
  TrainLog log;
};

// Epoch loop with length-bucketed batches: utterances sorted by feature
// length, cut into buckets of batch_size, bucket order reshuffled per
// epoch from the seed. Speed perturbation expands the corpus up front;
// SpecAugment draws a fresh stream per (utterance, epoch). Dev BLEU uses
// greedy decoding each epoch; stops after `patience` epochs without
// improvement or at max_epochs, returning the best-epoch parameters.
TrainResult train(const ModelState& model, const Manifest& train_set,
                  const Manifest& dev_set, const Vocab& vocab,
                  const HyperParams& hp, const AugmentPolicy& policy,
                  FeatureCache& cache);

// k_target_epochs value requesting phase-2 early stopping instead of a
// fixed epoch count.
inline constexpr long kToConvergence = -1;

// Phase 1 trains on the mixed corpus until early stop; phase 2 continues
// on the target corpus for exactly k epochs (k = 0 returns the phase-1
// model; kToConvergence applies the train() stopping rule). Epoch numbers
// continue across the boundary; records carry phase "joint" then
// "target". With a fixed k the returned parameters are the phase-2
// last-epoch parameters.
TrainResult joint_finetune(const ModelState& model, const Manifest& mixed,
                           const Manifest& target_only,
                           const Manifest& dev_set, const Vocab& vocab,
                           const HyperParams& hp, const AugmentPolicy& policy,
                           FeatureCache& cache, long k_target_epochs);

}  // namespace tinyst

#endif  // TINYST_TRAINING_H_

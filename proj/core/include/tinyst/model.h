// core/include/tinyst/model.h

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

#ifndef TINYST_MODEL_H_
#define TINYST_MODEL_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tinyst/autodiff.h"
#include "tinyst/rng.h"
#include "tinyst/tensor.h"

namespace tinyst {

// Encoder: frame stacking by conv_subsample_factor, then enc_layers blocks
// of (depthwise-conv module, self-attention, feed-forward), each pre-norm
// with residuals. Decoder: dec_layers blocks of (causal self-attention,
// cross-attention, feed-forward). Sinusoidal absolute positions.
struct ModelConfig {
  std::size_t d_model = 64;
  std::size_t n_heads = 4;
  std::size_t enc_layers = 2;
  std::size_t dec_layers = 2;
  std::size_t ff_dim = 128;
  std::size_t conv_subsample_factor = 4;
  double dropout = 0.1;
  std::size_t feat_dim = 80;   // mel bins consumed by the encoder
  std::size_t vocab_size = 0;  // must be set before init

  // Throws ConfigError naming the first offending field.
  void validate() const;
};

enum class ParamKind { kMatrix, kBias, kGain };

struct Param {
  std::string name;
  ParamKind kind = ParamKind::kMatrix;
  Tensor value;
  Tensor grad;    // accumulated by backward passes, zeroed by the optimizer
  Tensor adam_m;  // optimizer first moment
  Tensor adam_v;  // optimizer second moment
};

struct ModelState {
  ModelConfig cfg;
  std::vector<Param> params;  // registration order is canonical
  long step = 0;              // optimizer steps taken
  long epoch = 0;

  Param& find(const std::string& name);
  const Param& find(const std::string& name) const;
  void zero_grads();
};

// Deterministic initialization: matrices uniform within
// +-sqrt(6/(fan_in+fan_out)), biases 0, layer-norm gains 1, drawn from one
// seeded stream in registration order.
ModelState init(const ModelConfig& cfg, std::uint64_t seed);

// Sinusoidal absolute position table (len x d).
Tensor sinusoid_positions(std::size_t len, std::size_t d);

// Builds forward graphs for one batch. The eval constructor freezes
// parameters (no gradients, no dropout); the training constructor routes
// gradients into the ModelState and activates dropout with the given RNG.
// Parameters are pushed onto the tape once, shared by every item.
class ModelGraph {
 public:
  explicit ModelGraph(const ModelState& state);
  ModelGraph(ModelState& state, Rng* rng);

  // features: T x feat_dim, T >= conv_subsample_factor. Returns encoder
  // memory, ceil(T/k) x d.
  // Non-finite output -> NumericalError("encoder").
  Tape::NodeId encode(const Tensor& features);
  // Teacher-forced decoder logits over the prefix (BOS first): L x vocab.
  // Non-finite output -> NumericalError("decoder").
  Tape::NodeId decode_logits(Tape::NodeId memory,
                             const std::vector<int>& prefix);

  Tape& tape() { return tape_; }

 private:
  Tape::NodeId pid(const std::string& name);
  Tape::NodeId attention(Tape::NodeId q_in, Tape::NodeId kv_in, bool causal,
                         const std::string& prefix);
  Tape::NodeId ff_block(Tape::NodeId x, const std::string& prefix);

  const ModelState* state_;
  bool trainable_;
  Tape tape_;
  std::map<std::string, Tape::NodeId> param_nodes_;
  std::map<std::string, Tensor*> grad_sinks_;
};

// Eval-mode teacher-forced logits, one matrix per item.
std::vector<Tensor> forward(const ModelState& state,
                            const std::vector<Tensor>& features,
                            const std::vector<std::vector<int>>& prefixes);

// A teacher-forced batch for loss and gradient computations.
struct GradBatch {
  std::vector<Tensor> features;
  std::vector<std::vector<int>> prefixes;  // each begins with BOS
  std::vector<std::vector<int>> targets;   // each ends with EOS
};

// Mean label-smoothed loss of the batch (over all non-PAD target
// positions), eval mode.
double batch_loss_value(const ModelState& state, const GradBatch& batch,
                        double label_smoothing);

// Analytic gradients of batch_loss_value with respect to every parameter,
// keyed by name. When loss_out is non-null it receives the loss value of
// the same forward pass.
std::map<std::string, Tensor> batch_loss_grads(ModelState& state,
                                               const GradBatch& batch,
                                               double label_smoothing,
                                               double* loss_out = nullptr);

struct GradCheckOptions {
  std::size_t n_samples = 200;
  double fd_step = 1e-5;  // central-difference h
  double tolerance = 1e-4;
  double label_smoothing = 0.1;
  std::uint64_t seed = 7;
};

struct GradCheckReport {
  std::size_t n_checked = 0;
  double max_rel_err = 0.0;
  std::string worst_param;
  bool pass = false;
};

// Compares analytic gradients against central finite differences on a
// random sample of parameter coordinates.
GradCheckReport grad_check(ModelState& state, const GradBatch& batch,
                           const GradCheckOptions& opts);
// Same comparison against externally supplied gradients; lets a test
// corrupt one backward rule and watch the check fail.
GradCheckReport grad_check_against(ModelState& state, const GradBatch& batch,
                                   const std::map<std::string, Tensor>& grads,
                                   const GradCheckOptions& opts);

// Checkpoint: 8-byte little-endian JSON header length, JSON header
// (version, config, step, epoch, tensor directory), then raw float64
// little-endian arrays in directory order. The version field is mandatory.
void save_checkpoint(const ModelState& state, const std::string& path);
ModelState load_checkpoint(const std::string& path);

}  // namespace tinyst

#endif  // TINYST_MODEL_H_

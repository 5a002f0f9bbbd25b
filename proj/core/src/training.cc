// core/src/training.cc

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

#include "tinyst/training.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>
#include <utility>

#include "json.hpp"
#include "tinyst/decode.h"
#include "tinyst/errors.h"
#include "tinyst/metrics.h"
#include "tinyst/text.h"
#include "tinyst/wav.h"

namespace tinyst {

namespace {

using nlohmann::json;

constexpr double kAdamBeta1 = 0.9;
constexpr double kAdamBeta2 = 0.98;
constexpr double kAdamEps = 1e-9;

}  // namespace

void HyperParams::validate() const {
  if (!(lr_peak > 0.0) || !std::isfinite(lr_peak)) throw ConfigError("lr_peak");
  if (label_smoothing < 0.0 || label_smoothing >= 1.0)
    throw ConfigError("label_smoothing");
  if (batch_size < 1) throw ConfigError("batch_size");
  if (warmup_steps < 1) throw ConfigError("warmup_steps");
  if (patience < 1) throw ConfigError("patience");
  if (beam_size < 1) throw ConfigError("beam_size");
  if (max_epochs < 1) throw ConfigError("max_epochs");
}

HyperParams HyperParams::from_config(const Config& c) {
  HyperParams hp;
  hp.lr_peak = c.get_double("lr_peak", hp.lr_peak);
  hp.label_smoothing = c.get_double("label_smoothing", hp.label_smoothing);
  hp.batch_size = static_cast<std::size_t>(
      c.get_long("batch_size", static_cast<long>(hp.batch_size)));
  hp.warmup_steps = c.get_long("warmup_steps", hp.warmup_steps);
  hp.patience = c.get_long("patience", hp.patience);
  hp.beam_size = static_cast<std::size_t>(
      c.get_long("beam_size", static_cast<long>(hp.beam_size)));
  hp.max_epochs = c.get_long("max_epochs", hp.max_epochs);
  hp.seed = static_cast<std::uint64_t>(
      c.get_long("seed", static_cast<long>(hp.seed)));
  hp.validate();
  return hp;
}

std::string TrainLog::to_jsonl() const {
  std::string out;
  for (const EpochRecord& r : records) {
    json j = {{"epoch", r.epoch},       {"phase", r.phase},
              {"n_train", r.n_train},   {"train_loss", r.train_loss},
              {"dev_bleu", r.dev_bleu}, {"dev_chrf", r.dev_chrf},
              {"lr", r.lr}};
    out += j.dump();
    out += '\n';
  }
  json tail = {{"best_epoch", best_epoch}, {"stop_reason", stop_reason}};
  out += tail.dump();
  out += '\n';
  return out;
}

TrainLog TrainLog::from_jsonl(const std::string& text) {
  TrainLog log;
  long line_no = 0;
  for (const std::string& line : split(text, '\n')) {
    ++line_no;
    if (trim(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception&) {
      throw ParseError("invalid JSON in training log", line_no);
    }
    if (j.contains("epoch")) {
      EpochRecord r;
      try {
        r.epoch = j.at("epoch").get<long>();
        r.phase = j.at("phase").get<std::string>();
        r.n_train = j.at("n_train").get<std::size_t>();
        r.train_loss = j.at("train_loss").get<double>();
        r.dev_bleu = j.at("dev_bleu").get<double>();
        r.dev_chrf = j.at("dev_chrf").get<double>();
        r.lr = j.at("lr").get<double>();
      } catch (const json::exception&) {
        throw ParseError("training log record missing a field", line_no);
      }
      log.records.push_back(std::move(r));
    } else if (j.contains("best_epoch")) {
      log.best_epoch = j.at("best_epoch").get<long>();
      log.stop_reason = j.value("stop_reason", std::string());
    } else {
      throw ParseError("unrecognized training log line", line_no);
    }
  }
  return log;
}

LossSum label_smoothed_loss_sum(const Tensor& logits,
                                const std::vector<int>& targets, double eps,
                                int pad_id) {
  if (eps < 0.0 || eps >= 1.0) throw DomainError("label smoothing outside [0,1)");
  if (targets.size() != logits.rows)
    throw LayoutError("one target per logit row required");
  const std::size_t V = logits.cols;
  if (V < 2) throw LayoutError("need at least two classes");
  LossSum out;
  out.dlogits = Tensor::zeros(logits.rows, V);
  const double off_mass = eps / static_cast<double>(V - 1);
  for (std::size_t i = 0; i < logits.rows; ++i) {
    const int gold = targets[i];
    if (gold == pad_id) continue;  // zero loss, zero gradient
    if (gold < 0 || static_cast<std::size_t>(gold) >= V)
      throw LayoutError("target id outside vocabulary");
    // Row log-softmax, max-subtracted for stability.
    double m = logits.at(i, 0);
    for (std::size_t k = 1; k < V; ++k) m = std::max(m, logits.at(i, k));
    double z = 0.0;
    for (std::size_t k = 0; k < V; ++k) z += std::exp(logits.at(i, k) - m);
    const double lse = m + std::log(z);
    double loss_i = 0.0;
    for (std::size_t k = 0; k < V; ++k) {
      const double logp = logits.at(i, k) - lse;
      const double q =
          (static_cast<std::size_t>(gold) == k) ? 1.0 - eps : off_mass;
      loss_i -= q * logp;
      // d loss_i / d logit_k = p_k - q_k.
      out.dlogits.at(i, k) = std::exp(logp) - q;
    }
    out.sum += loss_i;
    ++out.n_positions;
  }
  return out;
}

LossResult label_smoothed_loss(const Tensor& logits,
                               const std::vector<int>& targets, double eps,
                               int pad_id) {
  LossSum s = label_smoothed_loss_sum(logits, targets, eps, pad_id);
  LossResult out;
  out.dlogits = Tensor::zeros(logits.rows, logits.cols);
  if (s.n_positions == 0) return out;
  const double inv = 1.0 / static_cast<double>(s.n_positions);
  out.loss = s.sum * inv;
  for (std::size_t i = 0; i < s.dlogits.v.size(); ++i)
    out.dlogits.v[i] = s.dlogits.v[i] * inv;
  return out;
}

double lr_at_step(long t, const HyperParams& hp) {
  if (t < 0) throw DomainError("negative step count");
  const double W = static_cast<double>(hp.warmup_steps);
  const double td = static_cast<double>(t);
  if (t <= hp.warmup_steps) return hp.lr_peak * td / W;
  return hp.lr_peak * std::sqrt(W / td);
}

void adam_step(ModelState& state, const std::map<std::string, Tensor>& grads,
               double lr) {
  // Validate everything first: an aborted step must leave the state as it
  // was, checkpoint included.
  for (const Param& p : state.params) {
    const auto it = grads.find(p.name);
    if (it == grads.end())
      throw LayoutError("gradient missing for parameter: " + p.name);
    if (!it->second.same_shape(p.value))
      throw LayoutError("gradient shape mismatch for parameter: " + p.name);
    if (!all_finite(it->second)) throw NumericalError("optimizer");
  }
  const long t = state.step + 1;
  const double bc1 = 1.0 - std::pow(kAdamBeta1, static_cast<double>(t));
  const double bc2 = 1.0 - std::pow(kAdamBeta2, static_cast<double>(t));
  for (Param& p : state.params) {
    const Tensor& g = grads.at(p.name);
    for (std::size_t i = 0; i < p.value.v.size(); ++i) {
      const double gi = g.v[i];
      p.adam_m.v[i] = kAdamBeta1 * p.adam_m.v[i] + (1.0 - kAdamBeta1) * gi;
      p.adam_v.v[i] = kAdamBeta2 * p.adam_v.v[i] + (1.0 - kAdamBeta2) * gi * gi;
      const double mhat = p.adam_m.v[i] / bc1;
      const double vhat = p.adam_v.v[i] / bc2;
      p.value.v[i] -= lr * mhat / (std::sqrt(vhat) + kAdamEps);
    }
  }
  state.step = t;
}

EarlyStopper::EarlyStopper(long patience) : patience_(patience) {
  if (patience < 1) throw ConfigError("patience");
}

bool EarlyStopper::observe(double score) {
  ++n_seen_;
  if (best_index_ == 0 || score > best_score_) {
    best_score_ = score;
    best_index_ = n_seen_;
    since_best_ = 0;
    return true;
  }
  ++since_best_;
  return false;
}

Tensor feature_tensor(const FeatureMatrix& f) {
  Tensor t(f.num_frames, f.num_bins);
  t.v = f.values;  // both row-major T x F
  return t;
}

FeatureCache::FeatureCache(std::string base_dir)
    : base_dir_(std::move(base_dir)) {}

const FeatureMatrix& FeatureCache::get(const Utterance& u) {
  const auto it = cache_.find(u.id);
  if (it != cache_.end()) return it->second;
  std::string base_id;
  double factor = 1.0;
  parse_sp_suffix(u.id, &base_id, &factor);
  std::filesystem::path p(u.audio_path);
  if (!base_dir_.empty() && p.is_relative())
    p = std::filesystem::path(base_dir_) / p;
  Waveform w = read_wav(p.string());
  if (factor != 1.0) w = speed_perturb(w, factor);
  FeatureMatrix f = cmvn(log_mel(w));
  return cache_.emplace(u.id, std::move(f)).first->second;
}

namespace {

struct PhaseResult {
  ModelState best;       // snapshot at the phase's best dev BLEU
  long best_epoch = 0;   // global epoch number of that snapshot
  double best_bleu = 0.0;
  std::string stop_reason;
};

// Runs one phase of epochs over `utts` (already expanded), mutating
// `state` in place and appending records to `log`. With early stopping the
// phase ends after hp.patience non-improving epochs; otherwise it runs
// exactly n_epochs ("fixed_k").
PhaseResult run_phase(ModelState& state, const std::vector<Utterance>& utts,
                      const Manifest& dev_set, const Vocab& vocab,
                      const HyperParams& hp, const AugmentPolicy& policy,
                      FeatureCache& cache, const std::string& phase_label,
                      long start_epoch, long n_epochs, bool early_stopping,
                      TrainLog& log) {
  if (utts.empty()) throw EmptyCorpusError("no training utterances");
  if (dev_set.utterances.empty()) throw EmptyCorpusError("empty dev set");

  // Sort by feature length (id as tie-break) and cut into buckets.
  std::vector<std::size_t> order(utts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<std::size_t> frames(utts.size());
  for (std::size_t i = 0; i < utts.size(); ++i)
    frames[i] = cache.get(utts[i]).num_frames;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (frames[a] != frames[b]) return frames[a] < frames[b];
    return utts[a].id < utts[b].id;
  });
  std::vector<std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < order.size(); i += hp.batch_size) {
    const std::size_t end = std::min(order.size(), i + hp.batch_size);
    buckets.emplace_back(order.begin() + i, order.begin() + end);
  }

  PhaseResult result;
  EarlyStopper stopper(hp.patience);
  bool stopped_early = false;
  for (long local = 1; local <= n_epochs; ++local) {
    const long epoch = start_epoch + local - 1;
    // Bucket order reshuffles every epoch from the run seed.
    std::vector<std::size_t> bucket_order(buckets.size());
    for (std::size_t i = 0; i < buckets.size(); ++i) bucket_order[i] = i;
    Rng shuffle_rng(derive_seed(hp.seed, "bucket", epoch));
    for (std::size_t i = bucket_order.size(); i > 1; --i) {
      const std::size_t j =
          static_cast<std::size_t>(shuffle_rng.uniform_below(i));
      std::swap(bucket_order[i - 1], bucket_order[j]);
    }

    double loss_weighted = 0.0;
    long positions = 0;
    for (const std::size_t bi : bucket_order) {
      GradBatch batch;
      long batch_positions = 0;
      for (const std::size_t ui : buckets[bi]) {
        const Utterance& u = utts[ui];
        FeatureMatrix f = cache.get(u);
        if (policy.sa_enabled) {
          Rng mask_rng(derive_seed(policy.seed, u.id, epoch));
          f = spec_augment(f, policy, mask_rng);
        }
        batch.features.push_back(feature_tensor(f));
        const std::vector<int> body = vocab.encode(u.tgt_text);
        std::vector<int> prefix;
        prefix.reserve(body.size() + 1);
        prefix.push_back(Vocab::kBos);
        prefix.insert(prefix.end(), body.begin(), body.end());
        std::vector<int> target(body);
        target.push_back(Vocab::kEos);
        batch_positions += static_cast<long>(target.size());
        batch.prefixes.push_back(std::move(prefix));
        batch.targets.push_back(std::move(target));
      }
      double batch_loss = 0.0;
      const auto grads =
          batch_loss_grads(state, batch, hp.label_smoothing, &batch_loss);
      const double lr = lr_at_step(state.step + 1, hp);
      adam_step(state, grads, lr);
      loss_weighted += batch_loss * static_cast<double>(batch_positions);
      positions += batch_positions;
    }
    state.epoch = epoch;

    // Greedy dev decoding for the stopping metric.
    std::vector<std::string> hyps, refs;
    hyps.reserve(dev_set.utterances.size());
    refs.reserve(dev_set.utterances.size());
    for (const Utterance& u : dev_set.utterances) {
      const Hypothesis h =
          greedy_decode(state, feature_tensor(cache.get(u)), 0);
      hyps.push_back(vocab.decode(h.tokens));
      refs.push_back(u.tgt_text);
    }
    const ScoreReport score = corpus_bleu(hyps, refs);

    EpochRecord rec;
    rec.epoch = epoch;
    rec.phase = phase_label;
    rec.n_train = utts.size();
    rec.train_loss =
        positions == 0 ? 0.0 : loss_weighted / static_cast<double>(positions);
    rec.dev_bleu = score.bleu;
    rec.dev_chrf = score.chrf_pp;
    rec.lr = lr_at_step(state.step, hp);
    log.records.push_back(rec);

    if (stopper.observe(score.bleu)) {
      result.best = state;  // deep copy of the improving epoch
      result.best_epoch = epoch;
      result.best_bleu = score.bleu;
    }
    if (early_stopping && stopper.should_stop()) {
      stopped_early = true;
      break;
    }
  }
  if (!early_stopping)
    result.stop_reason = "fixed_k";
  else
    result.stop_reason = stopped_early ? "early_stop" : "max_epochs";
  return result;
}

std::vector<Utterance> expanded_utterances(const Manifest& m,
                                           const AugmentPolicy& policy) {
  if (!policy.sp_enabled) return m.utterances;
  return expand_with_speed(m, policy).utterances;
}

}  // namespace

TrainResult train(const ModelState& model, const Manifest& train_set,
                  const Manifest& dev_set, const Vocab& vocab,
                  const HyperParams& hp, const AugmentPolicy& policy,
                  FeatureCache& cache) {
  hp.validate();
  policy.validate();
  ModelState state = model;
  TrainResult out;
  PhaseResult phase =
      run_phase(state, expanded_utterances(train_set, policy), dev_set, vocab,
                hp, policy, cache, "train", 1, hp.max_epochs,
                /*early_stopping=*/true, out.log);
  out.log.best_epoch = phase.best_epoch;
  out.log.stop_reason = phase.stop_reason;
  out.model = std::move(phase.best);
  return out;
}

TrainResult joint_finetune(const ModelState& model, const Manifest& mixed,
                           const Manifest& target_only,
                           const Manifest& dev_set, const Vocab& vocab,
                           const HyperParams& hp, const AugmentPolicy& policy,
                           FeatureCache& cache, long k_target_epochs) {
  hp.validate();
  policy.validate();
  if (k_target_epochs < kToConvergence)
    throw DomainError("negative target epoch count");
  if (target_only.utterances.empty())
    throw EmptyCorpusError("empty target corpus");
  std::set<std::string> mixed_pairs;
  for (const Utterance& u : mixed.utterances) mixed_pairs.insert(u.pair());
  for (const Utterance& u : target_only.utterances)
    if (mixed_pairs.count(u.pair()) == 0)
      throw PairingError("mixed corpus lacks language pair " + u.pair());

  ModelState state = model;
  TrainResult out;
  PhaseResult joint =
      run_phase(state, expanded_utterances(mixed, policy), dev_set, vocab, hp,
                policy, cache, "joint", 1, hp.max_epochs,
                /*early_stopping=*/true, out.log);
  state = joint.best;  // fine-tune from the best joint epoch
  long best_epoch = joint.best_epoch;
  double best_bleu = joint.best_bleu;
  std::string stop_reason = joint.stop_reason;
  ModelState final_state = std::move(joint.best);

  if (k_target_epochs != 0) {
    const long start = out.log.records.back().epoch + 1;
    const bool converge = k_target_epochs == kToConvergence;
    PhaseResult target = run_phase(
        state, expanded_utterances(target_only, policy), dev_set, vocab, hp,
        policy, cache, "target", start,
        converge ? hp.max_epochs : k_target_epochs, converge, out.log);
    stop_reason = target.stop_reason;
    // Fixed k keeps the last-epoch parameters; convergence keeps the best.
    final_state = converge ? std::move(target.best) : std::move(state);
    if (target.best_epoch != 0 && target.best_bleu > best_bleu) {
      best_bleu = target.best_bleu;
      best_epoch = target.best_epoch;
    }
  }
  out.log.best_epoch = best_epoch;
  out.log.stop_reason = stop_reason;
  out.model = std::move(final_state);
  return out;
}

}  // namespace tinyst

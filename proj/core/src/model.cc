// core/src/model.cc

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

#include <algorithm>
#include <cmath>
#include <fstream>

#include "json.hpp"
#include "tinyst/errors.h"
#include "tinyst/training.h"
#include "tinyst/vocab.h"

namespace tinyst {

namespace {

using nlohmann::json;

struct ParamSpec {
  std::string name;
  ParamKind kind;
  std::size_t rows;
  std::size_t cols;
};

void add_attention_specs(std::vector<ParamSpec>& s, const std::string& p,
                         std::size_t d) {
  s.push_back({p + ".ln.g", ParamKind::kGain, 1, d});
  s.push_back({p + ".ln.b", ParamKind::kBias, 1, d});
  for (const char* w : {"wq", "wk", "wv", "wo"})
    s.push_back({p + "." + w, ParamKind::kMatrix, d, d});
  for (const char* b : {"bq", "bk", "bv", "bo"})
    s.push_back({p + "." + b, ParamKind::kBias, 1, d});
}

void add_ff_specs(std::vector<ParamSpec>& s, const std::string& p,
                  std::size_t d, std::size_t ff) {
  s.push_back({p + ".ln.g", ParamKind::kGain, 1, d});
  s.push_back({p + ".ln.b", ParamKind::kBias, 1, d});
  s.push_back({p + ".w1", ParamKind::kMatrix, d, ff});
  s.push_back({p + ".b1", ParamKind::kBias, 1, ff});
  s.push_back({p + ".w2", ParamKind::kMatrix, ff, d});
  s.push_back({p + ".b2", ParamKind::kBias, 1, d});
}

// The canonical parameter inventory. Registration order here fixes both
// initialization order and checkpoint layout.
std::vector<ParamSpec> param_specs(const ModelConfig& cfg) {
  const std::size_t d = cfg.d_model;
  std::vector<ParamSpec> s;
  s.push_back({"enc.in.proj.w", ParamKind::kMatrix,
               cfg.conv_subsample_factor * cfg.feat_dim, d});
  s.push_back({"enc.in.proj.b", ParamKind::kBias, 1, d});
  for (std::size_t i = 0; i < cfg.enc_layers; ++i) {
    const std::string L = "enc." + std::to_string(i);
    s.push_back({L + ".conv.ln.g", ParamKind::kGain, 1, d});
    s.push_back({L + ".conv.ln.b", ParamKind::kBias, 1, d});
    s.push_back({L + ".conv.dw.w", ParamKind::kMatrix, 3, d});
    s.push_back({L + ".conv.dw.b", ParamKind::kBias, 1, d});
    s.push_back({L + ".conv.pw.w", ParamKind::kMatrix, d, d});
    s.push_back({L + ".conv.pw.b", ParamKind::kBias, 1, d});
    add_attention_specs(s, L + ".attn", d);
    add_ff_specs(s, L + ".ff", d, cfg.ff_dim);
  }
  s.push_back({"enc.out.ln.g", ParamKind::kGain, 1, d});
  s.push_back({"enc.out.ln.b", ParamKind::kBias, 1, d});
  s.push_back({"dec.embed", ParamKind::kMatrix, cfg.vocab_size, d});
  for (std::size_t i = 0; i < cfg.dec_layers; ++i) {
    const std::string L = "dec." + std::to_string(i);
    add_attention_specs(s, L + ".self", d);
    add_attention_specs(s, L + ".cross", d);
    add_ff_specs(s, L + ".ff", d, cfg.ff_dim);
  }
  s.push_back({"dec.out.ln.g", ParamKind::kGain, 1, d});
  s.push_back({"dec.out.ln.b", ParamKind::kBias, 1, d});
  s.push_back({"dec.out.proj.w", ParamKind::kMatrix, d, cfg.vocab_size});
  s.push_back({"dec.out.proj.b", ParamKind::kBias, 1, cfg.vocab_size});
  return s;
}

const char* kind_name(ParamKind k) {
  switch (k) {
    case ParamKind::kMatrix:
      return "matrix";
    case ParamKind::kBias:
      return "bias";
    case ParamKind::kGain:
      return "gain";
  }
  return "matrix";
}

}  // namespace

void ModelConfig::validate() const {
  if (d_model == 0) throw ConfigError("d_model");
  if (n_heads == 0) throw ConfigError("n_heads");
  if (d_model % n_heads != 0) throw ConfigError("d_model");
  if (enc_layers == 0) throw ConfigError("enc_layers");
  if (dec_layers == 0) throw ConfigError("dec_layers");
  if (ff_dim == 0) throw ConfigError("ff_dim");
  if (conv_subsample_factor == 0) throw ConfigError("conv_subsample_factor");
  if (dropout < 0.0 || dropout >= 1.0) throw ConfigError("dropout");
  if (feat_dim == 0) throw ConfigError("feat_dim");
  if (vocab_size <= static_cast<std::size_t>(Vocab::kNumSpecials))
    throw ConfigError("vocab_size");
}

Param& ModelState::find(const std::string& name) {
  for (Param& p : params)
    if (p.name == name) return p;
  throw LayoutError("no such parameter: " + name);
}

const Param& ModelState::find(const std::string& name) const {
  for (const Param& p : params)
    if (p.name == name) return p;
  throw LayoutError("no such parameter: " + name);
}

void ModelState::zero_grads() {
  for (Param& p : params) p.grad.fill(0.0);
}

ModelState init(const ModelConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  ModelState state;
  state.cfg = cfg;
  Rng rng(seed);
  for (const ParamSpec& spec : param_specs(cfg)) {
    Param p;
    p.name = spec.name;
    p.kind = spec.kind;
    p.value = Tensor::zeros(spec.rows, spec.cols);
    p.grad = Tensor::zeros(spec.rows, spec.cols);
    p.adam_m = Tensor::zeros(spec.rows, spec.cols);
    p.adam_v = Tensor::zeros(spec.rows, spec.cols);
    switch (spec.kind) {
      case ParamKind::kMatrix: {
        const double bound =
            std::sqrt(6.0 / static_cast<double>(spec.rows + spec.cols));
        for (double& x : p.value.v) x = rng.uniform_real(-bound, bound);
        break;
      }
      case ParamKind::kBias:
        break;  // zeros
      case ParamKind::kGain:
        p.value.fill(1.0);
        break;
    }
    state.params.push_back(std::move(p));
  }
  return state;
}

Tensor sinusoid_positions(std::size_t len, std::size_t d) {
  Tensor pe(len, d);
  for (std::size_t t = 0; t < len; ++t)
    for (std::size_t i = 0; i < d; i += 2) {
      const double freq =
          std::pow(10000.0, -static_cast<double>(i) / static_cast<double>(d));
      const double angle = static_cast<double>(t) * freq;
      pe.at(t, i) = std::sin(angle);
      if (i + 1 < d) pe.at(t, i + 1) = std::cos(angle);
    }
  return pe;
}

ModelGraph::ModelGraph(const ModelState& state)
    : state_(&state), trainable_(false), tape_(false, nullptr, 0.0) {}

// Without an RNG dropout is forced off; gradient checking builds its
// training graph this way so finite differences see a deterministic loss.
ModelGraph::ModelGraph(ModelState& state, Rng* rng)
    : state_(&state),
      trainable_(true),
      tape_(true, rng, rng != nullptr ? state.cfg.dropout : 0.0) {
  for (Param& p : state.params) grad_sinks_[p.name] = &p.grad;
}

Tape::NodeId ModelGraph::pid(const std::string& name) {
  const auto it = param_nodes_.find(name);
  if (it != param_nodes_.end()) return it->second;
  const Param& p = state_->find(name);
  Tensor* sink = trainable_ ? grad_sinks_.at(name) : nullptr;
  const Tape::NodeId id = tape_.param(p.value, sink);
  param_nodes_[name] = id;
  return id;
}

Tape::NodeId ModelGraph::attention(Tape::NodeId q_in, Tape::NodeId kv_in,
                                   bool causal, const std::string& prefix) {
  const std::size_t d = state_->cfg.d_model;
  const std::size_t H = state_->cfg.n_heads;
  const std::size_t dh = d / H;
  const Tape::NodeId q = tape_.add_rowvec(
      tape_.matmul(q_in, pid(prefix + ".wq")), pid(prefix + ".bq"));
  const Tape::NodeId k = tape_.add_rowvec(
      tape_.matmul(kv_in, pid(prefix + ".wk")), pid(prefix + ".bk"));
  const Tape::NodeId v = tape_.add_rowvec(
      tape_.matmul(kv_in, pid(prefix + ".wv")), pid(prefix + ".bv"));
  std::vector<Tape::NodeId> heads;
  heads.reserve(H);
  const double inv_sqrt_dh = 1.0 / std::sqrt(static_cast<double>(dh));
  for (std::size_t h = 0; h < H; ++h) {
    const std::size_t c0 = h * dh, c1 = (h + 1) * dh;
    const Tape::NodeId qh = tape_.col_slice(q, c0, c1);
    const Tape::NodeId kh = tape_.col_slice(k, c0, c1);
    const Tape::NodeId vh = tape_.col_slice(v, c0, c1);
    Tape::NodeId scores = tape_.scale(tape_.matmul_nt(qh, kh), inv_sqrt_dh);
    if (causal) scores = tape_.causal_mask(scores);
    heads.push_back(tape_.matmul(tape_.softmax_rows(scores), vh));
  }
  const Tape::NodeId ctx = tape_.col_concat(heads);
  return tape_.add_rowvec(tape_.matmul(ctx, pid(prefix + ".wo")),
                          pid(prefix + ".bo"));
}

Tape::NodeId ModelGraph::ff_block(Tape::NodeId x, const std::string& prefix) {
  Tape::NodeId f =
      tape_.layernorm(x, pid(prefix + ".ln.g"), pid(prefix + ".ln.b"));
  f = tape_.add_rowvec(tape_.matmul(f, pid(prefix + ".w1")),
                       pid(prefix + ".b1"));
  f = tape_.relu(f);
  f = tape_.add_rowvec(tape_.matmul(f, pid(prefix + ".w2")),
                       pid(prefix + ".b2"));
  return tape_.add(x, tape_.dropout(f));
}

Tape::NodeId ModelGraph::encode(const Tensor& features) {
  const ModelConfig& cfg = state_->cfg;
  if (features.cols != cfg.feat_dim)
    throw LayoutError("feature dimension mismatch");
  if (features.rows < cfg.conv_subsample_factor)
    throw TooShortError("features shorter than one subsampling window",
                        static_cast<long>(cfg.conv_subsample_factor));
  Tape::NodeId x = tape_.leaf(features);
  x = tape_.frame_stack(x, cfg.conv_subsample_factor);
  x = tape_.add_rowvec(tape_.matmul(x, pid("enc.in.proj.w")),
                       pid("enc.in.proj.b"));
  const std::size_t Tp = tape_.val(x).rows;
  x = tape_.add(x, tape_.leaf(sinusoid_positions(Tp, cfg.d_model)));
  x = tape_.dropout(x);
  for (std::size_t i = 0; i < cfg.enc_layers; ++i) {
    const std::string L = "enc." + std::to_string(i);
    // Convolution module: depthwise temporal conv then pointwise mix.
    Tape::NodeId c =
        tape_.layernorm(x, pid(L + ".conv.ln.g"), pid(L + ".conv.ln.b"));
    c = tape_.dwconv3(c, pid(L + ".conv.dw.w"), pid(L + ".conv.dw.b"));
    c = tape_.relu(c);
    c = tape_.add_rowvec(tape_.matmul(c, pid(L + ".conv.pw.w")),
                         pid(L + ".conv.pw.b"));
    x = tape_.add(x, tape_.dropout(c));
    // Self-attention.
    Tape::NodeId a =
        tape_.layernorm(x, pid(L + ".attn.ln.g"), pid(L + ".attn.ln.b"));
    a = attention(a, a, /*causal=*/false, L + ".attn");
    x = tape_.add(x, tape_.dropout(a));
    // Feed-forward.
    x = ff_block(x, L + ".ff");
  }
  x = tape_.layernorm(x, pid("enc.out.ln.g"), pid("enc.out.ln.b"));
  if (!all_finite(tape_.val(x))) throw NumericalError("encoder");
  return x;
}

Tape::NodeId ModelGraph::decode_logits(Tape::NodeId memory,
                                       const std::vector<int>& prefix) {
  const ModelConfig& cfg = state_->cfg;
  if (prefix.empty() || prefix[0] != Vocab::kBos)
    throw UsageError("decoder prefix must begin with BOS");
  Tape::NodeId e = tape_.embed(prefix, pid("dec.embed"));
  e = tape_.scale(e, std::sqrt(static_cast<double>(cfg.d_model)));
  e = tape_.add(e, tape_.leaf(sinusoid_positions(prefix.size(), cfg.d_model)));
  Tape::NodeId x = tape_.dropout(e);
  for (std::size_t i = 0; i < cfg.dec_layers; ++i) {
    const std::string L = "dec." + std::to_string(i);
    Tape::NodeId s =
        tape_.layernorm(x, pid(L + ".self.ln.g"), pid(L + ".self.ln.b"));
    s = attention(s, s, /*causal=*/true, L + ".self");
    x = tape_.add(x, tape_.dropout(s));
    Tape::NodeId c =
        tape_.layernorm(x, pid(L + ".cross.ln.g"), pid(L + ".cross.ln.b"));
    c = attention(c, memory, /*causal=*/false, L + ".cross");
    x = tape_.add(x, tape_.dropout(c));
    x = ff_block(x, L + ".ff");
  }
  x = tape_.layernorm(x, pid("dec.out.ln.g"), pid("dec.out.ln.b"));
  const Tape::NodeId logits = tape_.add_rowvec(
      tape_.matmul(x, pid("dec.out.proj.w")), pid("dec.out.proj.b"));
  if (!all_finite(tape_.val(logits))) throw NumericalError("decoder");
  return logits;
}

std::vector<Tensor> forward(const ModelState& state,
                            const std::vector<Tensor>& features,
                            const std::vector<std::vector<int>>& prefixes) {
  if (features.size() != prefixes.size())
    throw UsageError("forward batch length mismatch");
  ModelGraph graph(state);
  std::vector<Tensor> out;
  out.reserve(features.size());
  for (std::size_t i = 0; i < features.size(); ++i) {
    const Tape::NodeId mem = graph.encode(features[i]);
    const Tape::NodeId logits = graph.decode_logits(mem, prefixes[i]);
    out.push_back(graph.tape().val(logits));
  }
  return out;
}

namespace {

void check_batch(const GradBatch& batch) {
  if (batch.features.size() != batch.prefixes.size() ||
      batch.features.size() != batch.targets.size())
    throw UsageError("batch arrays must have equal length");
  if (batch.features.empty()) throw UsageError("empty batch");
  for (std::size_t i = 0; i < batch.prefixes.size(); ++i)
    if (batch.prefixes[i].size() != batch.targets[i].size())
      throw UsageError("prefix/target length mismatch");
}

}  // namespace

double batch_loss_value(const ModelState& state, const GradBatch& batch,
                        double label_smoothing) {
  check_batch(batch);
  ModelGraph graph(state);
  double total = 0.0;
  long count = 0;
  for (std::size_t i = 0; i < batch.features.size(); ++i) {
    const Tape::NodeId mem = graph.encode(batch.features[i]);
    const Tape::NodeId logits = graph.decode_logits(mem, batch.prefixes[i]);
    const LossSum ls =
        label_smoothed_loss_sum(graph.tape().val(logits), batch.targets[i],
                                label_smoothing, Vocab::kPad);
    total += ls.sum;
    count += ls.n_positions;
  }
  return count == 0 ? 0.0 : total / static_cast<double>(count);
}

std::map<std::string, Tensor> batch_loss_grads(ModelState& state,
                                               const GradBatch& batch,
                                               double label_smoothing,
                                               double* loss_out) {
  check_batch(batch);
  state.zero_grads();
  ModelGraph graph(state, /*rng=*/nullptr);
  std::vector<Tape::NodeId> sums;
  long count = 0;
  for (std::size_t i = 0; i < batch.features.size(); ++i) {
    const Tape::NodeId mem = graph.encode(batch.features[i]);
    const Tape::NodeId logits = graph.decode_logits(mem, batch.prefixes[i]);
    const LossSum ls =
        label_smoothed_loss_sum(graph.tape().val(logits), batch.targets[i],
                                label_smoothing, Vocab::kPad);
    sums.push_back(graph.tape().scalar_chain(logits, ls.sum, ls.dlogits));
    count += ls.n_positions;
  }
  const double coeff = count == 0 ? 0.0 : 1.0 / static_cast<double>(count);
  const Tape::NodeId loss = graph.tape().weighted_sum(
      sums, std::vector<double>(sums.size(), coeff));
  if (loss_out != nullptr) *loss_out = graph.tape().val(loss).at(0, 0);
  graph.tape().backward(loss);
  std::map<std::string, Tensor> grads;
  for (const Param& p : state.params) grads[p.name] = p.grad;
  return grads;
}

GradCheckReport grad_check(ModelState& state, const GradBatch& batch,
                           const GradCheckOptions& opts) {
  const auto grads = batch_loss_grads(state, batch, opts.label_smoothing);
  return grad_check_against(state, batch, grads, opts);
}

GradCheckReport grad_check_against(ModelState& state, const GradBatch& batch,
                                   const std::map<std::string, Tensor>& grads,
                                   const GradCheckOptions& opts) {
  std::size_t total_coords = 0;
  for (const Param& p : state.params) total_coords += p.value.size();
  Rng rng(opts.seed);
  GradCheckReport report;
  for (std::size_t s = 0; s < opts.n_samples; ++s) {
    std::size_t idx =
        static_cast<std::size_t>(rng.uniform_below(total_coords));
    Param* target = nullptr;
    for (Param& p : state.params) {
      if (idx < p.value.size()) {
        target = &p;
        break;
      }
      idx -= p.value.size();
    }
    const double orig = target->value.v[idx];
    target->value.v[idx] = orig + opts.fd_step;
    const double lp = batch_loss_value(state, batch, opts.label_smoothing);
    target->value.v[idx] = orig - opts.fd_step;
    const double lm = batch_loss_value(state, batch, opts.label_smoothing);
    target->value.v[idx] = orig;
    const double numeric = (lp - lm) / (2.0 * opts.fd_step);
    const double analytic = grads.at(target->name).v[idx];
    const double denom =
        std::max({std::fabs(analytic), std::fabs(numeric), 1e-4});
    const double rel = std::fabs(analytic - numeric) / denom;
    ++report.n_checked;
    if (rel > report.max_rel_err) {
      report.max_rel_err = rel;
      report.worst_param = target->name;
    }
  }
  report.pass = report.max_rel_err < opts.tolerance;
  return report;
}

void save_checkpoint(const ModelState& state, const std::string& path) {
  json header;
  header["version"] = 1;
  header["dtype"] = "f64";
  header["step"] = state.step;
  header["epoch"] = state.epoch;
  header["config"] = {{"d_model", state.cfg.d_model},
                      {"n_heads", state.cfg.n_heads},
                      {"enc_layers", state.cfg.enc_layers},
                      {"dec_layers", state.cfg.dec_layers},
                      {"ff_dim", state.cfg.ff_dim},
                      {"conv_subsample_factor", state.cfg.conv_subsample_factor},
                      {"dropout", state.cfg.dropout},
                      {"feat_dim", state.cfg.feat_dim},
                      {"vocab_size", state.cfg.vocab_size}};
  json dir = json::array();
  for (const Param& p : state.params) {
    for (const char* role : {"value", "adam_m", "adam_v"}) {
      dir.push_back({{"name", p.name},
                     {"role", role},
                     {"kind", kind_name(p.kind)},
                     {"rows", p.value.rows},
                     {"cols", p.value.cols}});
    }
  }
  header["tensors"] = std::move(dir);
  const std::string h = header.dump();

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write checkpoint: " + path);
  const std::uint64_t hlen = h.size();
  unsigned char lenbuf[8];
  for (int i = 0; i < 8; ++i)
    lenbuf[i] = static_cast<unsigned char>((hlen >> (8 * i)) & 0xFF);
  out.write(reinterpret_cast<const char*>(lenbuf), 8);
  out.write(h.data(), static_cast<std::streamsize>(h.size()));
  for (const Param& p : state.params) {
    for (const Tensor* t : {&p.value, &p.adam_m, &p.adam_v})
      out.write(reinterpret_cast<const char*>(t->v.data()),
                static_cast<std::streamsize>(t->v.size() * sizeof(double)));
  }
  if (!out) throw DataError("write failed: " + path);
}

ModelState load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open checkpoint: " + path);
  unsigned char lenbuf[8];
  in.read(reinterpret_cast<char*>(lenbuf), 8);
  if (in.gcount() != 8) throw CorruptFileError("checkpoint truncated: " + path);
  std::uint64_t hlen = 0;
  for (int i = 0; i < 8; ++i)
    hlen |= static_cast<std::uint64_t>(lenbuf[i]) << (8 * i);
  if (hlen > (1ULL << 24))
    throw CorruptFileError("implausible checkpoint header size: " + path);
  std::string h(hlen, '\0');
  in.read(h.data(), static_cast<std::streamsize>(hlen));
  if (static_cast<std::uint64_t>(in.gcount()) != hlen)
    throw CorruptFileError("checkpoint header truncated: " + path);

  json header;
  try {
    header = json::parse(h);
  } catch (const json::exception&) {
    throw CorruptFileError("checkpoint header is not valid JSON: " + path);
  }
  if (!header.contains("version") || header["version"] != 1)
    throw CorruptFileError("missing or unsupported checkpoint version: " + path);
  if (!header.contains("dtype") || header["dtype"] != "f64")
    throw CorruptFileError("unsupported checkpoint dtype: " + path);

  ModelConfig cfg;
  try {
    const json& jc = header.at("config");
    cfg.d_model = jc.at("d_model").get<std::size_t>();
    cfg.n_heads = jc.at("n_heads").get<std::size_t>();
    cfg.enc_layers = jc.at("enc_layers").get<std::size_t>();
    cfg.dec_layers = jc.at("dec_layers").get<std::size_t>();
    cfg.ff_dim = jc.at("ff_dim").get<std::size_t>();
    cfg.conv_subsample_factor = jc.at("conv_subsample_factor").get<std::size_t>();
    cfg.dropout = jc.at("dropout").get<double>();
    cfg.feat_dim = jc.at("feat_dim").get<std::size_t>();
    cfg.vocab_size = jc.at("vocab_size").get<std::size_t>();
  } catch (const json::exception&) {
    throw CorruptFileError("checkpoint config malformed: " + path);
  }
  cfg.validate();

  ModelState state;
  state.cfg = cfg;
  state.step = header.value("step", 0L);
  state.epoch = header.value("epoch", 0L);
  const std::vector<ParamSpec> specs = param_specs(cfg);
  const json& dir = header.at("tensors");
  if (!dir.is_array() || dir.size() != specs.size() * 3)
    throw CorruptFileError("checkpoint tensor directory mismatch: " + path);
  for (std::size_t i = 0; i < specs.size(); ++i) {
    Param p;
    p.name = specs[i].name;
    p.kind = specs[i].kind;
    for (std::size_t r = 0; r < 3; ++r) {
      const json& e = dir[i * 3 + r];
      if (e.at("name").get<std::string>() != specs[i].name ||
          e.at("rows").get<std::size_t>() != specs[i].rows ||
          e.at("cols").get<std::size_t>() != specs[i].cols)
        throw CorruptFileError("checkpoint tensor " + specs[i].name +
                               " does not match the configured model: " + path);
    }
    Tensor* dests[3] = {&p.value, &p.adam_m, &p.adam_v};
    for (Tensor* t : dests) {
      *t = Tensor::zeros(specs[i].rows, specs[i].cols);
      in.read(reinterpret_cast<char*>(t->v.data()),
              static_cast<std::streamsize>(t->v.size() * sizeof(double)));
      if (static_cast<std::size_t>(in.gcount()) != t->v.size() * sizeof(double))
        throw CorruptFileError("checkpoint data truncated: " + path);
    }
    p.grad = Tensor::zeros(specs[i].rows, specs[i].cols);
    state.params.push_back(std::move(p));
  }
  return state;
}

}  // namespace tinyst

// tools/tinyst_main.cc

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

// Command line surface over the tinyst core. One subcommand per pipeline
// stage; every stage reads its knobs from the same flat key=value config
// file, so a full experiment is reproducible from one config plus the
// manifests. Exit codes: 0 success, 1 usage error, 2 data error,
// 3 numerical failure.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tinyst/analysis.h"
#include "tinyst/augment.h"
#include "tinyst/config.h"
#include "tinyst/corpus.h"
#include "tinyst/decode.h"
#include "tinyst/errors.h"
#include "tinyst/metrics.h"
#include "tinyst/model.h"
#include "tinyst/rng.h"
#include "tinyst/sweep.h"
#include "tinyst/text.h"
#include "tinyst/training.h"
#include "tinyst/vocab.h"

namespace tinyst {
namespace {

// Options shared by every subcommand. seed_flag overrides the config file's
// seed when the user passed --seed explicitly.
struct CliCtx {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed_flag = 0;
  bool seed_given = false;

  Config config() const {
    if (config_path.empty()) return Config();
    return Config::from_file(config_path);
  }
};

HyperParams hyper_params(const CliCtx& ctx, const Config& c) {
  HyperParams hp = HyperParams::from_config(c);
  if (ctx.seed_given) hp.seed = ctx.seed_flag;
  hp.validate();
  return hp;
}

// Model geometry keys mirror the ModelConfig field names; vocab_size is
// always derived from data, never from the config file.
ModelConfig model_config(const Config& c) {
  ModelConfig m;
  m.d_model = static_cast<std::size_t>(c.get_long("d_model", long(m.d_model)));
  m.n_heads = static_cast<std::size_t>(c.get_long("n_heads", long(m.n_heads)));
  m.enc_layers =
      static_cast<std::size_t>(c.get_long("enc_layers", long(m.enc_layers)));
  m.dec_layers =
      static_cast<std::size_t>(c.get_long("dec_layers", long(m.dec_layers)));
  m.ff_dim = static_cast<std::size_t>(c.get_long("ff_dim", long(m.ff_dim)));
  m.conv_subsample_factor = static_cast<std::size_t>(c.get_long(
      "conv_subsample_factor", long(m.conv_subsample_factor)));
  m.dropout = c.get_double("dropout", m.dropout);
  m.feat_dim = static_cast<std::size_t>(
      c.get_long("feat_dim", long(m.feat_dim)));
  return m;
}

AugmentPolicy augment_policy(const Config& c, std::uint64_t seed) {
  AugmentPolicy p;
  p.sp_enabled = c.get_bool("sp_enabled", p.sp_enabled);
  p.sp_factors = c.get_double_list("sp_factors", p.sp_factors);
  p.sa_enabled = c.get_bool("sa_enabled", p.sa_enabled);
  p.max_time_mask = c.get_long("max_time_mask", p.max_time_mask);
  p.max_freq_mask = c.get_long("max_freq_mask", p.max_freq_mask);
  p.n_time_masks = c.get_long("n_time_masks", p.n_time_masks);
  p.n_freq_masks = c.get_long("n_freq_masks", p.n_freq_masks);
  p.seed = seed;
  p.validate();
  return p;
}

std::string out_path(const CliCtx& ctx, const std::string& name) {
  std::filesystem::create_directories(ctx.out_dir);
  return (std::filesystem::path(ctx.out_dir) / name).string();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw DataError("cannot write file: " + path);
}

// Relative audio paths in a manifest are relative to the manifest file, not
// to the process working directory. Rebasing them up front lets one
// FeatureCache serve manifests from different directories.
Manifest load_rebased(const std::string& path, Split which) {
  Manifest m = load_manifest(path, which);
  for (Utterance& u : m.utterances)
    u.audio_path = resolve_audio_path(path, u.audio_path);
  return m;
}

// Fills hyps/refs aligned by utterance id. Every decode row must match a
// manifest utterance and vice versa; anything unpaired is a data error.
void join_by_id(const std::vector<DecodeRow>& rows, const Manifest& m,
                std::vector<std::string>* hyps, std::vector<std::string>* refs,
                std::vector<std::string>* ids) {
  std::map<std::string, const DecodeRow*> by_id;
  for (const DecodeRow& r : rows) by_id[r.id] = &r;
  if (by_id.size() != rows.size())
    throw PairingError("duplicate id in decode file");
  for (const Utterance& u : m.utterances) {
    auto it = by_id.find(u.id);
    if (it == by_id.end())
      throw PairingError("no hypothesis for utterance: " + u.id);
    hyps->push_back(it->second->text);
    refs->push_back(u.tgt_text);
    if (ids) ids->push_back(u.id);
    by_id.erase(it);
  }
  if (!by_id.empty())
    throw PairingError("hypothesis id not in reference manifest: " +
                       by_id.begin()->first);
}

// ---------------------------------------------------------------------------
// prepare

int cmd_prepare(const CliCtx&, const std::vector<std::string>& paths,
                const std::string& split) {
  const Split which = parse_split(split);
  for (const std::string& path : paths) {
    const Manifest m = load_manifest(path, which);
    const CorpusStats s = stats(m);
    std::printf("%s: %zu utterances, %s h total, %s s mean\n", path.c_str(),
                s.n_utterances, format_fixed(s.total_hours, 2).c_str(),
                format_fixed(s.mean_duration_sec, 2).c_str());
    for (const auto& [pair, ps] : s.per_pair)
      std::printf("  %s: %zu utterances, %s h\n", pair.c_str(),
                  ps.n_utterances, format_fixed(ps.total_hours, 2).c_str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// augment

int cmd_augment(const CliCtx& ctx, const std::string& manifest_path,
                const std::string& split, long preview_masks) {
  const Config c = ctx.config();
  const HyperParams hp = hyper_params(ctx, c);
  AugmentPolicy policy = augment_policy(c, hp.seed);
  const Manifest m = load_manifest(manifest_path, parse_split(split));

  if (preview_masks > 0) {
    // Shows the mask widths the training loop would draw at epoch 1, which
    // is the cheapest way to sanity-check a SpecAugment config by eye.
    Manifest rebased = load_rebased(manifest_path, parse_split(split));
    FeatureCache cache("");
    long shown = 0;
    for (const Utterance& u : rebased.utterances) {
      if (shown++ >= preview_masks) break;
      const FeatureMatrix& f = cache.get(u);
      Rng rng(derive_seed(policy.seed, u.id, 1));
      const FeatureMatrix g = spec_augment(f, policy, rng);
      long zero_rows = 0, zero_cols = 0;
      for (std::size_t t = 0; t < g.num_frames; ++t) {
        bool all = true;
        for (std::size_t b = 0; b < g.num_bins && all; ++b)
          all = g.at(t, b) == 0.0;
        zero_rows += all;
      }
      for (std::size_t b = 0; b < g.num_bins; ++b) {
        bool all = true;
        for (std::size_t t = 0; t < g.num_frames && all; ++t)
          all = g.at(t, b) == 0.0;
        zero_cols += all;
      }
      std::printf("%s: %zu frames, %ld masked frames, %ld masked bins\n",
                  u.id.c_str(), g.num_frames, zero_rows, zero_cols);
    }
    return 0;
  }

  policy.sp_enabled = true;  // expanding is the whole point of this command
  const Manifest expanded = expand_with_speed(m, policy);
  const std::string dest = out_path(ctx, "expanded.tsv");
  save_manifest(expanded, dest);
  std::printf("%zu utterances -> %zu, written to %s\n", m.utterances.size(),
              expanded.utterances.size(), dest.c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// train / finetune-joint

void report_training(const TrainResult& res) {
  const TrainLog& log = res.log;
  double best_bleu = 0.0;
  if (log.best_epoch >= 1 &&
      log.best_epoch <= static_cast<long>(log.records.size()))
    best_bleu = log.records[log.best_epoch - 1].dev_bleu;
  std::printf("%zu epochs (%s), best epoch %ld, dev BLEU %s\n",
              log.records.size(), log.stop_reason.c_str(), log.best_epoch,
              format_fixed(best_bleu, 2).c_str());
}

void save_training(const CliCtx& ctx, const TrainResult& res,
                   const Vocab& vocab) {
  save_checkpoint(res.model, out_path(ctx, "model.ckpt"));
  vocab.save(out_path(ctx, "vocab.txt"));
  write_text_file(out_path(ctx, "train_log.jsonl"), res.log.to_jsonl());
}

int cmd_train(const CliCtx& ctx, const std::string& train_path,
              const std::string& dev_path, const std::string& init_ckpt) {
  const Config c = ctx.config();
  const HyperParams hp = hyper_params(ctx, c);
  const AugmentPolicy policy = augment_policy(c, hp.seed);
  const Manifest train_set = load_rebased(train_path, Split::kTrain);
  const Manifest dev_set = load_rebased(dev_path, Split::kDev);

  const Vocab vocab = Vocab::build(train_set);
  ModelState state;
  if (init_ckpt.empty()) {
    ModelConfig mc = model_config(c);
    mc.vocab_size = vocab.size();
    mc.validate();
    state = init(mc, hp.seed);
  } else {
    state = load_checkpoint(init_ckpt);
  }

  FeatureCache cache("");
  const TrainResult res =
      train(state, train_set, dev_set, vocab, hp, policy, cache);
  save_training(ctx, res, vocab);
  report_training(res);
  return 0;
}

int cmd_finetune_joint(const CliCtx& ctx, const std::string& target_path,
                       const std::string& extra_path,
                       const std::string& dev_path, long k_target,
                       const std::string& init_ckpt) {
  const Config c = ctx.config();
  const HyperParams hp = hyper_params(ctx, c);
  const AugmentPolicy policy = augment_policy(c, hp.seed);
  const Manifest target = load_rebased(target_path, Split::kTrain);
  const Manifest extra = load_rebased(extra_path, Split::kTrain);
  const Manifest dev_set = load_rebased(dev_path, Split::kDev);
  const Manifest mixed = mix(target, extra, hp.seed);

  const Vocab vocab = Vocab::build(mixed);
  ModelState state;
  if (init_ckpt.empty()) {
    ModelConfig mc = model_config(c);
    mc.vocab_size = vocab.size();
    mc.validate();
    state = init(mc, hp.seed);
  } else {
    state = load_checkpoint(init_ckpt);
  }

  FeatureCache cache("");
  const TrainResult res = joint_finetune(state, mixed, target, dev_set, vocab,
                                         hp, policy, cache, k_target);
  save_training(ctx, res, vocab);
  report_training(res);
  return 0;
}

// ---------------------------------------------------------------------------
// decode

int cmd_decode(const CliCtx& ctx, const std::string& ckpt_path,
               const std::string& vocab_path, const std::string& manifest_path,
               const std::string& split, long beam_flag, long max_len) {
  const Config c = ctx.config();
  const HyperParams hp = hyper_params(ctx, c);
  const std::size_t beam =
      beam_flag > 0 ? static_cast<std::size_t>(beam_flag) : hp.beam_size;
  const ModelState state = load_checkpoint(ckpt_path);
  const Vocab vocab = Vocab::load(vocab_path);
  const Manifest m = load_rebased(manifest_path, parse_split(split));

  FeatureCache cache("");
  std::vector<DecodeRow> rows;
  for (const Utterance& u : m.utterances) {
    const Tensor feats = feature_tensor(cache.get(u));
    const Hypothesis h = beam <= 1 ? greedy_decode(state, feats, max_len)
                                   : beam_search(state, feats, beam, max_len);
    rows.push_back({u.id, vocab.decode(h.tokens), h.normalized_score,
                    h.truncated});
  }
  const std::string dest = out_path(ctx, "decodes.tsv");
  write_decodes(rows, dest);
  std::printf("%zu hypotheses (beam %zu) written to %s\n", rows.size(), beam,
              dest.c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// score

int cmd_score(const CliCtx& ctx, const std::string& hyp_path,
              const std::string& ref_path, const std::string& split) {
  const std::vector<DecodeRow> rows = read_decodes(hyp_path);
  const Manifest m = load_manifest(ref_path, parse_split(split));
  std::vector<std::string> hyps, refs;
  join_by_id(rows, m, &hyps, &refs, nullptr);
  const ScoreReport report = corpus_bleu(hyps, refs);
  const std::string json = score_report_json(report);
  write_text_file(out_path(ctx, "score.json"), json + "\n");
  std::printf("%s\n", json.c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// sweep

// Grid axes read "grid_" + the hyperparameter key, each a comma separated
// list; absent keys keep the single-point defaults. Integer axes are parsed
// through the real-list reader, so 1e2 style values work there too.
Grid grid_from_config(const Config& c) {
  Grid g;
  auto longs = [&c](const std::string& key, const std::vector<long>& dflt) {
    std::vector<double> dd(dflt.begin(), dflt.end());
    std::vector<long> out;
    for (double v : c.get_double_list(key, dd))
      out.push_back(static_cast<long>(v));
    return out;
  };
  auto sizes = [&c](const std::string& key,
                    const std::vector<std::size_t>& dflt) {
    std::vector<double> dd(dflt.begin(), dflt.end());
    std::vector<std::size_t> out;
    for (double v : c.get_double_list(key, dd))
      out.push_back(static_cast<std::size_t>(v));
    return out;
  };
  auto ints = [&c](const std::string& key, const std::vector<int>& dflt) {
    std::vector<double> dd(dflt.begin(), dflt.end());
    std::vector<int> out;
    for (double v : c.get_double_list(key, dd))
      out.push_back(static_cast<int>(v));
    return out;
  };
  g.lr_peak = c.get_double_list("grid_lr_peak", g.lr_peak);
  g.label_smoothing =
      c.get_double_list("grid_label_smoothing", g.label_smoothing);
  g.batch_size = sizes("grid_batch_size", g.batch_size);
  g.warmup_steps = longs("grid_warmup_steps", g.warmup_steps);
  g.patience = longs("grid_patience", g.patience);
  g.beam_size = sizes("grid_beam_size", g.beam_size);
  g.sp = ints("grid_sp", g.sp);
  g.sa = ints("grid_sa", g.sa);
  return g;
}

int cmd_sweep(const CliCtx& ctx, const std::string& train_path,
              const std::string& dev_path, long budget, long parallel,
              std::string records_path, bool full) {
  const Config c = ctx.config();
  const HyperParams hp = hyper_params(ctx, c);
  const Grid grid = full ? Grid::full() : grid_from_config(c);
  grid.validate();
  if (records_path.empty()) records_path = out_path(ctx, "records.jsonl");

  SweepContext sc;
  sc.train_set = load_rebased(train_path, Split::kTrain);
  sc.dev_set = load_rebased(dev_path, Split::kDev);
  const Vocab vocab = Vocab::build(sc.train_set);
  sc.vocab = &vocab;
  sc.model_cfg = model_config(c);
  sc.model_cfg.vocab_size = vocab.size();
  sc.model_cfg.validate();
  sc.policy_base = augment_policy(c, hp.seed);
  sc.max_epochs = hp.max_epochs;
  sc.seed = hp.seed;
  FeatureCache cache("");
  sc.cache = &cache;

  const std::size_t n_runs =
      budget > 0 ? static_cast<std::size_t>(budget) : grid.total();
  const std::vector<ExperimentRecord> records =
      run_grid(grid, sc, n_runs, records_path,
               parallel > 0 ? static_cast<std::size_t>(parallel) : 1);

  std::size_t failed = 0;
  for (const ExperimentRecord& r : records) failed += !r.ok();
  std::printf("%zu runs (%zu failed), records in %s\n", records.size(),
              failed, records_path.c_str());
  if (failed < records.size()) {
    const ExperimentRecord best = select_best(records);
    std::printf("best: %s\n", experiment_record_json(best).c_str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// analyze

int cmd_analyze(const CliCtx& ctx, const std::string& hyp_path,
                const std::string& ref_path, const std::string& split,
                double threshold) {
  const std::vector<DecodeRow> rows = read_decodes(hyp_path);
  const Manifest m = load_manifest(ref_path, parse_split(split));
  std::vector<std::string> hyps, refs, ids;
  join_by_id(rows, m, &hyps, &refs, &ids);

  std::vector<PairText> pairs;
  std::vector<NumeralAudit> audits;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    pairs.push_back({ids[i], hyps[i], refs[i]});
    NumeralAudit a = numeral_audit(hyps[i], refs[i]);
    a.id = ids[i];
    audits.push_back(a);
  }
  const std::vector<ErrorBucket> buckets = classify_lengths(pairs, threshold);

  write_text_file(out_path(ctx, "analysis.md"),
                  analysis_report_markdown(buckets, audits));
  write_text_file(out_path(ctx, "analysis.jsonl"),
                  analysis_report_jsonl(buckets, audits));

  std::map<std::string, long> verdicts;
  for (const NumeralAudit& a : audits) ++verdicts[numeral_verdict_name(a.verdict)];
  std::printf("%zu pairs analyzed\n", pairs.size());
  for (const auto& [name, count] : verdicts)
    std::printf("  %s: %ld\n", name.c_str(), count);
  return 0;
}

// ---------------------------------------------------------------------------
// report

int cmd_report(const CliCtx& ctx, const std::string& records_path,
               const std::string& layout_name) {
  const std::vector<ExperimentRecord> records = load_records(records_path);
  const TableLayout layout = parse_layout(layout_name);
  const std::string md = render_tables(records, layout);
  write_text_file(out_path(ctx, layout_name + ".md"), md);
  std::printf("%s", md.c_str());
  return 0;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"tinyst: a desk-scale speech translation laboratory"};
  app.require_subcommand(1);
  app.fallthrough();

  CliCtx ctx;
  app.add_option("--config", ctx.config_path, "flat key=value config file");
  app.add_option("--seed", ctx.seed_flag, "override the config seed")
      ->each([&ctx](const std::string&) { ctx.seed_given = true; });
  app.add_option("--out", ctx.out_dir, "output directory (default .)");

  // prepare
  std::vector<std::string> prep_manifests;
  std::string prep_split = "train";
  CLI::App* prepare = app.add_subcommand("prepare", "validate manifests");
  prepare->add_option("manifests", prep_manifests, "manifest TSV paths")
      ->required();
  prepare->add_option("--split", prep_split, "train, dev or test");

  // augment
  std::string aug_manifest, aug_split = "train";
  long aug_preview = 0;
  CLI::App* augment =
      app.add_subcommand("augment", "expand a manifest with speed factors");
  augment->add_option("manifest", aug_manifest, "manifest TSV path")
      ->required();
  augment->add_option("--split", aug_split, "train, dev or test");
  augment->add_option("--preview-masks", aug_preview,
                      "preview SpecAugment on the first N utterances");

  // train
  std::string tr_train, tr_dev, tr_init;
  CLI::App* train_cmd = app.add_subcommand("train", "train a model");
  train_cmd->add_option("--train", tr_train, "training manifest")->required();
  train_cmd->add_option("--dev", tr_dev, "development manifest")->required();
  train_cmd->add_option("--init", tr_init, "checkpoint to start from");

  // finetune-joint
  std::string ft_target, ft_extra, ft_dev, ft_init;
  long ft_k = kToConvergence;
  CLI::App* finetune = app.add_subcommand(
      "finetune-joint", "joint training then target-only fine-tuning");
  finetune->add_option("--target", ft_target, "target-pair train manifest")
      ->required();
  finetune->add_option("--extra", ft_extra, "helper-pair train manifest")
      ->required();
  finetune->add_option("--dev", ft_dev, "development manifest")->required();
  finetune->add_option("--k-target", ft_k,
                       "target-only epochs; -1 trains to convergence");
  finetune->add_option("--init", ft_init, "checkpoint to start from");

  // decode
  std::string dec_ckpt, dec_vocab, dec_manifest, dec_split = "test";
  long dec_beam = 0, dec_max_len = 0;
  CLI::App* decode = app.add_subcommand("decode", "translate a manifest");
  decode->add_option("--checkpoint", dec_ckpt, "model checkpoint")->required();
  decode->add_option("--vocab", dec_vocab, "vocabulary file")->required();
  decode->add_option("--manifest", dec_manifest, "manifest to decode")
      ->required();
  decode->add_option("--split", dec_split, "train, dev or test");
  decode->add_option("--beam", dec_beam, "beam width; 1 decodes greedily");
  decode->add_option("--max-len", dec_max_len, "decoder length bound");

  // score
  std::string sc_hyp, sc_ref, sc_split = "test";
  CLI::App* score = app.add_subcommand("score", "BLEU and chrF++");
  score->add_option("--hyp", sc_hyp, "decode TSV")->required();
  score->add_option("--ref", sc_ref, "reference manifest")->required();
  score->add_option("--split", sc_split, "train, dev or test");

  // sweep
  std::string sw_train, sw_dev, sw_records;
  long sw_budget = 0, sw_parallel = 1;
  bool sw_full = false;
  CLI::App* sweep = app.add_subcommand("sweep", "hyperparameter grid search");
  sweep->add_option("--train", sw_train, "training manifest")->required();
  sweep->add_option("--dev", sw_dev, "development manifest")->required();
  sweep->add_option("--budget", sw_budget, "run at most N grid points");
  sweep->add_option("--parallel", sw_parallel, "concurrent runs");
  sweep->add_option("--records", sw_records,
                    "records JSONL path (default <out>/records.jsonl)");
  sweep->add_flag("--full", sw_full, "use the full studied grid");

  // analyze
  std::string an_hyp, an_ref, an_split = "test";
  double an_threshold = kDefaultLowBleuThreshold;
  CLI::App* analyze =
      app.add_subcommand("analyze", "length and numeral error analysis");
  analyze->add_option("--hyp", an_hyp, "decode TSV")->required();
  analyze->add_option("--ref", an_ref, "reference manifest")->required();
  analyze->add_option("--split", an_split, "train, dev or test");
  analyze->add_option("--low-bleu", an_threshold, "LOW_BLEU threshold");

  // report
  std::string rep_records, rep_layout = "table6";
  CLI::App* report = app.add_subcommand("report", "render result tables");
  report->add_option("--records", rep_records, "records JSONL path")
      ->required();
  report->add_option("--layout", rep_layout, "table3, table5 or table6");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (prepare->parsed()) return cmd_prepare(ctx, prep_manifests, prep_split);
  if (augment->parsed())
    return cmd_augment(ctx, aug_manifest, aug_split, aug_preview);
  if (train_cmd->parsed()) return cmd_train(ctx, tr_train, tr_dev, tr_init);
  if (finetune->parsed())
    return cmd_finetune_joint(ctx, ft_target, ft_extra, ft_dev, ft_k, ft_init);
  if (decode->parsed())
    return cmd_decode(ctx, dec_ckpt, dec_vocab, dec_manifest, dec_split,
                      dec_beam, dec_max_len);
  if (score->parsed()) return cmd_score(ctx, sc_hyp, sc_ref, sc_split);
  if (sweep->parsed())
    return cmd_sweep(ctx, sw_train, sw_dev, sw_budget, sw_parallel, sw_records,
                     sw_full);
  if (analyze->parsed())
    return cmd_analyze(ctx, an_hyp, an_ref, an_split, an_threshold);
  if (report->parsed()) return cmd_report(ctx, rep_records, rep_layout);
  return 1;
}

}  // namespace
}  // namespace tinyst

int main(int argc, char** argv) {
  try {
    return tinyst::run_cli(argc, argv);
  } catch (const tinyst::NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  } catch (const tinyst::DataError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return 2;
  } catch (const tinyst::UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

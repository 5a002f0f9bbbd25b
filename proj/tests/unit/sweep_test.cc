// tests/unit/sweep_test.cc

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

#include "tinyst/sweep.h"

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "support/synth.h"
#include "tinyst/dsp.h"
#include "tinyst/errors.h"

namespace tinyst {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.is_open());
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

ExperimentRecord make_record(std::size_t index, double bleu, double chrf,
                             std::size_t batch) {
  ExperimentRecord r;
  r.index = index;
  r.hp.batch_size = batch;
  r.dev_bleu = bleu;
  r.dev_chrf = chrf;
  return r;
}

}  // namespace

TEST_SUITE("sweep") {

TEST_CASE("full grid covers every axis combination") {
  const Grid g = Grid::full();
  CHECK(g.total() == 3u * 3u * 4u * 4u * 3u * 3u * 2u * 2u);

  const ExperimentRecord first = g.config_at(0);
  CHECK(first.hp.lr_peak == 6e-4);
  CHECK(first.hp.label_smoothing == 0.0);
  CHECK(first.hp.batch_size == 5);
  CHECK(first.hp.warmup_steps == 100);
  CHECK(first.hp.patience == 5);
  CHECK(first.hp.beam_size == 1);
  CHECK(first.sp == false);
  CHECK(first.sa == false);

  const ExperimentRecord last = g.config_at(g.total() - 1);
  CHECK(last.hp.lr_peak == 3e-5);
  CHECK(last.hp.label_smoothing == 0.2);
  CHECK(last.hp.batch_size == 64);
  CHECK(last.hp.warmup_steps == 400);
  CHECK(last.hp.patience == 20);
  CHECK(last.hp.beam_size == 10);
  CHECK(last.sp == true);
  CHECK(last.sa == true);

  CHECK_THROWS_AS(g.config_at(g.total()), DomainError);
}

TEST_CASE("enumeration varies the last axis fastest") {
  const Grid g = Grid::full();
  // index 1 differs from index 0 only in sa; index 2 only in sp.
  CHECK(g.config_at(1).sa == true);
  CHECK(g.config_at(1).sp == false);
  CHECK(g.config_at(1).hp.beam_size == 1);
  CHECK(g.config_at(2).sp == true);
  CHECK(g.config_at(2).sa == false);
  // One beam step is sa * sp = 4 indices wide.
  CHECK(g.config_at(4).hp.beam_size == 5);
  CHECK(g.config_at(4).hp.patience == 5);
  // One warmup step is sa * sp * beam * patience = 36 indices wide.
  CHECK(g.config_at(36).hp.warmup_steps == 250);
  CHECK(g.config_at(36).hp.lr_peak == 6e-4);
  // Every index reports itself.
  CHECK(g.config_at(17).index == 17);
}

TEST_CASE("grid axes must be non-empty") {
  Grid g;
  g.patience.clear();
  CHECK_THROWS_AS(g.validate(), ConfigError);
  CHECK_THROWS_AS(g.total(), ConfigError);
  Grid g2;
  g2.lr_peak.clear();
  CHECK_THROWS_AS(g2.validate(), ConfigError);
}

TEST_CASE("experiment records round trip through json") {
  ExperimentRecord r;
  r.index = 42;
  r.hp.lr_peak = 6e-4;
  r.hp.label_smoothing = 0.2;
  r.hp.batch_size = 10;
  r.hp.warmup_steps = 350;
  r.hp.patience = 20;
  r.hp.beam_size = 5;
  r.hp.max_epochs = 30;
  r.hp.seed = 987654321;
  r.sp = true;
  r.sa = false;
  r.dev_bleu = 34.25;
  r.dev_chrf = 55.5;
  r.best_epoch = 12;
  r.wall_time_sec = 1.75;
  r.error = "";

  const ExperimentRecord b =
      experiment_record_from_json(experiment_record_json(r));
  CHECK(b.index == r.index);
  CHECK(b.hp.lr_peak == r.hp.lr_peak);
  CHECK(b.hp.label_smoothing == r.hp.label_smoothing);
  CHECK(b.hp.batch_size == r.hp.batch_size);
  CHECK(b.hp.warmup_steps == r.hp.warmup_steps);
  CHECK(b.hp.patience == r.hp.patience);
  CHECK(b.hp.beam_size == r.hp.beam_size);
  CHECK(b.hp.max_epochs == r.hp.max_epochs);
  CHECK(b.hp.seed == r.hp.seed);
  CHECK(b.sp == r.sp);
  CHECK(b.sa == r.sa);
  CHECK(b.dev_bleu == r.dev_bleu);
  CHECK(b.dev_chrf == r.dev_chrf);
  CHECK(b.best_epoch == r.best_epoch);
  CHECK(b.wall_time_sec == r.wall_time_sec);
  CHECK(b.ok());

  CHECK_THROWS_AS(experiment_record_from_json("{oops"), ParseError);
}

TEST_CASE("record files append and reload") {
  const std::string dir = testsupport::fresh_dir("sweep_records");
  const std::string path = dir + "/records.jsonl";
  CHECK(load_records(path).empty());

  append_record(make_record(0, 30.0, 50.0, 32), path);
  append_record(make_record(1, 31.0, 51.0, 32), path);
  const std::vector<ExperimentRecord> got = load_records(path);
  REQUIRE(got.size() == 2);
  CHECK(got[0].index == 0);
  CHECK(got[1].dev_bleu == 31.0);

  std::ofstream(path, std::ios::app) << "junk\n";
  CHECK_THROWS_AS(load_records(path), ParseError);
}

TEST_CASE("select_best ranks bleu then chrf then batch then order") {
  // A six-point grid slice: SpecAugment with patience 10 peaks at 36.4.
  std::vector<ExperimentRecord> records;
  const double bleus[6] = {33.1, 33.8, 34.0, 35.3, 36.4, 35.6};
  const long patiences[6] = {5, 5, 5, 5, 10, 20};
  for (std::size_t i = 0; i < 6; ++i) {
    ExperimentRecord r = make_record(i, bleus[i], 50.0, 32);
    r.hp.patience = patiences[i];
    r.hp.beam_size = (i == 0) ? 5 : 10;
    r.sa = i >= 3;
    records.push_back(r);
  }
  const ExperimentRecord best = select_best(records);
  CHECK(best.dev_bleu == 36.4);
  CHECK(best.hp.patience == 10);
  CHECK(best.hp.beam_size == 10);
  CHECK(best.sa == true);

  // Equal BLEU falls through to chrF++.
  std::vector<ExperimentRecord> tie = {make_record(0, 35.0, 56.6, 32),
                                       make_record(1, 35.0, 56.9, 32)};
  CHECK(select_best(tie).dev_chrf == 56.9);

  // Equal BLEU and chrF++ prefers the smaller batch.
  std::vector<ExperimentRecord> tie2 = {make_record(0, 35.0, 56.9, 32),
                                        make_record(1, 35.0, 56.9, 10)};
  CHECK(select_best(tie2).hp.batch_size == 10);

  // Full tie keeps the earlier record.
  std::vector<ExperimentRecord> tie3 = {make_record(0, 35.0, 56.9, 10),
                                        make_record(1, 35.0, 56.9, 10)};
  CHECK(select_best(tie3).index == 0);

  // Failed records never win.
  std::vector<ExperimentRecord> failed = {make_record(0, 99.0, 99.0, 32),
                                          make_record(1, 1.0, 1.0, 32)};
  failed[0].error = "exploded";
  CHECK(select_best(failed).dev_bleu == 1.0);
  failed[1].error = "also exploded";
  CHECK_THROWS_AS(select_best(failed), NoResultError);
  CHECK_THROWS_AS(select_best({}), NoResultError);
}

TEST_CASE("tables render and parse back") {
  std::vector<ExperimentRecord> records;
  ExperimentRecord a = make_record(0, 36.4, 56.9, 32);
  a.hp.lr_peak = 3e-4;
  a.hp.label_smoothing = 0.1;
  a.hp.warmup_steps = 250;
  a.hp.patience = 10;
  a.hp.beam_size = 10;
  a.sp = false;
  a.sa = true;
  ExperimentRecord b = make_record(1, 33.1, 52.0, 10);
  b.hp.lr_peak = 3e-5;
  b.hp.label_smoothing = 0.0;
  b.hp.warmup_steps = 100;
  b.hp.patience = 5;
  b.hp.beam_size = 5;
  b.sp = true;
  b.sa = false;
  records = {a, b};

  for (const TableLayout layout :
       {TableLayout::kLrBatch, TableLayout::kSpSa, TableLayout::kFullGrid}) {
    const std::string md = render_tables(records, layout);
    CHECK(md == render_tables(records, layout));  // byte-stable
    const std::vector<ExperimentRecord> back = parse_markdown_table(md);
    REQUIRE(back.size() == 2);
    CHECK(back[0].dev_bleu == 36.4);
    CHECK(back[1].dev_bleu == 33.1);
    if (layout != TableLayout::kSpSa) {
      CHECK(back[0].hp.lr_peak == 3e-4);
      CHECK(back[1].hp.lr_peak == 3e-5);
      CHECK(back[0].hp.batch_size == 32);
      CHECK(back[1].hp.batch_size == 10);
    }
    if (layout == TableLayout::kLrBatch) {
      CHECK(back[0].dev_chrf == 56.9);
      CHECK(back[1].dev_chrf == 52.0);
    }
    if (layout != TableLayout::kLrBatch) {
      CHECK(back[0].sp == false);
      CHECK(back[0].sa == true);
      CHECK(back[1].sp == true);
      CHECK(back[1].sa == false);
    }
    if (layout == TableLayout::kFullGrid) {
      CHECK(back[0].hp.label_smoothing == 0.1);
      CHECK(back[0].hp.warmup_steps == 250);
      CHECK(back[0].hp.patience == 10);
      CHECK(back[0].hp.beam_size == 10);
      CHECK(back[1].hp.label_smoothing == 0.0);
      CHECK(back[1].hp.warmup_steps == 100);
      CHECK(back[1].hp.patience == 5);
      CHECK(back[1].hp.beam_size == 5);
    }
  }
}

TEST_CASE("rendering skips failed records and survives empty input") {
  ExperimentRecord bad = make_record(0, 50.0, 50.0, 32);
  bad.error = "diverged";
  const std::string md = render_tables({bad}, TableLayout::kSpSa);
  std::size_t lines = 0;
  for (const char c : md) lines += (c == '\n');
  CHECK(lines == 2);  // header and separator only
  CHECK(md.find("50.0") == std::string::npos);
  CHECK(md == render_tables({}, TableLayout::kSpSa));
}

TEST_CASE("table parsing rejects malformed input") {
  CHECK(parse_layout("table3") == TableLayout::kLrBatch);
  CHECK(parse_layout("table5") == TableLayout::kSpSa);
  CHECK(parse_layout("table6") == TableLayout::kFullGrid);
  CHECK_THROWS_AS(parse_layout("table4"), LayoutError);

  CHECK_THROWS_AS(parse_markdown_table(""), LayoutError);
  CHECK_THROWS_AS(parse_markdown_table("| made | up |\n"), LayoutError);

  const std::string header = "| SP | SA | BLEU |\n| --- | --- | --- |\n";
  CHECK_THROWS_AS(parse_markdown_table(header + "| True | Maybe | 1.0 |\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_markdown_table(header + "| True | False |\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_markdown_table(header + "no pipes at all\n"),
                  ParseError);

  const std::string h3 = "| LR | batch size | BLEU | chrF++ |\n| --- |\n";
  CHECK_THROWS_AS(parse_markdown_table(h3 + "| 0.0003 | 0 | 1.0 | 2.0 |\n"),
                  ParseError);
}

TEST_CASE("run_grid executes, appends and resumes in order") {
  const std::string dir = testsupport::fresh_dir("sweep_run");
  const Manifest corpus =
      testsupport::make_synth_corpus(dir, 3, 11, "bho", "hi", 1);
  const Vocab vocab = Vocab::build(corpus);

  ModelConfig cfg;
  cfg.d_model = 16;
  cfg.n_heads = 2;
  cfg.enc_layers = 1;
  cfg.dec_layers = 1;
  cfg.ff_dim = 24;
  cfg.conv_subsample_factor = 4;
  cfg.dropout = 0.0;
  cfg.feat_dim = kNumMels;
  cfg.vocab_size = vocab.size();

  FeatureCache cache(dir);
  SweepContext ctx;
  ctx.train_set = corpus;
  ctx.dev_set = corpus;
  ctx.vocab = &vocab;
  ctx.model_cfg = cfg;
  ctx.max_epochs = 1;
  ctx.seed = 3;
  ctx.cache = &cache;

  Grid g;
  g.batch_size = {2};
  g.beam_size = {1, 2};

  const std::string path = dir + "/records.jsonl";
  CHECK_THROWS_AS(run_grid(g, ctx, 0, path), DomainError);
  {
    SweepContext broken = ctx;
    broken.vocab = nullptr;
    CHECK_THROWS_AS(run_grid(g, ctx, 1, path, 0), DomainError);
    CHECK_THROWS_AS(run_grid(g, broken, 1, path), UsageError);
  }

  const std::vector<ExperimentRecord> one = run_grid(g, ctx, 1, path);
  REQUIRE(one.size() == 1);
  CHECK(one[0].index == 0);
  CHECK(one[0].hp.beam_size == 1);
  CHECK(one[0].hp.batch_size == 2);
  CHECK(one[0].hp.max_epochs == 1);
  CHECK(one[0].ok());
  CHECK(one[0].best_epoch == 1);
  const std::string after_one = read_file(path);

  // A larger budget resumes at the first missing index; the finished
  // record is reloaded from disk, not re-run.
  const std::vector<ExperimentRecord> both = run_grid(g, ctx, 4, path);
  REQUIRE(both.size() == 2);
  CHECK(both[0].index == 0);
  CHECK(both[1].index == 1);
  CHECK(both[1].hp.beam_size == 2);
  CHECK(both[1].ok());
  const std::string after_both = read_file(path);
  CHECK(after_both.substr(0, after_one.size()) == after_one);

  // A third call finds everything done and leaves the file alone.
  const std::vector<ExperimentRecord> again = run_grid(g, ctx, 4, path);
  CHECK(again.size() == 2);
  CHECK(read_file(path) == after_both);

  // Two workers produce the same scores as the sequential sweep.
  const std::string path2 = dir + "/records_parallel.jsonl";
  const std::vector<ExperimentRecord> par = run_grid(g, ctx, 4, path2, 2);
  REQUIRE(par.size() == 2);
  CHECK(par[0].dev_bleu == both[0].dev_bleu);
  CHECK(par[1].dev_bleu == both[1].dev_bleu);
  CHECK(par[0].dev_chrf == both[0].dev_chrf);
  CHECK(par[1].dev_chrf == both[1].dev_chrf);
}

}  // TEST_SUITE

}  // namespace tinyst

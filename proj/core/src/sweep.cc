// core/src/sweep.cc

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

#include <algorithm>
#include <chrono>
#include <fstream>
#include <thread>
#include <utility>

#include "json.hpp"
#include "tinyst/errors.h"
#include "tinyst/rng.h"
#include "tinyst/text.h"

namespace tinyst {

using nlohmann::json;

std::string experiment_record_json(const ExperimentRecord& r) {
  json j = {{"index", r.index},
            {"lr_peak", r.hp.lr_peak},
            {"label_smoothing", r.hp.label_smoothing},
            {"batch_size", r.hp.batch_size},
            {"warmup_steps", r.hp.warmup_steps},
            {"patience", r.hp.patience},
            {"beam_size", r.hp.beam_size},
            {"max_epochs", r.hp.max_epochs},
            {"seed", r.hp.seed},
            {"sp", r.sp},
            {"sa", r.sa},
            {"dev_bleu", r.dev_bleu},
            {"dev_chrf", r.dev_chrf},
            {"best_epoch", r.best_epoch},
            {"wall_time_sec", r.wall_time_sec},
            {"error", r.error}};
  return j.dump();
}

ExperimentRecord experiment_record_from_json(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception&) {
    throw ParseError("malformed sweep record", 0);
  }
  ExperimentRecord r;
  try {
    r.index = j.value("index", r.index);
    r.hp.lr_peak = j.value("lr_peak", r.hp.lr_peak);
    r.hp.label_smoothing = j.value("label_smoothing", r.hp.label_smoothing);
    r.hp.batch_size = j.value("batch_size", r.hp.batch_size);
    r.hp.warmup_steps = j.value("warmup_steps", r.hp.warmup_steps);
    r.hp.patience = j.value("patience", r.hp.patience);
    r.hp.beam_size = j.value("beam_size", r.hp.beam_size);
    r.hp.max_epochs = j.value("max_epochs", r.hp.max_epochs);
    r.hp.seed = j.value("seed", r.hp.seed);
    r.sp = j.value("sp", r.sp);
    r.sa = j.value("sa", r.sa);
    r.dev_bleu = j.value("dev_bleu", r.dev_bleu);
    r.dev_chrf = j.value("dev_chrf", r.dev_chrf);
    r.best_epoch = j.value("best_epoch", r.best_epoch);
    r.wall_time_sec = j.value("wall_time_sec", r.wall_time_sec);
    r.error = j.value("error", r.error);
  } catch (const json::exception&) {
    throw ParseError("sweep record field has wrong type", 0);
  }
  return r;
}

std::vector<ExperimentRecord> load_records(const std::string& path) {
  std::ifstream in(path);
  std::vector<ExperimentRecord> out;
  if (!in.is_open()) return out;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      out.push_back(experiment_record_from_json(line));
    } catch (const ParseError&) {
      throw ParseError("malformed sweep record", line_no);
    }
  }
  return out;
}

void append_record(const ExperimentRecord& r, const std::string& path) {
  std::ofstream out(path, std::ios::app);
  if (!out.is_open()) throw CorruptFileError("cannot open for append: " + path);
  out << experiment_record_json(r) << '\n';
  out.flush();
  if (!out.good()) throw CorruptFileError("write failed: " + path);
}

Grid Grid::full() {
  Grid g;
  g.lr_peak = {6e-4, 3e-4, 3e-5};  // 2 : 1 : 0.1 around the default peak
  g.label_smoothing = {0.0, 0.1, 0.2};
  g.batch_size = {5, 10, 32, 64};
  g.warmup_steps = {100, 250, 350, 400};
  g.patience = {5, 10, 20};
  g.beam_size = {1, 5, 10};
  g.sp = {0, 1};
  g.sa = {0, 1};
  return g;
}

void Grid::validate() const {
  if (lr_peak.empty()) throw ConfigError("grid.lr_peak");
  if (label_smoothing.empty()) throw ConfigError("grid.label_smoothing");
  if (batch_size.empty()) throw ConfigError("grid.batch_size");
  if (warmup_steps.empty()) throw ConfigError("grid.warmup_steps");
  if (patience.empty()) throw ConfigError("grid.patience");
  if (beam_size.empty()) throw ConfigError("grid.beam_size");
  if (sp.empty()) throw ConfigError("grid.sp");
  if (sa.empty()) throw ConfigError("grid.sa");
}

std::size_t Grid::total() const {
  validate();
  return lr_peak.size() * label_smoothing.size() * batch_size.size() *
         warmup_steps.size() * patience.size() * beam_size.size() * sp.size() *
         sa.size();
}

ExperimentRecord Grid::config_at(std::size_t index) const {
  if (index >= total()) throw DomainError("grid index out of range");
  ExperimentRecord r;
  r.index = index;
  std::size_t rem = index;
  const std::size_t ia = rem % sa.size();
  rem /= sa.size();
  const std::size_t ip = rem % sp.size();
  rem /= sp.size();
  const std::size_t ibm = rem % beam_size.size();
  rem /= beam_size.size();
  const std::size_t ipt = rem % patience.size();
  rem /= patience.size();
  const std::size_t iw = rem % warmup_steps.size();
  rem /= warmup_steps.size();
  const std::size_t ib = rem % batch_size.size();
  rem /= batch_size.size();
  const std::size_t il = rem % label_smoothing.size();
  rem /= label_smoothing.size();
  r.hp.lr_peak = lr_peak[rem];
  r.hp.label_smoothing = label_smoothing[il];
  r.hp.batch_size = batch_size[ib];
  r.hp.warmup_steps = warmup_steps[iw];
  r.hp.patience = patience[ipt];
  r.hp.beam_size = beam_size[ibm];
  r.sp = sp[ip] != 0;
  r.sa = sa[ia] != 0;
  return r;
}

namespace {

// After this every feature any grid point can request is memoized, so
// concurrent runs only read the cache.
void warm_cache(const SweepContext& ctx) {
  for (const Utterance& u : ctx.dev_set.utterances) ctx.cache->get(u);
  for (const Utterance& u : ctx.train_set.utterances) ctx.cache->get(u);
  AugmentPolicy p = ctx.policy_base;
  p.sp_enabled = true;
  const Manifest expanded = expand_with_speed(ctx.train_set, p);
  for (const Utterance& u : expanded.utterances) ctx.cache->get(u);
}

ExperimentRecord run_point(const Grid& grid, const SweepContext& ctx,
                           std::size_t index) {
  ExperimentRecord r = grid.config_at(index);
  r.hp.max_epochs = ctx.max_epochs;
  r.hp.seed = derive_seed(ctx.seed, "sweep-run", index);
  AugmentPolicy policy = ctx.policy_base;
  policy.sp_enabled = r.sp;
  policy.sa_enabled = r.sa;
  policy.seed = r.hp.seed;
  const auto start = std::chrono::steady_clock::now();
  try {
    r.hp.validate();
    const ModelState model = init(ctx.model_cfg, derive_seed(r.hp.seed, "init"));
    const TrainResult res = train(model, ctx.train_set, ctx.dev_set, *ctx.vocab,
                                  r.hp, policy, *ctx.cache);
    r.best_epoch = res.log.best_epoch;
    if (r.best_epoch >= 1 &&
        static_cast<std::size_t>(r.best_epoch) <= res.log.records.size()) {
      const EpochRecord& e = res.log.records[r.best_epoch - 1];
      r.dev_bleu = e.dev_bleu;
      r.dev_chrf = e.dev_chrf;
    }
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.wall_time_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return r;
}

}  // namespace

std::vector<ExperimentRecord> run_grid(const Grid& grid,
                                       const SweepContext& ctx,
                                       std::size_t budget,
                                       const std::string& records_path,
                                       std::size_t parallel) {
  grid.validate();
  if (budget < 1) throw DomainError("sweep budget must be >= 1");
  if (parallel < 1) throw DomainError("parallel must be >= 1");
  if (ctx.vocab == nullptr) throw UsageError("sweep context missing vocab");
  if (ctx.cache == nullptr) throw UsageError("sweep context missing cache");
  const std::size_t limit = std::min(budget, grid.total());
  std::vector<ExperimentRecord> records = load_records(records_path);
  if (records.size() < limit) warm_cache(ctx);
  while (records.size() < limit) {
    const std::size_t first = records.size();
    const std::size_t n = std::min(parallel, limit - first);
    std::vector<ExperimentRecord> chunk(n);
    if (n == 1) {
      chunk[0] = run_point(grid, ctx, first);
    } else {
      std::vector<std::thread> workers;
      workers.reserve(n);
      for (std::size_t i = 0; i < n; ++i) {
        workers.emplace_back(
            [&grid, &ctx, &chunk, first, i] { chunk[i] = run_point(grid, ctx, first + i); });
      }
      for (std::thread& w : workers) w.join();
    }
    for (ExperimentRecord& r : chunk) {
      append_record(r, records_path);
      records.push_back(std::move(r));
    }
  }
  return records;
}

ExperimentRecord select_best(const std::vector<ExperimentRecord>& records) {
  const ExperimentRecord* best = nullptr;
  for (const ExperimentRecord& r : records) {
    if (!r.ok()) continue;
    if (best == nullptr) {
      best = &r;
      continue;
    }
    if (r.dev_bleu != best->dev_bleu) {
      if (r.dev_bleu > best->dev_bleu) best = &r;
      continue;
    }
    if (r.dev_chrf != best->dev_chrf) {
      if (r.dev_chrf > best->dev_chrf) best = &r;
      continue;
    }
    if (r.hp.batch_size < best->hp.batch_size) best = &r;
  }
  if (best == nullptr) throw NoResultError("no successful sweep records");
  return *best;
}

namespace {

const char* const kHeaderLrBatch = "| LR | batch size | BLEU | chrF++ |";
const char* const kHeaderSpSa = "| SP | SA | BLEU |";
const char* const kHeaderFullGrid =
    "| LR | LS | batch size | SP | SA | warmup steps | patience | beam size "
    "| BLEU |";

std::string separator_row(int columns) {
  std::string s = "|";
  for (int i = 0; i < columns; ++i) s += " --- |";
  return s;
}

std::string flag_text(bool b) { return b ? "True" : "False"; }

bool parse_flag(const std::string& s, bool* out) {
  if (s == "True") {
    *out = true;
    return true;
  }
  if (s == "False") {
    *out = false;
    return true;
  }
  return false;
}

std::vector<std::string> split_row(const std::string& line, long line_no) {
  if (line.size() < 2 || line.front() != '|' || line.back() != '|')
    throw ParseError("table row must be pipe-delimited", line_no);
  std::vector<std::string> cells =
      split(line.substr(1, line.size() - 2), '|');
  for (std::string& c : cells) c = trim(c);
  return cells;
}

}  // namespace

TableLayout parse_layout(const std::string& name) {
  if (name == "table3") return TableLayout::kLrBatch;
  if (name == "table5") return TableLayout::kSpSa;
  if (name == "table6") return TableLayout::kFullGrid;
  throw LayoutError("unknown table layout: " + name);
}

std::string render_tables(const std::vector<ExperimentRecord>& records,
                          TableLayout layout) {
  std::string out;
  switch (layout) {
    case TableLayout::kLrBatch:
      out = std::string(kHeaderLrBatch) + "\n" + separator_row(4) + "\n";
      break;
    case TableLayout::kSpSa:
      out = std::string(kHeaderSpSa) + "\n" + separator_row(3) + "\n";
      break;
    case TableLayout::kFullGrid:
      out = std::string(kHeaderFullGrid) + "\n" + separator_row(9) + "\n";
      break;
    default:
      throw LayoutError("unknown table layout");
  }
  for (const ExperimentRecord& r : records) {
    if (!r.ok()) continue;
    switch (layout) {
      case TableLayout::kLrBatch:
        out += "| " + format_double(r.hp.lr_peak) + " | " +
               std::to_string(r.hp.batch_size) + " | " +
               format_fixed(r.dev_bleu, 1) + " | " +
               format_fixed(r.dev_chrf, 1) + " |\n";
        break;
      case TableLayout::kSpSa:
        out += "| " + flag_text(r.sp) + " | " + flag_text(r.sa) + " | " +
               format_fixed(r.dev_bleu, 1) + " |\n";
        break;
      case TableLayout::kFullGrid:
        out += "| " + format_double(r.hp.lr_peak) + " | " +
               format_double(r.hp.label_smoothing) + " | " +
               std::to_string(r.hp.batch_size) + " | " + flag_text(r.sp) +
               " | " + flag_text(r.sa) + " | " +
               std::to_string(r.hp.warmup_steps) + " | " +
               std::to_string(r.hp.patience) + " | " +
               std::to_string(r.hp.beam_size) + " | " +
               format_fixed(r.dev_bleu, 1) + " |\n";
        break;
    }
  }
  return out;
}

std::vector<ExperimentRecord> parse_markdown_table(const std::string& md) {
  const std::vector<std::string> lines = split(md, '\n');
  std::size_t li = 0;
  while (li < lines.size() && trim(lines[li]).empty()) ++li;
  if (li == lines.size()) throw LayoutError("empty table text");
  const std::string header = trim(lines[li]);
  TableLayout layout;
  if (header == kHeaderLrBatch) {
    layout = TableLayout::kLrBatch;
  } else if (header == kHeaderSpSa) {
    layout = TableLayout::kSpSa;
  } else if (header == kHeaderFullGrid) {
    layout = TableLayout::kFullGrid;
  } else {
    throw LayoutError("unrecognized table header: " + header);
  }
  ++li;
  if (li < lines.size() && trim(lines[li]).find("---") != std::string::npos)
    ++li;

  std::vector<ExperimentRecord> out;
  for (; li < lines.size(); ++li) {
    const long line_no = static_cast<long>(li) + 1;
    const std::string line = trim(lines[li]);
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_row(line, line_no);
    ExperimentRecord r;
    long n = 0;
    switch (layout) {
      case TableLayout::kLrBatch:
        if (cells.size() != 4)
          throw ParseError("expected 4 cells", line_no);
        if (!parse_double(cells[0], &r.hp.lr_peak) ||
            !parse_long(cells[1], &n) ||
            !parse_double(cells[2], &r.dev_bleu) ||
            !parse_double(cells[3], &r.dev_chrf) || n < 1)
          throw ParseError("bad table cell", line_no);
        r.hp.batch_size = static_cast<std::size_t>(n);
        break;
      case TableLayout::kSpSa:
        if (cells.size() != 3)
          throw ParseError("expected 3 cells", line_no);
        if (!parse_flag(cells[0], &r.sp) || !parse_flag(cells[1], &r.sa) ||
            !parse_double(cells[2], &r.dev_bleu))
          throw ParseError("bad table cell", line_no);
        break;
      case TableLayout::kFullGrid: {
        if (cells.size() != 9)
          throw ParseError("expected 9 cells", line_no);
        long beam = 0;
        if (!parse_double(cells[0], &r.hp.lr_peak) ||
            !parse_double(cells[1], &r.hp.label_smoothing) ||
            !parse_long(cells[2], &n) || !parse_flag(cells[3], &r.sp) ||
            !parse_flag(cells[4], &r.sa) ||
            !parse_long(cells[5], &r.hp.warmup_steps) ||
            !parse_long(cells[6], &r.hp.patience) ||
            !parse_long(cells[7], &beam) ||
            !parse_double(cells[8], &r.dev_bleu) || n < 1 || beam < 1)
          throw ParseError("bad table cell", line_no);
        r.hp.batch_size = static_cast<std::size_t>(n);
        r.hp.beam_size = static_cast<std::size_t>(beam);
        break;
      }
    }
    r.index = out.size();
    out.push_back(r);
  }
  return out;
}

}  // namespace tinyst

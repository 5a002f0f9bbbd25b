// core/include/tinyst/sweep.h

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

#ifndef TINYST_SWEEP_H_
#define TINYST_SWEEP_H_

#include <cstdint>
#include <string>
#include <vector>

#include "tinyst/augment.h"
#include "tinyst/corpus.h"
#include "tinyst/model.h"
#include "tinyst/training.h"
#include "tinyst/vocab.h"

namespace tinyst {

// One completed (or failed) sweep run.
struct ExperimentRecord {
  std::size_t index = 0;  // position in the grid enumeration
  HyperParams hp;
  bool sp = false;
  bool sa = false;
  double dev_bleu = 0.0;
  double dev_chrf = 0.0;
  long best_epoch = 0;
  double wall_time_sec = 0.0;
  std::string error;  // empty on success

  bool ok() const { return error.empty(); }
};

std::string experiment_record_json(const ExperimentRecord& r);
ExperimentRecord experiment_record_from_json(const std::string& line);

// Missing file reads as an empty list; a sweep appends one line per run.
std::vector<ExperimentRecord> load_records(const std::string& path);
void append_record(const ExperimentRecord& r, const std::string& path);

// Cross product of candidate values. Enumeration is lexicographic in the
// fixed axis order lr_peak, label_smoothing, batch_size, warmup_steps,
// patience, beam_size, sp, sa, with the last axis varying fastest.
struct Grid {
  std::vector<double> lr_peak = {3e-4};
  std::vector<double> label_smoothing = {0.1};
  std::vector<std::size_t> batch_size = {32};
  std::vector<long> warmup_steps = {250};
  std::vector<long> patience = {10};
  std::vector<std::size_t> beam_size = {10};
  std::vector<int> sp = {0};  // 0/1 flags
  std::vector<int> sa = {0};

  // Every studied knob with its full candidate list; learning rates keep
  // a 2 : 1 : 0.1 ratio ladder around the default peak.
  static Grid full();

  // Throws ConfigError naming the first empty axis.
  void validate() const;
  std::size_t total() const;
  // The index-th configuration; hp fields not on an axis keep defaults.
  ExperimentRecord config_at(std::size_t index) const;
};

// Everything a sweep run needs besides the grid point itself.
struct SweepContext {
  Manifest train_set;
  Manifest dev_set;
  const Vocab* vocab = nullptr;
  ModelConfig model_cfg;
  AugmentPolicy policy_base;  // sp/sa flags come from the grid point
  long max_epochs = 30;
  std::uint64_t seed = 1;
  FeatureCache* cache = nullptr;
};

// Executes grid points 0..min(budget, total)-1 in order, appending one
// record per run to records_path (so an interrupted sweep resumes at the
// first missing record). A failed run records its error and the sweep
// continues. parallel > 1 runs that many configurations concurrently;
// records still land in grid order.
std::vector<ExperimentRecord> run_grid(const Grid& grid,
                                       const SweepContext& ctx,
                                       std::size_t budget,
                                       const std::string& records_path,
                                       std::size_t parallel = 1);

// Highest dev_bleu, ties broken by higher dev_chrf, smaller batch size,
// then record order. No successful record -> NoResultError.
ExperimentRecord select_best(const std::vector<ExperimentRecord>& records);

// Result-table shapes understood by the report renderer.
enum class TableLayout {
  kLrBatch,   // LR | batch size | BLEU | chrF++
  kSpSa,      // SP | SA | BLEU
  kFullGrid,  // LR | LS | batch size | SP | SA | warmup | patience | beam |
              // BLEU
};

// Accepts "table3" (LR/batch), "table5" (SP/SA), "table6" (full grid).
TableLayout parse_layout(const std::string& name);

// Markdown table of the successful records, scores printed with one
// decimal. Deterministic, byte-stable output.
std::string render_tables(const std::vector<ExperimentRecord>& records,
                          TableLayout layout);

// Inverse of render_tables: recognizes the three layouts by their header
// row and fills the corresponding fields.
std::vector<ExperimentRecord> parse_markdown_table(const std::string& md);

}  // namespace tinyst

#endif  // TINYST_SWEEP_H_

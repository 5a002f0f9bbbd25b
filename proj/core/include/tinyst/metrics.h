// core/include/tinyst/metrics.h

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

#ifndef TINYST_METRICS_H_
#define TINYST_METRICS_H_

#include <array>
#include <string>
#include <vector>

namespace tinyst {

// mteval-13a tokenization: entity unescaping, then four regex passes
// (punctuation wrapping; period/comma split unless digit-adjacent; dash
// split after a digit), then a split on Unicode whitespace. Reproduces the
// reference scorer's sequential left-to-right substitution semantics.
std::vector<std::string> tokenize_13a(const std::string& text);

struct ScoreReport {
  double bleu = 0.0;  // [0, 100]
  std::array<double, 4> ngram_precisions = {0.0, 0.0, 0.0,
                                            0.0};  // fractions in [0, 1]
  double brevity_penalty = 1.0;  // (0, 1]; 0 only for an empty hypothesis set
  long hyp_len = 0;              // 13a tokens
  long ref_len = 0;
  double chrf_pp = 0.0;  // [0, 100]
};

// Corpus BLEU over 13a tokens, one reference per hypothesis: clipped
// n-gram precisions n = 1..4 pooled over the corpus, brevity penalty
// exp(1 - ref/hyp) when hyp < ref. The k-th order with a zero numerator
// is smoothed to 1/(2^k * denominator); orders with an empty denominator
// shrink the geometric mean instead of zeroing it, so a one-token corpus
// scored against itself is still 100. chrf_pp is filled in alongside.
// Length mismatch -> PairingError; empty lists -> EmptyCorpusError.
ScoreReport corpus_bleu(const std::vector<std::string>& hyps,
                        const std::vector<std::string>& refs);

// corpus_bleu on a single pair.
double sentence_bleu(const std::string& hyp, const std::string& ref);

// chrF++: precision and recall averaged over character n-grams n = 1..6
// (computed on whitespace-stripped code points) and 13a word n-grams
// n = 1..2, statistics pooled over the corpus; orders empty on both sides
// are excluded from the average; F-score with beta = 2, scaled to 100.
double chrf_pp(const std::vector<std::string>& hyps,
               const std::vector<std::string>& refs);

// Single-line JSON rendering of a report.
std::string score_report_json(const ScoreReport& r);

}  // namespace tinyst

#endif  // TINYST_METRICS_H_

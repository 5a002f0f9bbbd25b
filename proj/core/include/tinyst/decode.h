// core/include/tinyst/decode.h

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

#ifndef TINYST_DECODE_H_
#define TINYST_DECODE_H_

#include <cstddef>
#include <string>
#include <vector>

#include "tinyst/model.h"
#include "tinyst/tensor.h"

namespace tinyst {

// All decoders share one scoring rule: PAD and BOS are masked out of each
// step's distribution before normalization, so every emitted token id is a
// real output class and scores are log-probabilities (<= 0). A body that
// reaches max_len without producing EOS is force-terminated: the model's
// actual EOS log-probability at the next step is added and the hypothesis
// is flagged truncated. Natural bodies are therefore at most max_len - 1
// tokens long; truncated bodies are exactly max_len.
struct Hypothesis {
  std::vector<int> tokens;  // BOS ... EOS; EOS terminal and unique
  double score = 0.0;       // cumulative log-probability
  double normalized_score = 0.0;  // score / number of scored tokens
  bool truncated = false;
};

// The default length bound: 256 or 4x the encoder memory length,
// whichever is smaller.
long default_max_len(std::size_t memory_rows);

// max_len convention for all three decoders: positive = explicit bound,
// 0 = default_max_len(memory), negative = DomainError.

// Follows the locally most probable token until EOS. Argmax ties resolve
// to the lowest token id.
Hypothesis greedy_decode(const ModelState& state, const Tensor& features,
                         long max_len = 0);

// Standard beam search: every live hypothesis expands over the emittable
// vocabulary, the top `beam` candidates by cumulative log-probability
// survive, EOS candidates retire. The final ranking is by normalized
// score, then lexicographically smaller token sequence, then earlier
// finishing step. beam = 1 reproduces greedy_decode's token sequence.
Hypothesis beam_search(const ModelState& state, const Tensor& features,
                       std::size_t beam, long max_len = 0);

// Scores every candidate body of length 0..max_len (lengths below max_len
// end with a natural EOS; length max_len is force-terminated) and returns
// the argmax under beam_search's ranking. Verification oracle: beam search
// at saturated width must agree with it exactly.
// vocab_size^max_len > 10^6 -> CapacityError. n_evaluated, when non-null,
// receives the number of candidate bodies scored.
Hypothesis exhaustive_oracle(const ModelState& state, const Tensor& features,
                             long max_len,
                             std::size_t* n_evaluated = nullptr);

// One line of a decode output file.
struct DecodeRow {
  std::string id;
  std::string text;
  double normalized_score = 0.0;
  bool truncated = false;
};

// UTF-8 TSV with header id, hypothesis_text, normalized_score,
// truncated_flag; the flag is 0 or 1.
void write_decodes(const std::vector<DecodeRow>& rows,
                   const std::string& path);
std::vector<DecodeRow> read_decodes(const std::string& path);

}  // namespace tinyst

#endif  // TINYST_DECODE_H_

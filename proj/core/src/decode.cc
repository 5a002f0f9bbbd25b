// core/src/decode.cc

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

#include "tinyst/decode.h"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "tinyst/errors.h"
#include "tinyst/text.h"
#include "tinyst/vocab.h"

namespace tinyst {

namespace {

// Log-probabilities of one logits row with PAD and BOS excluded from the
// normalization; their entries come back as -infinity.
std::vector<double> masked_log_softmax(const Tensor& logits, std::size_t row) {
  const std::size_t V = logits.cols;
  std::vector<double> lp(V, -std::numeric_limits<double>::infinity());
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < V; ++k) {
    if (k == Vocab::kPad || k == Vocab::kBos) continue;
    m = std::max(m, logits.at(row, k));
  }
  double z = 0.0;
  for (std::size_t k = 0; k < V; ++k) {
    if (k == Vocab::kPad || k == Vocab::kBos) continue;
    z += std::exp(logits.at(row, k) - m);
  }
  const double lse = m + std::log(z);
  for (std::size_t k = 0; k < V; ++k) {
    if (k == Vocab::kPad || k == Vocab::kBos) continue;
    lp[k] = logits.at(row, k) - lse;
  }
  return lp;
}

long resolve_max_len(long max_len, std::size_t memory_rows) {
  if (max_len < 0) throw DomainError("negative max_len");
  if (max_len == 0) return default_max_len(memory_rows);
  return max_len;
}

// A finished candidate plus the step at which it retired, for the final
// tie-break.
struct Finished {
  Hypothesis hyp;
  long finish_step = 0;
};

// Ranking shared by beam_search and exhaustive_oracle: normalized score,
// then lexicographically smaller token sequence, then earlier finish.
bool ranks_better(const Finished& a, const Finished& b) {
  if (a.hyp.normalized_score != b.hyp.normalized_score)
    return a.hyp.normalized_score > b.hyp.normalized_score;
  if (a.hyp.tokens != b.hyp.tokens) return a.hyp.tokens < b.hyp.tokens;
  return a.finish_step < b.finish_step;
}

void finalize(Hypothesis& h) {
  // Scored tokens: everything after BOS.
  const double n = static_cast<double>(h.tokens.size() - 1);
  h.normalized_score = h.score / n;
}

}  // namespace

long default_max_len(std::size_t memory_rows) {
  return std::min<long>(256, 4 * static_cast<long>(memory_rows));
}

Hypothesis greedy_decode(const ModelState& state, const Tensor& features,
                         long max_len) {
  ModelGraph graph(state);
  const Tape::NodeId memory = graph.encode(features);
  const long bound = resolve_max_len(max_len, graph.tape().val(memory).rows);

  Hypothesis h;
  h.tokens = {Vocab::kBos};
  for (long step = 1; step <= bound; ++step) {
    const Tape::NodeId logits = graph.decode_logits(memory, h.tokens);
    const Tensor& lv = graph.tape().val(logits);
    const std::vector<double> lp = masked_log_softmax(lv, lv.rows - 1);
    std::size_t arg = 0;
    for (std::size_t k = 1; k < lp.size(); ++k)
      if (lp[k] > lp[arg]) arg = k;  // ties keep the lowest id
    h.score += lp[arg];
    h.tokens.push_back(static_cast<int>(arg));
    if (static_cast<int>(arg) == Vocab::kEos) {
      finalize(h);
      return h;
    }
  }
  // Out of budget: terminate with the model's actual EOS probability.
  const Tape::NodeId logits = graph.decode_logits(memory, h.tokens);
  const Tensor& lv = graph.tape().val(logits);
  h.score += masked_log_softmax(lv, lv.rows - 1)[Vocab::kEos];
  h.tokens.push_back(Vocab::kEos);
  h.truncated = true;
  finalize(h);
  return h;
}

Hypothesis beam_search(const ModelState& state, const Tensor& features,
                       std::size_t beam, long max_len) {
  if (beam < 1) throw DomainError("beam width must be at least 1");
  ModelGraph graph(state);
  const Tape::NodeId memory = graph.encode(features);
  const long bound = resolve_max_len(max_len, graph.tape().val(memory).rows);
  const std::size_t V = state.cfg.vocab_size;

  struct Live {
    std::vector<int> tokens;  // BOS + body
    double score = 0.0;
  };
  std::vector<Live> live = {{{Vocab::kBos}, 0.0}};
  std::vector<Finished> finished;

  for (long step = 1; step <= bound && !live.empty(); ++step) {
    std::vector<Live> candidates;
    candidates.reserve(live.size() * V);
    for (const Live& l : live) {
      const Tape::NodeId logits = graph.decode_logits(memory, l.tokens);
      const Tensor& lv = graph.tape().val(logits);
      const std::vector<double> lp = masked_log_softmax(lv, lv.rows - 1);
      for (std::size_t k = 0; k < V; ++k) {
        if (k == Vocab::kPad || k == Vocab::kBos) continue;
        Live c;
        c.tokens = l.tokens;
        c.tokens.push_back(static_cast<int>(k));
        c.score = l.score + lp[k];
        candidates.push_back(std::move(c));
      }
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const Live& a, const Live& b) {
                if (a.score != b.score) return a.score > b.score;
                return a.tokens < b.tokens;
              });
    if (candidates.size() > beam) candidates.resize(beam);
    live.clear();
    for (Live& c : candidates) {
      if (c.tokens.back() == Vocab::kEos) {
        Finished f;
        f.hyp.tokens = std::move(c.tokens);
        f.hyp.score = c.score;
        finalize(f.hyp);
        f.finish_step = step;
        finished.push_back(std::move(f));
      } else {
        live.push_back(std::move(c));
      }
    }
  }
  // Bodies that reached the budget terminate with the real EOS
  // log-probability and carry the truncation flag.
  for (Live& l : live) {
    const Tape::NodeId logits = graph.decode_logits(memory, l.tokens);
    const Tensor& lv = graph.tape().val(logits);
    Finished f;
    f.hyp.tokens = std::move(l.tokens);
    f.hyp.tokens.push_back(Vocab::kEos);
    f.hyp.score = l.score + masked_log_softmax(lv, lv.rows - 1)[Vocab::kEos];
    f.hyp.truncated = true;
    finalize(f.hyp);
    f.finish_step = bound + 1;
    finished.push_back(std::move(f));
  }
  const Finished* best = &finished.front();
  for (const Finished& f : finished)
    if (ranks_better(f, *best)) best = &f;
  return best->hyp;
}

Hypothesis exhaustive_oracle(const ModelState& state, const Tensor& features,
                             long max_len, std::size_t* n_evaluated) {
  if (max_len < 1) throw DomainError("oracle max_len must be at least 1");
  const std::size_t V = state.cfg.vocab_size;
  if (static_cast<double>(max_len) * std::log(static_cast<double>(V)) >
      std::log(1e6))
    throw CapacityError("oracle search space exceeds 10^6 sequences");

  std::vector<int> emittable;  // body alphabet: everything but PAD/BOS/EOS
  for (std::size_t k = 0; k < V; ++k)
    if (k != Vocab::kPad && k != Vocab::kBos && k != Vocab::kEos)
      emittable.push_back(static_cast<int>(k));

  std::size_t evaluated = 0;
  Finished best;
  bool have_best = false;
  std::vector<int> body;
  // Bodies in length order, lexicographic within a length; the empty body
  // ([BOS, EOS]) is a valid candidate because every decoder can emit EOS
  // first.
  for (long len = 0; len <= max_len; ++len) {
    body.assign(len, 0);  // indices into emittable
    while (true) {
      // Score this body with one teacher-forced pass.
      ModelGraph graph(state);
      const Tape::NodeId memory = graph.encode(features);
      std::vector<int> prefix = {Vocab::kBos};
      for (const int bi : body) prefix.push_back(emittable[bi]);
      const Tape::NodeId logits = graph.decode_logits(memory, prefix);
      const Tensor& lv = graph.tape().val(logits);
      double score = 0.0;
      for (long i = 0; i < len; ++i)
        score += masked_log_softmax(lv, i)[prefix[i + 1]];
      score += masked_log_softmax(lv, len)[Vocab::kEos];

      Finished f;
      f.hyp.tokens = std::move(prefix);
      f.hyp.tokens.push_back(Vocab::kEos);
      f.hyp.score = score;
      f.hyp.truncated = len == max_len;
      finalize(f.hyp);
      f.finish_step = len == max_len ? max_len + 1 : len + 1;
      ++evaluated;
      if (!have_best || ranks_better(f, best)) {
        best = std::move(f);
        have_best = true;
      }

      // Next body of this length (odometer over the emittable alphabet).
      long pos = len - 1;
      while (pos >= 0) {
        if (++body[pos] < static_cast<int>(emittable.size())) break;
        body[pos] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
  }
  if (n_evaluated != nullptr) *n_evaluated = evaluated;
  return best.hyp;
}

void write_decodes(const std::vector<DecodeRow>& rows,
                   const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write decode file: " + path);
  out << "id\thypothesis_text\tnormalized_score\ttruncated_flag\n";
  for (const DecodeRow& r : rows) {
    if (r.id.find_first_of("\t\n") != std::string::npos ||
        r.text.find_first_of("\t\n") != std::string::npos)
      throw DataError("tab or newline inside decode field: " + r.id);
    out << r.id << '\t' << r.text << '\t' << format_double(r.normalized_score)
        << '\t' << (r.truncated ? '1' : '0') << '\n';
  }
  if (!out) throw DataError("write failed: " + path);
}

std::vector<DecodeRow> read_decodes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open decode file: " + path);
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  if (content.find('\r') != std::string::npos)
    throw ParseError("carriage return in decode file", 1);
  std::vector<std::string> lines = split(content, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw SchemaError("id");
  const std::vector<std::string> header = split(lines[0], '\t');
  const char* expected[4] = {"id", "hypothesis_text", "normalized_score",
                             "truncated_flag"};
  for (int i = 0; i < 4; ++i)
    if (static_cast<std::size_t>(i) >= header.size() ||
        header[i] != expected[i])
      throw SchemaError(expected[i]);
  if (header.size() != 4) throw ParseError("header has extra columns", 1);
  std::vector<DecodeRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const long line_no = static_cast<long>(i) + 1;
    const std::vector<std::string> f = split(lines[i], '\t');
    if (f.size() != 4) throw ParseError("expected 4 fields", line_no);
    DecodeRow r;
    r.id = f[0];
    if (r.id.empty()) throw ParseError("empty id", line_no);
    r.text = f[1];
    if (!parse_double(f[2], &r.normalized_score))
      throw ParseError("bad normalized_score", line_no);
    if (f[3] == "0")
      r.truncated = false;
    else if (f[3] == "1")
      r.truncated = true;
    else
      throw ParseError("truncated_flag must be 0 or 1", line_no);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace tinyst

// core/src/metrics.cc

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

#include "tinyst/metrics.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "json.hpp"
#include "tinyst/errors.h"
#include "tinyst/text.h"

namespace tinyst {

namespace {

// Python str.split() whitespace, the final splitting rule of the
// reference tokenizer.
bool is_py_space(char32_t cp) {
  switch (cp) {
    case 0x09:
    case 0x0A:
    case 0x0B:
    case 0x0C:
    case 0x0D:
    case 0x1C:
    case 0x1D:
    case 0x1E:
    case 0x1F:
    case 0x20:
    case 0x85:
    case 0xA0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

bool is_ascii_digit(unsigned char c) { return c >= '0' && c <= '9'; }

// The character class of the first 13a pass: [{-~[-` -&(-+:-@/] in byte
// ranges. Continuation bytes of multi-byte UTF-8 characters never fall in
// it, so byte-level scanning is exact.
bool is_13a_punct(unsigned char c) {
  return (c >= 0x20 && c <= 0x26) || (c >= 0x28 && c <= 0x2B) || c == 0x2F ||
         (c >= 0x3A && c <= 0x40) || (c >= 0x5B && c <= 0x60) ||
         (c >= 0x7B && c <= 0x7E);
}

void replace_all(std::string& s, const std::string& from,
                 const std::string& to) {
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
}

// Each pass reproduces one re.sub: scan left to right, replace
// non-overlapping matches, resume after the matched span.

std::string pass_wrap_punct(const std::string& s) {
  std::string out;
  out.reserve(s.size() * 2);
  for (const char c : s) {
    if (is_13a_punct(static_cast<unsigned char>(c))) {
      out += ' ';
      out += c;
      out += ' ';
    } else {
      out += c;
    }
  }
  return out;
}

std::string pass_period_after_nondigit(const std::string& s) {
  std::string out;
  out.reserve(s.size() * 2);
  std::size_t i = 0;
  while (i < s.size()) {
    const unsigned char a = s[i];
    if (i + 1 < s.size() && !is_ascii_digit(a) &&
        (s[i + 1] == '.' || s[i + 1] == ',')) {
      out += static_cast<char>(a);
      out += ' ';
      out += s[i + 1];
      out += ' ';
      i += 2;
    } else {
      out += static_cast<char>(a);
      ++i;
    }
  }
  return out;
}

std::string pass_period_before_nondigit(const std::string& s) {
  std::string out;
  out.reserve(s.size() * 2);
  std::size_t i = 0;
  while (i < s.size()) {
    if ((s[i] == '.' || s[i] == ',') && i + 1 < s.size() &&
        !is_ascii_digit(static_cast<unsigned char>(s[i + 1]))) {
      out += ' ';
      out += s[i];
      out += ' ';
      out += s[i + 1];
      i += 2;
    } else {
      out += s[i];
      ++i;
    }
  }
  return out;
}

std::string pass_dash_after_digit(const std::string& s) {
  std::string out;
  out.reserve(s.size() * 2);
  std::size_t i = 0;
  while (i < s.size()) {
    if (is_ascii_digit(static_cast<unsigned char>(s[i])) && i + 1 < s.size() &&
        s[i + 1] == '-') {
      out += s[i];
      out += " - ";
      i += 2;
    } else {
      out += s[i];
      ++i;
    }
  }
  return out;
}

// Token n-gram counting for BLEU.
using NgramCounts = std::map<std::vector<std::string>, long>;

NgramCounts count_ngrams(const std::vector<std::string>& toks, std::size_t n) {
  NgramCounts counts;
  if (toks.size() < n) return counts;
  for (std::size_t i = 0; i + n <= toks.size(); ++i)
    ++counts[std::vector<std::string>(toks.begin() + i, toks.begin() + i + n)];
  return counts;
}

// Shared accumulator for the 6 character and 2 word orders of chrF++.
struct ChrfStats {
  static constexpr std::size_t kCharOrder = 6;
  static constexpr std::size_t kWordOrder = 2;
  static constexpr std::size_t kOrders = kCharOrder + kWordOrder;
  long hyp_total[kOrders] = {0};
  long ref_total[kOrders] = {0};
  long matched[kOrders] = {0};
};

// Code points with Unicode whitespace removed; chrF character n-grams
// cross former word boundaries.
std::vector<char32_t> squeezed_codepoints(const std::string& s) {
  std::vector<char32_t> out;
  for (const char32_t cp : utf8_decode(s))
    if (!is_py_space(cp)) out.push_back(cp);
  return out;
}

std::map<std::u32string, long> char_ngrams(const std::vector<char32_t>& cps,
                                           std::size_t n) {
  std::map<std::u32string, long> counts;
  if (cps.size() < n) return counts;
  for (std::size_t i = 0; i + n <= cps.size(); ++i)
    ++counts[std::u32string(cps.begin() + i, cps.begin() + i + n)];
  return counts;
}

template <typename Map>
void accumulate_order(const Map& hyp, const Map& ref, long* hyp_total,
                      long* ref_total, long* matched) {
  for (const auto& [gram, c] : hyp) {
    *hyp_total += c;
    const auto it = ref.find(gram);
    if (it != ref.end()) *matched += std::min(c, it->second);
  }
  for (const auto& [gram, c] : ref) *ref_total += c;
}

void accumulate_chrf(const std::string& hyp, const std::string& ref,
                     ChrfStats& st) {
  const std::vector<char32_t> hc = squeezed_codepoints(hyp);
  const std::vector<char32_t> rc = squeezed_codepoints(ref);
  for (std::size_t n = 1; n <= ChrfStats::kCharOrder; ++n) {
    const auto h = char_ngrams(hc, n);
    const auto r = char_ngrams(rc, n);
    accumulate_order(h, r, &st.hyp_total[n - 1], &st.ref_total[n - 1],
                     &st.matched[n - 1]);
  }
  const std::vector<std::string> hw = tokenize_13a(hyp);
  const std::vector<std::string> rw = tokenize_13a(ref);
  for (std::size_t n = 1; n <= ChrfStats::kWordOrder; ++n) {
    const auto h = count_ngrams(hw, n);
    const auto r = count_ngrams(rw, n);
    const std::size_t o = ChrfStats::kCharOrder + n - 1;
    accumulate_order(h, r, &st.hyp_total[o], &st.ref_total[o],
                     &st.matched[o]);
  }
}

double chrf_from_stats(const ChrfStats& st) {
  constexpr double kBeta2 = 4.0;  // beta = 2
  double avg_p = 0.0, avg_r = 0.0;
  std::size_t effective = 0;
  for (std::size_t o = 0; o < ChrfStats::kOrders; ++o) {
    if (st.hyp_total[o] == 0 && st.ref_total[o] == 0) continue;
    const double p = st.hyp_total[o] > 0 ? static_cast<double>(st.matched[o]) /
                                               st.hyp_total[o]
                                         : 0.0;
    const double r = st.ref_total[o] > 0 ? static_cast<double>(st.matched[o]) /
                                               st.ref_total[o]
                                         : 0.0;
    avg_p += p;
    avg_r += r;
    ++effective;
  }
  if (effective == 0) return 0.0;
  avg_p /= static_cast<double>(effective);
  avg_r /= static_cast<double>(effective);
  if (avg_p + avg_r == 0.0) return 0.0;
  return 100.0 * (1.0 + kBeta2) * avg_p * avg_r /
         (kBeta2 * avg_p + avg_r);
}

}  // namespace

std::vector<std::string> tokenize_13a(const std::string& text) {
  std::string line = text;
  replace_all(line, "<skipped>", "");
  replace_all(line, "-\n", "");
  replace_all(line, "\n", " ");
  if (line.find('&') != std::string::npos) {
    replace_all(line, "&quot;", "\"");
    replace_all(line, "&amp;", "&");
    replace_all(line, "&lt;", "<");
    replace_all(line, "&gt;", ">");
  }
  line = " " + line + " ";
  line = pass_wrap_punct(line);
  line = pass_period_after_nondigit(line);
  line = pass_period_before_nondigit(line);
  line = pass_dash_after_digit(line);

  std::vector<std::string> tokens;
  std::string current;
  for (const char32_t cp : utf8_decode(line)) {
    if (is_py_space(cp)) {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
    } else {
      current += utf8_encode_one(cp);
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

ScoreReport corpus_bleu(const std::vector<std::string>& hyps,
                        const std::vector<std::string>& refs) {
  if (hyps.size() != refs.size())
    throw PairingError("hypothesis/reference count mismatch");
  if (hyps.empty()) throw EmptyCorpusError("no pairs to score");

  long correct[4] = {0};
  long total[4] = {0};
  ScoreReport report;
  ChrfStats chrf;
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    const std::vector<std::string> h = tokenize_13a(hyps[i]);
    const std::vector<std::string> r = tokenize_13a(refs[i]);
    report.hyp_len += static_cast<long>(h.size());
    report.ref_len += static_cast<long>(r.size());
    for (std::size_t n = 1; n <= 4; ++n) {
      const NgramCounts hc = count_ngrams(h, n);
      const NgramCounts rc = count_ngrams(r, n);
      for (const auto& [gram, c] : hc) {
        const auto it = rc.find(gram);
        if (it != rc.end()) correct[n - 1] += std::min(c, it->second);
      }
      if (h.size() >= n) total[n - 1] += static_cast<long>(h.size() - n + 1);
    }
    accumulate_chrf(hyps[i], refs[i], chrf);
  }
  report.chrf_pp = chrf_from_stats(chrf);

  if (report.hyp_len < report.ref_len)
    report.brevity_penalty =
        report.hyp_len > 0
            ? std::exp(1.0 - static_cast<double>(report.ref_len) /
                                 static_cast<double>(report.hyp_len))
            : 0.0;

  bool any_correct = false;
  for (const long c : correct) any_correct = any_correct || c > 0;
  if (!any_correct) return report;  // bleu 0, precisions 0

  // Geometric mean over the orders that exist in the hypothesis corpus;
  // zero numerators decay exponentially (1/2, 1/4, ... of one count).
  double smooth = 1.0;
  std::size_t effective = 0;
  double log_sum = 0.0;
  for (std::size_t n = 0; n < 4; ++n) {
    if (total[n] == 0) break;
    effective = n + 1;
    double p;
    if (correct[n] == 0) {
      smooth *= 2.0;
      p = 1.0 / (smooth * static_cast<double>(total[n]));
    } else {
      p = static_cast<double>(correct[n]) / static_cast<double>(total[n]);
    }
    report.ngram_precisions[n] = p;
    log_sum += std::log(p);
  }
  if (effective == 0) return report;
  report.bleu = report.brevity_penalty *
                std::exp(log_sum / static_cast<double>(effective)) * 100.0;
  return report;
}

double sentence_bleu(const std::string& hyp, const std::string& ref) {
  return corpus_bleu({hyp}, {ref}).bleu;
}

double chrf_pp(const std::vector<std::string>& hyps,
               const std::vector<std::string>& refs) {
  if (hyps.size() != refs.size())
    throw PairingError("hypothesis/reference count mismatch");
  if (hyps.empty()) throw EmptyCorpusError("no pairs to score");
  ChrfStats st;
  for (std::size_t i = 0; i < hyps.size(); ++i)
    accumulate_chrf(hyps[i], refs[i], st);
  return chrf_from_stats(st);
}

std::string score_report_json(const ScoreReport& r) {
  nlohmann::json j = {
      {"bleu", r.bleu},
      {"ngram_precisions",
       {r.ngram_precisions[0], r.ngram_precisions[1], r.ngram_precisions[2],
        r.ngram_precisions[3]}},
      {"brevity_penalty", r.brevity_penalty},
      {"hyp_len", r.hyp_len},
      {"ref_len", r.ref_len},
      {"chrf_pp", r.chrf_pp}};
  return j.dump();
}

}  // namespace tinyst

// core/src/analysis.cc

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

#include "tinyst/analysis.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "json.hpp"
#include "tinyst/metrics.h"
#include "tinyst/text.h"

namespace tinyst {

namespace {

// Hindi number words 0..100 with common spelling variants. Every value
// below 100 has its own word, so no composition is needed here.
const std::map<std::string, double>& hindi_words() {
  static const std::map<std::string, double> m = {
      {"शून्य", 0},    {"एक", 1},        {"दो", 2},        {"तीन", 3},
      {"चार", 4},      {"पाँच", 5},      {"पांच", 5},      {"छह", 6},
      {"छः", 6},       {"सात", 7},       {"आठ", 8},        {"नौ", 9},
      {"दस", 10},      {"ग्यारह", 11},   {"बारह", 12},     {"तेरह", 13},
      {"चौदह", 14},    {"पन्द्रह", 15},  {"पंद्रह", 15},   {"सोलह", 16},
      {"सत्रह", 17},   {"अठारह", 18},    {"उन्नीस", 19},   {"बीस", 20},
      {"इक्कीस", 21},  {"बाईस", 22},     {"तेईस", 23},     {"चौबीस", 24},
      {"पच्चीस", 25},  {"छब्बीस", 26},   {"सत्ताईस", 27},  {"अट्ठाईस", 28},
      {"उनतीस", 29},   {"तीस", 30},      {"इकतीस", 31},    {"बत्तीस", 32},
      {"तैंतीस", 33},  {"चौंतीस", 34},   {"पैंतीस", 35},   {"छत्तीस", 36},
      {"सैंतीस", 37},  {"अड़तीस", 38},   {"उनतालीस", 39},  {"चालीस", 40},
      {"इकतालीस", 41}, {"बयालीस", 42},   {"तैंतालीस", 43}, {"चौवालीस", 44},
      {"चवालीस", 44},  {"पैंतालीस", 45}, {"छियालीस", 46},  {"सैंतालीस", 47},
      {"अड़तालीस", 48}, {"उनचास", 49},    {"पचास", 50},     {"इक्यावन", 51},
      {"बावन", 52},    {"तिरपन", 53},    {"तिरेपन", 53},   {"चौवन", 54},
      {"पचपन", 55},    {"छप्पन", 56},    {"सत्तावन", 57},  {"अट्ठावन", 58},
      {"उनसठ", 59},    {"साठ", 60},      {"इकसठ", 61},     {"बासठ", 62},
      {"तिरसठ", 63},   {"तिरेसठ", 63},   {"चौंसठ", 64},    {"पैंसठ", 65},
      {"छियासठ", 66},  {"सड़सठ", 67},    {"अड़सठ", 68},    {"उनहत्तर", 69},
      {"सत्तर", 70},   {"इकहत्तर", 71},  {"बहत्तर", 72},   {"तिहत्तर", 73},
      {"चौहत्तर", 74}, {"पचहत्तर", 75},  {"छिहत्तर", 76},  {"सतहत्तर", 77},
      {"अठहत्तर", 78}, {"उन्यासी", 79},  {"उनासी", 79},    {"अस्सी", 80},
      {"इक्यासी", 81}, {"बयासी", 82},    {"तिरासी", 83},   {"चौरासी", 84},
      {"पचासी", 85},   {"छियासी", 86},   {"सत्तासी", 87},  {"सतासी", 87},
      {"अट्ठासी", 88}, {"अठासी", 88},    {"नवासी", 89},    {"नब्बे", 90},
      {"इक्यानवे", 91}, {"बानवे", 92},   {"तिरानवे", 93},  {"चौरानवे", 94},
      {"पचानवे", 95},  {"छियानवे", 96},  {"सत्तानवे", 97}, {"अट्ठानवे", 98},
      {"निन्यानवे", 99}, {"सौ", 100},
  };
  return m;
}

// English number words 0..100; tens compose with a following unit word
// ("twenty one", "twenty-one") during assembly.
const std::map<std::string, double>& english_words() {
  static const std::map<std::string, double> m = {
      {"zero", 0},      {"one", 1},      {"two", 2},       {"three", 3},
      {"four", 4},      {"five", 5},     {"six", 6},       {"seven", 7},
      {"eight", 8},     {"nine", 9},     {"ten", 10},      {"eleven", 11},
      {"twelve", 12},   {"thirteen", 13}, {"fourteen", 14}, {"fifteen", 15},
      {"sixteen", 16},  {"seventeen", 17}, {"eighteen", 18}, {"nineteen", 19},
      {"twenty", 20},   {"thirty", 30},  {"forty", 40},    {"fifty", 50},
      {"sixty", 60},    {"seventy", 70}, {"eighty", 80},   {"ninety", 90},
      {"hundred", 100},
  };
  return m;
}

struct Magnitude {
  double mult;
  unsigned script;
};

const std::map<std::string, Magnitude>& magnitude_words() {
  static const std::map<std::string, Magnitude> m = {
      {"crore", {1e7, kScriptEnglishWord}},
      {"crores", {1e7, kScriptEnglishWord}},
      {"करोड़", {1e7, kScriptHindiWord}},
      {"lakh", {1e5, kScriptEnglishWord}},
      {"lakhs", {1e5, kScriptEnglishWord}},
      {"लाख", {1e5, kScriptHindiWord}},
      {"thousand", {1e3, kScriptEnglishWord}},
      {"thousands", {1e3, kScriptEnglishWord}},
      {"हज़ार", {1e3, kScriptHindiWord}},
      {"हजार", {1e3, kScriptHindiWord}},
  };
  return m;
}

bool is_ascii_digit_cp(char32_t cp) { return cp >= '0' && cp <= '9'; }
bool is_deva_digit_cp(char32_t cp) { return cp >= 0x0966 && cp <= 0x096F; }
bool is_digit_cp(char32_t cp) {
  return is_ascii_digit_cp(cp) || is_deva_digit_cp(cp);
}
bool is_ascii_letter_cp(char32_t cp) {
  return (cp >= 'A' && cp <= 'Z') || (cp >= 'a' && cp <= 'z');
}
// Devanagari block minus its digit range.
bool is_deva_letter_cp(char32_t cp) {
  return cp >= 0x0900 && cp <= 0x097F && !is_deva_digit_cp(cp);
}

enum class TokKind { kNumber, kMagnitude, kOther };

struct Tok {
  TokKind kind = TokKind::kOther;
  double value = 0.0;   // number value or magnitude multiplier
  unsigned script = 0;
  std::string surface;
};

Tok classify_word(const std::vector<char32_t>& cps) {
  Tok t;
  t.surface = utf8_encode(cps);
  bool all_ascii = true, all_deva = true;
  for (const char32_t cp : cps) {
    if (!is_ascii_letter_cp(cp)) all_ascii = false;
    if (!is_deva_letter_cp(cp)) all_deva = false;
  }
  if (all_deva) {
    const auto& hw = hindi_words();
    const auto it = hw.find(t.surface);
    if (it != hw.end()) {
      t.kind = TokKind::kNumber;
      t.value = it->second;
      t.script = kScriptHindiWord;
      return t;
    }
    const auto& mw = magnitude_words();
    const auto mit = mw.find(t.surface);
    if (mit != mw.end()) {
      t.kind = TokKind::kMagnitude;
      t.value = mit->second.mult;
      t.script = mit->second.script;
    }
    return t;
  }
  if (all_ascii) {
    const std::string low = to_lower_ascii(t.surface);
    const auto& ew = english_words();
    const auto it = ew.find(low);
    if (it != ew.end()) {
      t.kind = TokKind::kNumber;
      t.value = it->second;
      t.script = kScriptEnglishWord;
      return t;
    }
    const auto& mw = magnitude_words();
    const auto mit = mw.find(low);
    if (mit != mw.end()) {
      t.kind = TokKind::kMagnitude;
      t.value = mit->second.mult;
      t.script = mit->second.script;
    }
  }
  return t;
}

Tok classify_digits(const std::vector<char32_t>& cps) {
  Tok t;
  t.surface = utf8_encode(cps);
  std::string ascii;
  for (const char32_t cp : cps) {
    if (cp == '.') {
      ascii += '.';
    } else if (is_ascii_digit_cp(cp)) {
      ascii += static_cast<char>(cp);
      t.script |= kScriptAsciiDigits;
    } else {
      ascii += static_cast<char>('0' + (cp - 0x0966));
      t.script |= kScriptDevanagariDigits;
    }
  }
  double v = 0.0;
  if (parse_double(ascii, &v)) {
    t.kind = TokKind::kNumber;
    t.value = v;
  }
  return t;
}

// Raw scan: digit runs (one decimal point, digits on both sides) and
// letter runs; everything else separates.
std::vector<Tok> scan_tokens(const std::string& text) {
  const std::vector<char32_t> cps = utf8_decode(text);
  std::vector<Tok> toks;
  std::size_t i = 0;
  while (i < cps.size()) {
    if (is_digit_cp(cps[i])) {
      std::vector<char32_t> run;
      bool seen_dot = false;
      while (i < cps.size()) {
        if (is_digit_cp(cps[i])) {
          run.push_back(cps[i]);
          ++i;
        } else if (cps[i] == '.' && !seen_dot && i + 1 < cps.size() &&
                   is_digit_cp(cps[i + 1])) {
          seen_dot = true;
          run.push_back('.');
          ++i;
        } else {
          break;
        }
      }
      toks.push_back(classify_digits(run));
    } else if (is_ascii_letter_cp(cps[i]) || is_deva_letter_cp(cps[i])) {
      std::vector<char32_t> run;
      while (i < cps.size() &&
             (is_ascii_letter_cp(cps[i]) || is_deva_letter_cp(cps[i]))) {
        run.push_back(cps[i]);
        ++i;
      }
      toks.push_back(classify_word(run));
    } else {
      ++i;
    }
  }
  return toks;
}

bool is_english_tens(const Tok& t) {
  return t.kind == TokKind::kNumber && t.script == kScriptEnglishWord &&
         t.value >= 20 && t.value <= 90 && std::fmod(t.value, 10.0) == 0.0;
}

bool is_english_unit(const Tok& t) {
  return t.kind == TokKind::kNumber && t.script == kScriptEnglishWord &&
         t.value >= 1 && t.value <= 9;
}

// Reads one number starting at i, merging an English tens+unit compound;
// returns false if toks[i] is not a number.
bool read_number(const std::vector<Tok>& toks, std::size_t i, double* value,
                 unsigned* script, std::string* surface, std::size_t* next) {
  if (i >= toks.size() || toks[i].kind != TokKind::kNumber) return false;
  *value = toks[i].value;
  *script = toks[i].script;
  *surface = toks[i].surface;
  *next = i + 1;
  if (is_english_tens(toks[i]) && i + 1 < toks.size() &&
      is_english_unit(toks[i + 1])) {
    *value += toks[i + 1].value;
    *surface += " " + toks[i + 1].surface;
    *next = i + 2;
  }
  return true;
}

}  // namespace

std::vector<Numeral> extract_numerals_detailed(const std::string& text) {
  const std::vector<Tok> toks = scan_tokens(text);
  std::vector<Numeral> out;
  std::size_t i = 0;
  while (i < toks.size()) {
    double v;
    unsigned script;
    std::string surface;
    std::size_t next;
    if (read_number(toks, i, &v, &script, &surface, &next)) {
      if (next < toks.size() && toks[next].kind == TokKind::kMagnitude) {
        // Number-magnitude terms chain additively while the magnitudes
        // strictly descend: "8 crores 74 lakhs" is one value.
        Numeral n;
        n.value = v * toks[next].value;
        n.script = script | toks[next].script;
        n.surface = surface + " " + toks[next].surface;
        double last_mag = toks[next].value;
        i = next + 1;
        while (read_number(toks, i, &v, &script, &surface, &next) &&
               next < toks.size() && toks[next].kind == TokKind::kMagnitude &&
               toks[next].value < last_mag) {
          n.value += v * toks[next].value;
          n.script |= script | toks[next].script;
          n.surface += " " + surface + " " + toks[next].surface;
          last_mag = toks[next].value;
          i = next + 1;
        }
        out.push_back(std::move(n));
      } else {
        out.push_back({v, script, surface});
        i = next;
      }
    } else if (toks[i].kind == TokKind::kMagnitude) {
      // Bare magnitude ("lakhs of people") counts as one unit of it.
      out.push_back({toks[i].value, toks[i].script, toks[i].surface});
      ++i;
    } else {
      ++i;
    }
  }
  return out;
}

std::vector<double> extract_numerals(const std::string& text) {
  std::vector<double> out;
  for (const Numeral& n : extract_numerals_detailed(text))
    out.push_back(n.value);
  return out;
}

std::string render_numeral(double value) {
  if (std::floor(value) == value && std::fabs(value) < 9e15) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.0f", value);
    return buf;
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9f", value);
  std::string s(buf);
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

std::vector<ErrorBucket> classify_lengths(const std::vector<PairText>& pairs,
                                          double threshold) {
  std::vector<ErrorBucket> out;
  out.reserve(pairs.size());
  for (const PairText& p : pairs) {
    ErrorBucket b;
    b.id = p.id;
    const std::size_t h = tokenize_13a(p.hyp).size();
    const std::size_t r = tokenize_13a(p.ref).size();
    if (r > h)
      b.category = LengthCategory::kRefLonger;
    else if (h > r)
      b.category = LengthCategory::kHypLonger;
    else
      b.category = LengthCategory::kEqual;
    b.sentence_bleu = sentence_bleu(p.hyp, p.ref);
    if (b.sentence_bleu < threshold) {
      b.flags |= kFlagLowBleu;
      if (b.category == LengthCategory::kRefLonger)
        b.flags |= kFlagSuspectTruncation;
      if (b.category == LengthCategory::kHypLonger)
        b.flags |= kFlagSuspectNoise;
    }
    out.push_back(std::move(b));
  }
  return out;
}

const char* length_category_name(LengthCategory c) {
  switch (c) {
    case LengthCategory::kRefLonger:
      return "REF_LONGER";
    case LengthCategory::kEqual:
      return "EQUAL";
    case LengthCategory::kHypLonger:
      return "HYP_LONGER";
  }
  return "EQUAL";
}

const char* numeral_verdict_name(NumeralVerdict v) {
  switch (v) {
    case NumeralVerdict::kMatch:
      return "MATCH";
    case NumeralVerdict::kValueMismatch:
      return "VALUE_MISMATCH";
    case NumeralVerdict::kScriptMismatchOnly:
      return "SCRIPT_MISMATCH_ONLY";
    case NumeralVerdict::kMissing:
      return "MISSING";
  }
  return "MATCH";
}

namespace {

bool nearly_equal(double a, double b) {
  return std::fabs(a - b) <=
         1e-9 * std::max({1.0, std::fabs(a), std::fabs(b)});
}

bool value_multisets_equal(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size()) return false;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!nearly_equal(a[i], b[i])) return false;
  return true;
}

// True when every element of `small` matches a distinct element of `big`.
bool sub_multiset(std::vector<double> small, std::vector<double> big) {
  std::sort(small.begin(), small.end());
  std::sort(big.begin(), big.end());
  std::size_t j = 0;
  for (const double v : small) {
    while (j < big.size() && big[j] < v && !nearly_equal(big[j], v)) ++j;
    if (j == big.size() || !nearly_equal(big[j], v)) return false;
    ++j;
  }
  return true;
}

}  // namespace

NumeralAudit numeral_audit(const std::string& hyp, const std::string& ref) {
  const std::vector<Numeral> h = extract_numerals_detailed(hyp);
  const std::vector<Numeral> r = extract_numerals_detailed(ref);
  NumeralAudit audit;
  for (const Numeral& n : h) audit.hyp_values.push_back(n.value);
  for (const Numeral& n : r) audit.ref_values.push_back(n.value);

  if (h.empty() && r.empty()) {
    audit.verdict = NumeralVerdict::kMatch;
    return audit;
  }
  if (value_multisets_equal(audit.hyp_values, audit.ref_values)) {
    // Same numbers; do the surfaces agree in script?
    auto key = [](const Numeral& n) { return std::make_pair(n.value, n.script); };
    std::vector<std::pair<double, unsigned>> hk, rk;
    for (const Numeral& n : h) hk.push_back(key(n));
    for (const Numeral& n : r) rk.push_back(key(n));
    std::sort(hk.begin(), hk.end());
    std::sort(rk.begin(), rk.end());
    bool same_scripts = true;
    for (std::size_t i = 0; i < hk.size(); ++i)
      if (!nearly_equal(hk[i].first, rk[i].first) ||
          hk[i].second != rk[i].second)
        same_scripts = false;
    audit.verdict = same_scripts ? NumeralVerdict::kMatch
                                 : NumeralVerdict::kScriptMismatchOnly;
    return audit;
  }
  if (sub_multiset(audit.hyp_values, audit.ref_values) ||
      sub_multiset(audit.ref_values, audit.hyp_values)) {
    audit.verdict = NumeralVerdict::kMissing;
    return audit;
  }
  audit.verdict = NumeralVerdict::kValueMismatch;
  return audit;
}

namespace {

std::string flags_list(unsigned flags) {
  std::vector<std::string> names;
  if (flags & kFlagLowBleu) names.push_back("LOW_BLEU");
  if (flags & kFlagSuspectTruncation) names.push_back("SUSPECT_TRUNCATION");
  if (flags & kFlagSuspectNoise) names.push_back("SUSPECT_NOISE");
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out += " ";
    out += names[i];
  }
  return out;
}

}  // namespace

std::string analysis_report_markdown(const std::vector<ErrorBucket>& buckets,
                                     const std::vector<NumeralAudit>& audits) {
  long cat_counts[3] = {0, 0, 0};
  long flag_counts[3] = {0, 0, 0};
  for (const ErrorBucket& b : buckets) {
    ++cat_counts[static_cast<int>(b.category)];
    if (b.flags & kFlagLowBleu) ++flag_counts[0];
    if (b.flags & kFlagSuspectTruncation) ++flag_counts[1];
    if (b.flags & kFlagSuspectNoise) ++flag_counts[2];
  }
  std::string md = "# Error analysis\n\n";
  md += "Pairs analyzed: " + std::to_string(buckets.size()) + "\n\n";
  md += "## Length categories\n\n| category | count |\n| --- | --- |\n";
  const LengthCategory cats[3] = {LengthCategory::kRefLonger,
                                  LengthCategory::kEqual,
                                  LengthCategory::kHypLonger};
  for (const LengthCategory c : cats)
    md += std::string("| ") + length_category_name(c) + " | " +
          std::to_string(cat_counts[static_cast<int>(c)]) + " |\n";
  md += "\n## Flags\n\n| flag | count |\n| --- | --- |\n";
  md += "| LOW_BLEU | " + std::to_string(flag_counts[0]) + " |\n";
  md += "| SUSPECT_TRUNCATION | " + std::to_string(flag_counts[1]) + " |\n";
  md += "| SUSPECT_NOISE | " + std::to_string(flag_counts[2]) + " |\n";

  std::vector<const ErrorBucket*> worst;
  for (const ErrorBucket& b : buckets) worst.push_back(&b);
  std::sort(worst.begin(), worst.end(),
            [](const ErrorBucket* a, const ErrorBucket* b) {
              if (a->sentence_bleu != b->sentence_bleu)
                return a->sentence_bleu < b->sentence_bleu;
              return a->id < b->id;
            });
  if (worst.size() > 20) worst.resize(20);
  md += "\n## Worst pairs by sentence BLEU\n\n";
  md += "| id | category | sentence BLEU | flags |\n| --- | --- | --- | --- |\n";
  for (const ErrorBucket* b : worst)
    md += "| " + b->id + " | " + length_category_name(b->category) + " | " +
          format_fixed(b->sentence_bleu, 2) + " | " + flags_list(b->flags) +
          " |\n";

  long verdict_counts[4] = {0, 0, 0, 0};
  for (const NumeralAudit& a : audits)
    ++verdict_counts[static_cast<int>(a.verdict)];
  md += "\n## Numeral verdicts\n\n| verdict | count |\n| --- | --- |\n";
  const NumeralVerdict verdicts[4] = {
      NumeralVerdict::kMatch, NumeralVerdict::kValueMismatch,
      NumeralVerdict::kScriptMismatchOnly, NumeralVerdict::kMissing};
  for (const NumeralVerdict v : verdicts)
    md += std::string("| ") + numeral_verdict_name(v) + " | " +
          std::to_string(verdict_counts[static_cast<int>(v)]) + " |\n";
  return md;
}

std::string analysis_report_jsonl(const std::vector<ErrorBucket>& buckets,
                                  const std::vector<NumeralAudit>& audits) {
  using nlohmann::json;
  std::map<std::string, const NumeralAudit*> by_id;
  for (const NumeralAudit& a : audits) by_id[a.id] = &a;
  std::string out;
  std::map<std::string, bool> consumed;
  for (const ErrorBucket& b : buckets) {
    json j = {{"id", b.id},
              {"category", length_category_name(b.category)},
              {"sentence_bleu", b.sentence_bleu}};
    json flags = json::array();
    if (b.flags & kFlagLowBleu) flags.push_back("LOW_BLEU");
    if (b.flags & kFlagSuspectTruncation) flags.push_back("SUSPECT_TRUNCATION");
    if (b.flags & kFlagSuspectNoise) flags.push_back("SUSPECT_NOISE");
    j["flags"] = std::move(flags);
    const auto it = by_id.find(b.id);
    if (it != by_id.end()) {
      j["verdict"] = numeral_verdict_name(it->second->verdict);
      j["hyp_values"] = it->second->hyp_values;
      j["ref_values"] = it->second->ref_values;
      consumed[b.id] = true;
    }
    out += j.dump();
    out += '\n';
  }
  for (const NumeralAudit& a : audits) {
    if (consumed.count(a.id)) continue;
    json j = {{"id", a.id},
              {"verdict", numeral_verdict_name(a.verdict)},
              {"hyp_values", a.hyp_values},
              {"ref_values", a.ref_values}};
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace tinyst

// core/include/tinyst/analysis.h

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

#ifndef TINYST_ANALYSIS_H_
#define TINYST_ANALYSIS_H_

#include <string>
#include <vector>

namespace tinyst {

// One hypothesis/reference pair under analysis.
struct PairText {
  std::string id;
  std::string hyp;
  std::string ref;
};

enum class LengthCategory { kRefLonger, kEqual, kHypLonger };

// Flag bits for ErrorBucket::flags.
inline constexpr unsigned kFlagLowBleu = 1u;
inline constexpr unsigned kFlagSuspectTruncation = 2u;
inline constexpr unsigned kFlagSuspectNoise = 4u;

struct ErrorBucket {
  std::string id;
  LengthCategory category = LengthCategory::kEqual;
  double sentence_bleu = 0.0;
  unsigned flags = 0;
};

inline constexpr double kDefaultLowBleuThreshold = 15.0;

// Buckets each pair by 13a word counts (reference longer / equal /
// hypothesis longer) and flags LOW_BLEU below the threshold. A short, bad
// hypothesis suggests truncated audio; a long, bad one suggests noise.
std::vector<ErrorBucket> classify_lengths(
    const std::vector<PairText>& pairs,
    double threshold = kDefaultLowBleuThreshold);

const char* length_category_name(LengthCategory c);

// Surface-script bits carried by each extracted numeral.
inline constexpr unsigned kScriptAsciiDigits = 1u;
inline constexpr unsigned kScriptDevanagariDigits = 2u;
inline constexpr unsigned kScriptHindiWord = 4u;
inline constexpr unsigned kScriptEnglishWord = 8u;

struct Numeral {
  double value = 0.0;
  unsigned script = 0;  // union of the surface bits above
  std::string surface;  // the text span it was read from
};

// Recognizes ASCII and Devanagari digit runs (one decimal point allowed),
// Hindi and English number words 0..100, and the magnitude words
// crore/karod (1e7), lakh (1e5) and hazaar/thousand (1e3). A number
// directly before a magnitude multiplies it; number-magnitude terms in
// strictly descending magnitude order add up ("8 crores 74 lakhs" is one
// value). Anything unrecognized is skipped.
std::vector<double> extract_numerals(const std::string& text);
std::vector<Numeral> extract_numerals_detailed(const std::string& text);

// Plain-decimal rendering (never scientific) so extracted values survive
// a round trip through their own report.
std::string render_numeral(double value);

enum class NumeralVerdict {
  kMatch,               // same values, same scripts (or none at all)
  kValueMismatch,       // conflicting values on both sides
  kScriptMismatchOnly,  // same values, different surface scripts
  kMissing              // one side lacks values the other has
};

const char* numeral_verdict_name(NumeralVerdict v);

struct NumeralAudit {
  std::string id;
  std::vector<double> hyp_values;
  std::vector<double> ref_values;
  NumeralVerdict verdict = NumeralVerdict::kMatch;
};

// Multiset comparison of the normalized values (relative tolerance 1e-9);
// the id field is left for the caller.
NumeralAudit numeral_audit(const std::string& hyp, const std::string& ref);

// Markdown summary: category counts, flag histogram, the worst 20 pairs
// by sentence BLEU, and the numeral verdict table. Deterministic.
std::string analysis_report_markdown(const std::vector<ErrorBucket>& buckets,
                                     const std::vector<NumeralAudit>& audits);

// One JSON object per pair, buckets joined with audits by id.
std::string analysis_report_jsonl(const std::vector<ErrorBucket>& buckets,
                                  const std::vector<NumeralAudit>& audits);

}  // namespace tinyst

#endif  // TINYST_ANALYSIS_H_

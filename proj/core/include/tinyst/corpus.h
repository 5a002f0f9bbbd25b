// core/include/tinyst/corpus.h

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

#ifndef TINYST_CORPUS_H_
#define TINYST_CORPUS_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace tinyst {

// One aligned (audio, source text, target text) triple; the unit of all
// data flow. src_text may be empty (audio + target suffice for translation
// training); tgt_text may not.
struct Utterance {
  std::string id;
  std::string audio_path;
  double duration_sec = 0.0;
  std::string src_lang;
  std::string tgt_lang;
  std::string src_text;
  std::string tgt_text;
  // Duration exactly as read from the manifest, so that save() round-trips
  // byte-identically. Empty for synthesized utterances.
  std::string duration_raw;

  std::string pair() const { return src_lang + "-" + tgt_lang; }
};

enum class Split { kTrain, kDev, kTest };

std::string split_name(Split s);
Split parse_split(const std::string& name);

struct Manifest {
  Split split = Split::kTrain;
  std::vector<Utterance> utterances;
};

struct PairStats {
  std::size_t n_utterances = 0;
  double total_hours = 0.0;
};

struct CorpusStats {
  std::size_t n_utterances = 0;
  double total_hours = 0.0;
  double mean_duration_sec = 0.0;
  std::map<std::string, PairStats> per_pair;  // keyed "src-tgt"
};

// Reads a UTF-8 TSV manifest with header
// id\taudio\tduration_sec\tsrc_lang\ttgt_lang\tsrc_text\ttgt_text (LF line
// endings). The file does not carry its split, so the caller names it.
// Throws SchemaError (missing/misnamed column), DuplicateIdError,
// ParseError (bad field count, non-numeric or non-positive duration,
// empty id or tgt_text, stray CR).
Manifest load_manifest(const std::string& path, Split which);

// Inverse of load_manifest: header plus one row per utterance, LF endings,
// trailing newline. save(load(p)) is byte-identical modulo trailing
// whitespace.
void save_manifest(const Manifest& m, const std::string& path);

// Totals and means. Empty manifest -> EmptyCorpusError.
CorpusStats stats(const Manifest& m);

// Union of two train manifests, deterministically shuffled by seed.
// Requires both splits to be train (else SplitMismatchError). If ids
// collide, every id is prefixed with its own "src-tgt:" pair tag; a
// collision surviving that prefix -> DuplicateIdError.
Manifest mix(const Manifest& a, const Manifest& b, std::uint64_t seed);

// Keeps only utterances whose src_lang matches, preserving relative order.
Manifest filter_pair(const Manifest& m, const std::string& src_lang);

// Joins a possibly relative audio path onto the directory containing the
// manifest. Absolute paths pass through.
std::string resolve_audio_path(const std::string& manifest_path,
                               const std::string& audio_path);

}  // namespace tinyst

#endif  // TINYST_CORPUS_H_

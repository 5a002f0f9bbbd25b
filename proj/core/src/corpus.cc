// core/src/corpus.cc

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

#include "tinyst/corpus.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "tinyst/errors.h"
#include "tinyst/rng.h"
#include "tinyst/text.h"

namespace tinyst {

namespace {

const char* const kColumns[7] = {"id",       "audio",    "duration_sec",
                                 "src_lang", "tgt_lang", "src_text",
                                 "tgt_text"};

}  // namespace

std::string split_name(Split s) {
  switch (s) {
    case Split::kTrain:
      return "train";
    case Split::kDev:
      return "dev";
    case Split::kTest:
      return "test";
  }
  return "train";
}

Split parse_split(const std::string& name) {
  if (name == "train") return Split::kTrain;
  if (name == "dev") return Split::kDev;
  if (name == "test") return Split::kTest;
  throw UsageError("unknown split name: " + name);
}

Manifest load_manifest(const std::string& path, Split which) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open manifest: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  if (text.find('\r') != std::string::npos)
    throw ParseError("manifest contains CR; LF line endings required", 1);

  std::vector<std::string> lines = split(text, '\n');
  // Drop trailing empty lines produced by the final newline.
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw ParseError("manifest has no header", 1);

  const std::vector<std::string> header = split(lines[0], '\t');
  for (std::size_t c = 0; c < 7; ++c) {
    if (c >= header.size() || header[c] != kColumns[c])
      throw SchemaError(kColumns[c]);
  }
  if (header.size() != 7)
    throw ParseError("header has extra columns", 1);

  Manifest m;
  m.split = which;
  std::set<std::string> seen;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const long line_no = static_cast<long>(i + 1);
    if (lines[i].empty())
      throw ParseError("blank line inside manifest", line_no);
    const std::vector<std::string> f = split(lines[i], '\t');
    if (f.size() != 7)
      throw ParseError("expected 7 fields, got " + std::to_string(f.size()),
                       line_no);
    Utterance u;
    u.id = f[0];
    u.audio_path = f[1];
    u.duration_raw = f[2];
    u.src_lang = f[3];
    u.tgt_lang = f[4];
    u.src_text = f[5];
    u.tgt_text = f[6];
    if (u.id.empty()) throw ParseError("empty id", line_no);
    if (!parse_double(u.duration_raw, &u.duration_sec))
      throw ParseError("non-numeric duration_sec: " + u.duration_raw, line_no);
    if (!(u.duration_sec > 0.0))
      throw ParseError("duration_sec must be > 0, got " + u.duration_raw,
                       line_no);
    if (u.tgt_text.empty()) throw ParseError("empty tgt_text", line_no);
    if (!seen.insert(u.id).second) throw DuplicateIdError(u.id);
    m.utterances.push_back(std::move(u));
  }
  return m;
}

void save_manifest(const Manifest& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write manifest: " + path);
  out << "id\taudio\tduration_sec\tsrc_lang\ttgt_lang\tsrc_text\ttgt_text\n";
  for (const Utterance& u : m.utterances) {
    const std::string dur =
        u.duration_raw.empty() ? format_double(u.duration_sec) : u.duration_raw;
    out << u.id << '\t' << u.audio_path << '\t' << dur << '\t' << u.src_lang
        << '\t' << u.tgt_lang << '\t' << u.src_text << '\t' << u.tgt_text
        << '\n';
  }
  if (!out) throw DataError("write failed: " + path);
}

CorpusStats stats(const Manifest& m) {
  if (m.utterances.empty()) throw EmptyCorpusError("manifest has no utterances");
  CorpusStats s;
  s.n_utterances = m.utterances.size();
  double total_sec = 0.0;
  for (const Utterance& u : m.utterances) {
    total_sec += u.duration_sec;
    PairStats& p = s.per_pair[u.pair()];
    p.n_utterances += 1;
    p.total_hours += u.duration_sec / 3600.0;
  }
  s.total_hours = total_sec / 3600.0;
  s.mean_duration_sec = total_sec / static_cast<double>(s.n_utterances);
  return s;
}

Manifest mix(const Manifest& a, const Manifest& b, std::uint64_t seed) {
  if (a.split != Split::kTrain || b.split != Split::kTrain)
    throw SplitMismatchError("mix requires two train manifests, got " +
                             split_name(a.split) + " and " +
                             split_name(b.split));
  Manifest out;
  out.split = Split::kTrain;
  out.utterances = a.utterances;
  out.utterances.insert(out.utterances.end(), b.utterances.begin(),
                        b.utterances.end());

  std::set<std::string> ids;
  bool collision = false;
  for (const Utterance& u : out.utterances)
    if (!ids.insert(u.id).second) collision = true;
  if (collision) {
    ids.clear();
    for (Utterance& u : out.utterances) {
      u.id = u.pair() + ":" + u.id;
      if (!ids.insert(u.id).second) throw DuplicateIdError(u.id);
    }
  }

  // Fisher-Yates over the concatenation; the seed fully determines order.
  Rng rng(seed);
  for (std::size_t i = out.utterances.size(); i > 1; --i) {
    const std::size_t j =
        static_cast<std::size_t>(rng.uniform_below(static_cast<std::uint64_t>(i)));
    std::swap(out.utterances[i - 1], out.utterances[j]);
  }
  return out;
}

Manifest filter_pair(const Manifest& m, const std::string& src_lang) {
  Manifest out;
  out.split = m.split;
  for (const Utterance& u : m.utterances)
    if (u.src_lang == src_lang) out.utterances.push_back(u);
  return out;
}

std::string resolve_audio_path(const std::string& manifest_path,
                               const std::string& audio_path) {
  const std::filesystem::path audio(audio_path);
  if (audio.is_absolute()) return audio_path;
  return (std::filesystem::path(manifest_path).parent_path() / audio).string();
}

}  // namespace tinyst

// core/src/vocab.cc

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

#include "tinyst/vocab.h"

#include <fstream>
#include <set>
#include <sstream>

#include "tinyst/errors.h"
#include "tinyst/text.h"

namespace tinyst {

Vocab::Vocab() {
  tokens_ = {"<pad>", "<bos>", "<eos>", "<unk>"};
  for (std::size_t i = 0; i < tokens_.size(); ++i)
    token_ids_[tokens_[i]] = static_cast<int>(i);
}

Vocab Vocab::build(const Manifest& m) {
  if (m.utterances.empty()) throw EmptyCorpusError("vocab from empty manifest");
  std::set<char32_t> cps;
  for (const Utterance& u : m.utterances)
    for (char32_t cp : utf8_decode(u.tgt_text)) cps.insert(cp);
  std::vector<std::string> tokens;
  tokens.reserve(cps.size());
  for (char32_t cp : cps) tokens.push_back(utf8_encode_one(cp));
  return from_tokens(tokens);
}

Vocab Vocab::from_tokens(const std::vector<std::string>& tokens) {
  Vocab v;
  for (const std::string& tok : tokens) {
    if (tok.empty()) throw DataError("empty vocab token");
    if (v.token_ids_.count(tok)) throw DuplicateIdError(tok);
    v.token_ids_[tok] = static_cast<int>(v.tokens_.size());
    v.tokens_.push_back(tok);
  }
  return v;
}

int Vocab::token_to_id(const std::string& token) const {
  const auto it = token_ids_.find(token);
  return it == token_ids_.end() ? kUnk : it->second;
}

const std::string& Vocab::id_to_token(int id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= tokens_.size())
    throw LayoutError("token id out of range: " + std::to_string(id));
  return tokens_[static_cast<std::size_t>(id)];
}

std::vector<int> Vocab::encode(const std::string& text) const {
  std::vector<int> ids;
  for (char32_t cp : utf8_decode(text))
    ids.push_back(token_to_id(utf8_encode_one(cp)));
  return ids;
}

std::string Vocab::decode(const std::vector<int>& ids) const {
  std::string out;
  for (int id : ids) {
    if (id < kNumSpecials) continue;
    out += id_to_token(id);
  }
  return out;
}

void Vocab::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write vocab: " + path);
  out << "#vocab v1\n";
  for (std::size_t i = kNumSpecials; i < tokens_.size(); ++i)
    out << tokens_[i] << '\n';
  if (!out) throw DataError("write failed: " + path);
}

Vocab Vocab::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open vocab: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  std::vector<std::string> lines = split(ss.str(), '\n');
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty() || lines[0] != "#vocab v1")
    throw CorruptFileError("bad vocab header: " + path);
  std::vector<std::string> tokens(lines.begin() + 1, lines.end());
  return from_tokens(tokens);
}

}  // namespace tinyst

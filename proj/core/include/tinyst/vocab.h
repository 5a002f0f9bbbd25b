// core/include/tinyst/vocab.h

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

#ifndef TINYST_VOCAB_H_
#define TINYST_VOCAB_H_

#include <map>
#include <string>
#include <vector>

#include "tinyst/corpus.h"

namespace tinyst {

// Character-level target inventory: a token <-> id bijection over the code
// points seen in training targets, with four pinned specials up front.
class Vocab {
 public:
  static constexpr int kPad = 0;
  static constexpr int kBos = 1;
  static constexpr int kEos = 2;
  static constexpr int kUnk = 3;
  static constexpr int kNumSpecials = 4;

  // Collects the code points of every tgt_text, sorted by code point for
  // determinism; ids start at kNumSpecials.
  static Vocab build(const Manifest& m);
  // Tokens (one UTF-8 code point each) adopted in the given order.
  static Vocab from_tokens(const std::vector<std::string>& tokens);

  std::size_t size() const { return tokens_.size(); }
  // kUnk for unknown tokens.
  int token_to_id(const std::string& token) const;
  const std::string& id_to_token(int id) const;

  // Code-point encoding of a target string (no BOS/EOS added here).
  std::vector<int> encode(const std::string& text) const;
  // Inverse; special ids are dropped.
  std::string decode(const std::vector<int>& ids) const;

  void save(const std::string& path) const;
  static Vocab load(const std::string& path);

 private:
  Vocab();
  std::vector<std::string> tokens_;       // index = id
  std::map<std::string, int> token_ids_;  // inverse
};

}  // namespace tinyst

#endif  // TINYST_VOCAB_H_

// tests/support/synth.h

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

#ifndef TINYST_TESTS_SUPPORT_SYNTH_H_
#define TINYST_TESTS_SUPPORT_SYNTH_H_

#include <cstdint>
#include <string>

#include "tinyst/corpus.h"
#include "tinyst/dsp.h"
#include "tinyst/model.h"
#include "tinyst/vocab.h"

namespace tinyst {
namespace testsupport {

// Devanagari names for the digits 0..9.
extern const char* const kDigitWords[10];

// "130" -> "एक तीन शून्य".
std::string digit_words(const std::string& digits);

// Tone-coded digits: digit d is a 0.18 s pure tone at 400 + 210*d Hz, so
// every digit lands on a distinct mel band.
Waveform tone_waveform(const std::string& digits, int sample_rate_hz = 16000);

// Writes wav/<id>.wav files plus <dir>/manifest.tsv for n random
// digit-string utterances and returns the manifest. Targets are the
// Devanagari digit words; sources hold the raw digit strings.
Manifest make_synth_corpus(const std::string& dir, std::size_t n,
                           std::uint64_t seed,
                           const std::string& src_lang = "bho",
                           const std::string& tgt_lang = "hi",
                           std::size_t digits_per_utt = 5);

// Small randomly initialized model for decode equivalence checks.
ModelState toy_model(int vocab_size, std::uint64_t seed);

// Uniform [-1, 1] feature grid.
FeatureMatrix random_features(std::size_t frames, std::size_t bins,
                              std::uint64_t seed);

// Scratch directory under the build tree, wiped per call.
std::string fresh_dir(const std::string& name);

}  // namespace testsupport
}  // namespace tinyst

#endif  // TINYST_TESTS_SUPPORT_SYNTH_H_

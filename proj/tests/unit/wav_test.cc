// tests/unit/wav_test.cc

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

#include "tinyst/wav.h"

#include <cmath>
#include <fstream>

#include "doctest.h"
#include "support/synth.h"
#include "tinyst/errors.h"

namespace tinyst {

TEST_SUITE("wav") {

TEST_CASE("write and read round trip within quantization") {
  const std::string dir = testsupport::fresh_dir("wav_roundtrip");
  const Waveform w = testsupport::tone_waveform("05");
  const std::string path = dir + "/t.wav";
  write_wav(w, path);
  const Waveform r = read_wav(path);
  CHECK(r.sample_rate_hz == w.sample_rate_hz);
  REQUIRE(r.samples.size() == w.samples.size());
  for (std::size_t i = 0; i < w.samples.size(); ++i)
    CHECK(std::fabs(r.samples[i] - w.samples[i]) <= 1.0 / 32767.0);
}

TEST_CASE("non-wav bytes are rejected") {
  const std::string dir = testsupport::fresh_dir("wav_reject");
  const std::string path = dir + "/x.wav";
  std::ofstream(path, std::ios::binary) << "this is not a riff file at all";
  CHECK_THROWS_AS(read_wav(path), DataError);
  CHECK_THROWS_AS(read_wav(dir + "/absent.wav"), DataError);
}

TEST_CASE("writing clamps out-of-range samples") {
  const std::string dir = testsupport::fresh_dir("wav_clamp");
  Waveform w;
  w.samples = {1.5, -1.5, 0.0};
  const std::string path = dir + "/c.wav";
  write_wav(w, path);
  const Waveform r = read_wav(path);
  REQUIRE(r.samples.size() == 3);
  CHECK(r.samples[0] <= 1.0);
  CHECK(r.samples[1] >= -1.0);
}

}  // TEST_SUITE

}  // namespace tinyst

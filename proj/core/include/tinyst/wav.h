// core/include/tinyst/wav.h

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

#ifndef TINYST_WAV_H_
#define TINYST_WAV_H_

#include <string>

#include "tinyst/dsp.h"

namespace tinyst {

// Reads a RIFF/WAV file. Only PCM 16-bit mono 16 kHz is accepted; anything
// else raises UnsupportedFormatError naming the offending field ("format",
// "channels", "sample_rate", "bit_depth"). Truncated or non-RIFF content
// raises CorruptFileError. Integer samples are scaled by 1/32768.
Waveform read_wav(const std::string& path);

// Writes PCM 16-bit mono. Samples are clamped to [-1, 1] and scaled by
// 32768 (positive full scale saturates at 32767).
void write_wav(const Waveform& w, const std::string& path);

}  // namespace tinyst

#endif  // TINYST_WAV_H_

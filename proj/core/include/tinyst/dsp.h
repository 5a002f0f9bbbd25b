// core/include/tinyst/dsp.h

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

#ifndef TINYST_DSP_H_
#define TINYST_DSP_H_

#include <cstddef>
#include <string>
#include <vector>

namespace tinyst {

// Front-end constants. The mask bound of 30 mel bins is meaningful against
// kNumMels = 80.
constexpr int kSampleRateHz = 16000;
constexpr std::size_t kWindowSamples = 400;  // 25 ms
constexpr std::size_t kHopSamples = 160;     // 10 ms
constexpr std::size_t kFftSize = 512;
constexpr std::size_t kNumMels = 80;
constexpr double kMelLowHz = 20.0;
constexpr double kMelHighHz = 7600.0;
constexpr double kLogFloor = 1e-10;

struct Waveform {
  std::vector<double> samples;  // each in [-1, 1]
  int sample_rate_hz = kSampleRateHz;
};

// Row-major T x F grid of log-mel values.
struct FeatureMatrix {
  std::size_t num_frames = 0;  // T
  std::size_t num_bins = 0;    // F
  std::vector<double> values;  // size T * F

  double& at(std::size_t t, std::size_t f) { return values[t * num_bins + f]; }
  double at(std::size_t t, std::size_t f) const {
    return values[t * num_bins + f];
  }
};

// In-place radix-2 FFT; re/im must have equal power-of-two length. Exposed
// so tests can pit it against a naive DFT.
void fft_radix2(std::vector<double>& re, std::vector<double>& im);

// Time-axis resampling by a windowed-sinc kernel (16 taps). Output length
// is round-half-away-from-zero(n / factor); factor 1.0 is a bit-identical
// identity; pitch scales with the factor. factor <= 0 -> DomainError.
Waveform speed_perturb(const Waveform& w, double factor);

// 80-bin log-mel spectrogram: 25 ms Hann window, 10 ms hop, 512-point FFT,
// HTK mel scale over 20 Hz..7.6 kHz, ln(energy + kLogFloor). Input shorter
// than one window -> TooShortError.
FeatureMatrix log_mel(const Waveform& w);

// Per-utterance, per-bin mean/variance normalization (population variance,
// floored at 1e-10). Fewer than 2 frames -> TooShortError.
FeatureMatrix cmvn(const FeatureMatrix& f);

// Binary feature dump: 8-byte header (T, F as little-endian uint32) then
// T*F little-endian float32, row-major.
void write_features(const FeatureMatrix& f, const std::string& path);
FeatureMatrix read_features(const std::string& path);

}  // namespace tinyst

#endif  // TINYST_DSP_H_

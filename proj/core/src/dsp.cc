// core/src/dsp.cc

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

#include "tinyst/dsp.h"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "tinyst/errors.h"

namespace tinyst {

namespace {

constexpr double kPi = 3.14159265358979323846;

double hz_to_mel(double hz) { return 1127.0 * std::log(1.0 + hz / 700.0); }
double mel_to_hz(double mel) { return 700.0 * (std::exp(mel / 1127.0) - 1.0); }

double sinc(double x) {
  if (x == 0.0) return 1.0;
  return std::sin(kPi * x) / (kPi * x);
}

long round_half_away(double x) {
  return static_cast<long>(x < 0 ? std::ceil(x - 0.5) : std::floor(x + 0.5));
}

// Triangular mel filterbank, HTK convention (peak weight 1, no area
// normalization). weights[m][k] over the kFftSize/2 + 1 power bins.
const std::vector<std::vector<double>>& mel_filterbank() {
  static const std::vector<std::vector<double>> bank = [] {
    const std::size_t n_bins = kFftSize / 2 + 1;
    const double mel_lo = hz_to_mel(kMelLowHz);
    const double mel_hi = hz_to_mel(kMelHighHz);
    std::vector<double> corners(kNumMels + 2);
    for (std::size_t i = 0; i < corners.size(); ++i)
      corners[i] = mel_to_hz(mel_lo + (mel_hi - mel_lo) * static_cast<double>(i) /
                                          static_cast<double>(kNumMels + 1));
    std::vector<std::vector<double>> w(kNumMels,
                                       std::vector<double>(n_bins, 0.0));
    for (std::size_t m = 0; m < kNumMels; ++m) {
      const double left = corners[m], center = corners[m + 1],
                   right = corners[m + 2];
      for (std::size_t k = 0; k < n_bins; ++k) {
        const double hz = static_cast<double>(k) * kSampleRateHz /
                          static_cast<double>(kFftSize);
        if (hz <= left || hz >= right) continue;
        w[m][k] = hz <= center ? (hz - left) / (center - left)
                               : (right - hz) / (right - center);
      }
    }
    return w;
  }();
  return bank;
}

// Symmetric Hann window of length kWindowSamples.
const std::vector<double>& hann_window() {
  static const std::vector<double> win = [] {
    std::vector<double> w(kWindowSamples);
    for (std::size_t n = 0; n < kWindowSamples; ++n)
      w[n] = 0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(n) /
                                  static_cast<double>(kWindowSamples - 1));
    return w;
  }();
  return win;
}

}  // namespace

void fft_radix2(std::vector<double>& re, std::vector<double>& im) {
  const std::size_t n = re.size();
  if (n != im.size() || n == 0 || (n & (n - 1)) != 0)
    throw DomainError("fft_radix2 requires equal power-of-two lengths");
  // Bit-reversal permutation.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) {
      std::swap(re[i], re[j]);
      std::swap(im[i], im[j]);
    }
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * kPi / static_cast<double>(len);
    const double wr = std::cos(ang), wi = std::sin(ang);
    for (std::size_t i = 0; i < n; i += len) {
      double cr = 1.0, ci = 0.0;
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::size_t a = i + k, b = i + k + len / 2;
        const double tr = re[b] * cr - im[b] * ci;
        const double ti = re[b] * ci + im[b] * cr;
        re[b] = re[a] - tr;
        im[b] = im[a] - ti;
        re[a] += tr;
        im[a] += ti;
        const double ncr = cr * wr - ci * wi;
        ci = cr * wi + ci * wr;
        cr = ncr;
      }
    }
  }
}

Waveform speed_perturb(const Waveform& w, double factor) {
  if (!(factor > 0.0)) throw DomainError("speed factor must be > 0");
  if (factor == 1.0) return w;

  const long n = static_cast<long>(w.samples.size());
  const long out_len = round_half_away(static_cast<double>(n) / factor);
  Waveform out;
  out.sample_rate_hz = w.sample_rate_hz;
  out.samples.assign(static_cast<std::size_t>(out_len > 0 ? out_len : 0), 0.0);

  // When factor > 1 the source is read on a coarser grid, so the kernel
  // cutoff drops to 1/factor to anti-alias.
  const double cutoff = factor > 1.0 ? 1.0 / factor : 1.0;
  constexpr long kHalfTaps = 8;  // 16-tap kernel
  for (long i = 0; i < out_len; ++i) {
    const double pos = static_cast<double>(i) * factor;
    const long base = static_cast<long>(std::floor(pos));
    double acc = 0.0;
    for (long k = base - kHalfTaps + 1; k <= base + kHalfTaps; ++k) {
      if (k < 0 || k >= n) continue;
      const double t = pos - static_cast<double>(k);
      const double u = t / static_cast<double>(kHalfTaps);
      const double window = 0.5 * (1.0 + std::cos(kPi * u));
      acc += w.samples[static_cast<std::size_t>(k)] * cutoff *
             sinc(cutoff * t) * window;
    }
    // Windowed sinc can overshoot slightly; keep the waveform invariant.
    if (acc > 1.0) acc = 1.0;
    if (acc < -1.0) acc = -1.0;
    out.samples[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

FeatureMatrix log_mel(const Waveform& w) {
  const std::size_t n = w.samples.size();
  if (n < kWindowSamples)
    throw TooShortError("waveform shorter than one analysis window",
                        static_cast<long>(kWindowSamples));
  const std::size_t T = 1 + (n - kWindowSamples) / kHopSamples;
  const std::size_t n_bins = kFftSize / 2 + 1;
  const auto& bank = mel_filterbank();
  const auto& win = hann_window();

  FeatureMatrix f;
  f.num_frames = T;
  f.num_bins = kNumMels;
  f.values.assign(T * kNumMels, 0.0);

  std::vector<double> re(kFftSize), im(kFftSize);
  std::vector<double> power(n_bins);
  for (std::size_t t = 0; t < T; ++t) {
    const std::size_t start = t * kHopSamples;
    for (std::size_t j = 0; j < kFftSize; ++j) {
      re[j] = j < kWindowSamples ? w.samples[start + j] * win[j] : 0.0;
      im[j] = 0.0;
    }
    fft_radix2(re, im);
    for (std::size_t k = 0; k < n_bins; ++k)
      power[k] = re[k] * re[k] + im[k] * im[k];
    for (std::size_t m = 0; m < kNumMels; ++m) {
      double e = 0.0;
      for (std::size_t k = 0; k < n_bins; ++k) e += bank[m][k] * power[k];
      f.at(t, m) = std::log(e + kLogFloor);
    }
  }
  return f;
}

FeatureMatrix cmvn(const FeatureMatrix& f) {
  if (f.num_frames < 2)
    throw TooShortError("cmvn needs at least 2 frames", 2);
  FeatureMatrix out = f;
  const double inv_t = 1.0 / static_cast<double>(f.num_frames);
  for (std::size_t m = 0; m < f.num_bins; ++m) {
    double mean = 0.0;
    for (std::size_t t = 0; t < f.num_frames; ++t) mean += f.at(t, m);
    mean *= inv_t;
    double var = 0.0;
    for (std::size_t t = 0; t < f.num_frames; ++t) {
      const double d = f.at(t, m) - mean;
      var += d * d;
    }
    var *= inv_t;
    if (var < 1e-10) var = 1e-10;
    const double inv_std = 1.0 / std::sqrt(var);
    for (std::size_t t = 0; t < f.num_frames; ++t)
      out.at(t, m) = (f.at(t, m) - mean) * inv_std;
  }
  return out;
}

void write_features(const FeatureMatrix& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write feature file: " + path);
  const std::uint32_t header[2] = {static_cast<std::uint32_t>(f.num_frames),
                                   static_cast<std::uint32_t>(f.num_bins)};
  out.write(reinterpret_cast<const char*>(header), 8);
  std::vector<float> row(f.num_bins);
  for (std::size_t t = 0; t < f.num_frames; ++t) {
    for (std::size_t m = 0; m < f.num_bins; ++m)
      row[m] = static_cast<float>(f.at(t, m));
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size() * sizeof(float)));
  }
  if (!out) throw DataError("write failed: " + path);
}

FeatureMatrix read_features(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open feature file: " + path);
  std::uint32_t header[2];
  in.read(reinterpret_cast<char*>(header), 8);
  if (in.gcount() != 8) throw CorruptFileError("feature header truncated: " + path);
  FeatureMatrix f;
  f.num_frames = header[0];
  f.num_bins = header[1];
  f.values.assign(f.num_frames * f.num_bins, 0.0);
  std::vector<float> row(f.num_bins);
  for (std::size_t t = 0; t < f.num_frames; ++t) {
    in.read(reinterpret_cast<char*>(row.data()),
            static_cast<std::streamsize>(row.size() * sizeof(float)));
    if (static_cast<std::size_t>(in.gcount()) != row.size() * sizeof(float))
      throw CorruptFileError("feature data truncated: " + path);
    for (std::size_t m = 0; m < f.num_bins; ++m) f.at(t, m) = row[m];
  }
  return f;
}

}  // namespace tinyst

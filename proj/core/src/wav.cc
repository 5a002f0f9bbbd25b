// core/src/wav.cc

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

#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "tinyst/errors.h"

namespace tinyst {

namespace {

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] |
                                    (static_cast<std::uint16_t>(p[1]) << 8));
}

void put_u32(std::string& s, std::uint32_t v) {
  s += static_cast<char>(v & 0xFF);
  s += static_cast<char>((v >> 8) & 0xFF);
  s += static_cast<char>((v >> 16) & 0xFF);
  s += static_cast<char>((v >> 24) & 0xFF);
}

void put_u16(std::string& s, std::uint16_t v) {
  s += static_cast<char>(v & 0xFF);
  s += static_cast<char>((v >> 8) & 0xFF);
}

}  // namespace

Waveform read_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open wav file: " + path);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw CorruptFileError("not a RIFF/WAVE file: " + path);

  bool have_fmt = false;
  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  const unsigned char* data = nullptr;
  std::uint32_t data_size = 0;

  // Walk chunks; chunk sizes are padded to even offsets.
  std::size_t off = 12;
  while (off + 8 <= bytes.size()) {
    const unsigned char* hdr = bytes.data() + off;
    const std::uint32_t size = read_u32(hdr + 4);
    const std::size_t body = off + 8;
    if (body + size > bytes.size())
      throw CorruptFileError("truncated chunk in wav file: " + path);
    if (std::memcmp(hdr, "fmt ", 4) == 0) {
      if (size < 16) throw CorruptFileError("fmt chunk too small: " + path);
      format = read_u16(bytes.data() + body);
      channels = read_u16(bytes.data() + body + 2);
      rate = read_u32(bytes.data() + body + 4);
      bits = read_u16(bytes.data() + body + 14);
      have_fmt = true;
    } else if (std::memcmp(hdr, "data", 4) == 0) {
      data = bytes.data() + body;
      data_size = size;
    }
    off = body + size + (size & 1);
  }
  if (!have_fmt) throw CorruptFileError("missing fmt chunk: " + path);
  if (data == nullptr) throw CorruptFileError("missing data chunk: " + path);

  if (format != 1)
    throw UnsupportedFormatError("format",
                                 "PCM required, got code " + std::to_string(format));
  if (channels != 1)
    throw UnsupportedFormatError("channels",
                                 "mono required, got " + std::to_string(channels));
  if (rate != static_cast<std::uint32_t>(kSampleRateHz))
    throw UnsupportedFormatError("sample_rate", "16000 Hz required, got " +
                                                    std::to_string(rate));
  if (bits != 16)
    throw UnsupportedFormatError("bit_depth",
                                 "16-bit required, got " + std::to_string(bits));
  if (data_size % 2 != 0)
    throw CorruptFileError("odd data chunk size: " + path);

  Waveform w;
  w.sample_rate_hz = kSampleRateHz;
  const std::size_t n = data_size / 2;
  w.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::int16_t s =
        static_cast<std::int16_t>(read_u16(data + 2 * i));
    w.samples[i] = static_cast<double>(s) / 32768.0;
  }
  return w;
}

void write_wav(const Waveform& w, const std::string& path) {
  const std::uint32_t n = static_cast<std::uint32_t>(w.samples.size());
  const std::uint32_t data_size = n * 2;
  std::string out;
  out.reserve(44 + data_size);
  out += "RIFF";
  put_u32(out, 36 + data_size);
  out += "WAVE";
  out += "fmt ";
  put_u32(out, 16);
  put_u16(out, 1);  // PCM
  put_u16(out, 1);  // mono
  put_u32(out, static_cast<std::uint32_t>(kSampleRateHz));
  put_u32(out, static_cast<std::uint32_t>(kSampleRateHz) * 2);  // byte rate
  put_u16(out, 2);   // block align
  put_u16(out, 16);  // bits
  out += "data";
  put_u32(out, data_size);
  for (std::size_t i = 0; i < n; ++i) {
    double v = w.samples[i];
    if (v > 1.0) v = 1.0;
    if (v < -1.0) v = -1.0;
    long q = static_cast<long>(v < 0 ? v * 32768.0 - 0.5 : v * 32768.0 + 0.5);
    if (q > 32767) q = 32767;
    if (q < -32768) q = -32768;
    put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw DataError("cannot write wav file: " + path);
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw DataError("write failed: " + path);
}

}  // namespace tinyst

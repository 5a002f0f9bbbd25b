// core/include/tinyst/text.h

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

#ifndef TINYST_TEXT_H_
#define TINYST_TEXT_H_

#include <cstdint>
#include <string>
#include <vector>

namespace tinyst {

// Decodes UTF-8 into code points. Invalid bytes decode to U+FFFD one byte at
// a time, so decoding is total and length-monotone.
std::vector<char32_t> utf8_decode(const std::string& s);

std::string utf8_encode(const std::vector<char32_t>& cps);

// Encodes a single code point.
std::string utf8_encode_one(char32_t cp);

// Splits on a single delimiter byte, keeping empty fields.
std::vector<std::string> split(const std::string& s, char delim);

// Strips ASCII whitespace from both ends.
std::string trim(const std::string& s);

std::string to_lower_ascii(const std::string& s);

// Shortest decimal string that round-trips to the same double ("2.5", "20",
// "1e-05"). Used everywhere a real is serialized.
std::string format_double(double v);

// Fixed-point rendering with the given number of decimals, half away from
// zero ("36.41" -> "36.4" at one decimal).
std::string format_fixed(double v, int decimals);

// Strict full-string parses; return false on trailing garbage or emptiness.
bool parse_double(const std::string& s, double* out);
bool parse_long(const std::string& s, long* out);

}  // namespace tinyst

#endif  // TINYST_TEXT_H_

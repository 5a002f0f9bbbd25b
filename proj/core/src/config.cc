// core/src/config.cc

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

#include "tinyst/config.h"

#include <fstream>
#include <sstream>

#include "tinyst/errors.h"
#include "tinyst/text.h"

namespace tinyst {

Config Config::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_string(ss.str());
}

Config Config::from_string(const std::string& text) {
  Config cfg;
  long line_no = 0;
  for (const std::string& raw : split(text, '\n')) {
    ++line_no;
    std::string line = raw;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("config line has no '='", line_no);
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError("config line has empty key", line_no);
    cfg.kv_[key] = trim(line.substr(eq + 1));
  }
  return cfg;
}

bool Config::has(const std::string& key) const { return kv_.count(key) != 0; }

void Config::set(const std::string& key, const std::string& value) {
  kv_[key] = value;
}

std::string Config::get_string(const std::string& key,
                               const std::string& dflt) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? dflt : it->second;
}

double Config::get_double(const std::string& key, double dflt) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return dflt;
  double v;
  if (!parse_double(it->second, &v)) throw ConfigError(key);
  return v;
}

long Config::get_long(const std::string& key, long dflt) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return dflt;
  long v;
  if (!parse_long(it->second, &v)) throw ConfigError(key);
  return v;
}

bool Config::get_bool(const std::string& key, bool dflt) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return dflt;
  const std::string v = to_lower_ascii(it->second);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(key);
}

std::vector<double> Config::get_double_list(
    const std::string& key, const std::vector<double>& dflt) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return dflt;
  std::vector<double> out;
  for (const std::string& part : split(it->second, ',')) {
    double v;
    if (!parse_double(trim(part), &v)) throw ConfigError(key);
    out.push_back(v);
  }
  return out;
}

}  // namespace tinyst

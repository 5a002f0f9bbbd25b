// core/include/tinyst/config.h

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

#ifndef TINYST_CONFIG_H_
#define TINYST_CONFIG_H_

#include <map>
#include <string>
#include <vector>

namespace tinyst {

// Flat key=value configuration. Lines are `key = value`; `#` starts a
// comment; blank lines are ignored. Values keep internal whitespace.
class Config {
 public:
  Config() = default;

  static Config from_file(const std::string& path);
  static Config from_string(const std::string& text);

  bool has(const std::string& key) const;
  void set(const std::string& key, const std::string& value);

  // Typed getters; the defaulted forms return the default when the key is
  // absent, all forms throw ConfigError on an unparseable value.
  std::string get_string(const std::string& key, const std::string& dflt) const;
  double get_double(const std::string& key, double dflt) const;
  long get_long(const std::string& key, long dflt) const;
  bool get_bool(const std::string& key, bool dflt) const;
  // Comma-separated list of reals, e.g. "0.9,1.0,1.1".
  std::vector<double> get_double_list(const std::string& key,
                                      const std::vector<double>& dflt) const;

  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

}  // namespace tinyst

#endif  // TINYST_CONFIG_H_

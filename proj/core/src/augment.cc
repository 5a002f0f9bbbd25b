// core/src/augment.cc

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

#include "tinyst/augment.h"

#include <algorithm>
#include <set>

#include "tinyst/errors.h"
#include "tinyst/text.h"

namespace tinyst {

void AugmentPolicy::validate() const {
  for (double f : sp_factors)
    if (!(f > 0.0)) throw ConfigError("sp_factors");
  if (max_time_mask < 0) throw ConfigError("max_time_mask");
  if (max_freq_mask < 0) throw ConfigError("max_freq_mask");
  if (n_time_masks < 0) throw ConfigError("n_time_masks");
  if (n_freq_masks < 0) throw ConfigError("n_freq_masks");
}

namespace {

// Zeroes `count` stripes along one axis. axis_len is the masked dimension,
// other_len the orthogonal one; `time_axis` picks the indexing order.
void mask_axis(FeatureMatrix& f, long count, long max_width, bool time_axis,
               Rng& rng) {
  const long axis_len =
      static_cast<long>(time_axis ? f.num_frames : f.num_bins);
  const long other_len =
      static_cast<long>(time_axis ? f.num_bins : f.num_frames);
  const long bound = std::min(max_width, axis_len);
  for (long i = 0; i < count; ++i) {
    const long w = rng.uniform_int(0, bound);
    const long start = rng.uniform_int(0, axis_len - w);
    for (long a = start; a < start + w; ++a)
      for (long b = 0; b < other_len; ++b) {
        if (time_axis)
          f.at(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) = 0.0;
        else
          f.at(static_cast<std::size_t>(b), static_cast<std::size_t>(a)) = 0.0;
      }
  }
}

}  // namespace

FeatureMatrix spec_augment(const FeatureMatrix& f, const AugmentPolicy& p,
                           Rng& rng) {
  p.validate();
  if (!p.sa_enabled) throw UsageError("spec_augment called with sa_enabled=false");
  FeatureMatrix out = f;
  mask_axis(out, p.n_time_masks, p.max_time_mask, /*time_axis=*/true, rng);
  mask_axis(out, p.n_freq_masks, p.max_freq_mask, /*time_axis=*/false, rng);
  return out;
}

Manifest expand_with_speed(const Manifest& m, const AugmentPolicy& p) {
  p.validate();
  if (!p.sp_enabled)
    throw UsageError("expand_with_speed called with sp_enabled=false");
  if (p.sp_factors.empty()) throw UsageError("sp_factors is empty");

  Manifest out;
  out.split = m.split;
  out.utterances.reserve(m.utterances.size() * p.sp_factors.size());
  std::set<std::string> ids;
  for (const Utterance& u : m.utterances) {
    for (double factor : p.sp_factors) {
      Utterance copy = u;
      copy.id = u.id + "#sp" + format_double(factor);
      copy.duration_sec = u.duration_sec / factor;
      copy.duration_raw.clear();
      if (!ids.insert(copy.id).second) throw DuplicateIdError(copy.id);
      out.utterances.push_back(std::move(copy));
    }
  }
  return out;
}

void parse_sp_suffix(const std::string& id, std::string* base_id,
                     double* factor) {
  const std::size_t pos = id.rfind("#sp");
  if (pos != std::string::npos) {
    double f;
    if (parse_double(id.substr(pos + 3), &f) && f > 0.0) {
      *base_id = id.substr(0, pos);
      *factor = f;
      return;
    }
  }
  *base_id = id;
  *factor = 1.0;
}

}  // namespace tinyst

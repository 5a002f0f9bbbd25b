// core/include/tinyst/augment.h

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

#ifndef TINYST_AUGMENT_H_
#define TINYST_AUGMENT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "tinyst/corpus.h"
#include "tinyst/dsp.h"
#include "tinyst/rng.h"

namespace tinyst {

struct AugmentPolicy {
  bool sp_enabled = false;
  std::vector<double> sp_factors = {0.9, 1.0, 1.1};
  bool sa_enabled = false;
  long max_time_mask = 30;  // frames
  long max_freq_mask = 30;  // mel bins
  long n_time_masks = 2;
  long n_freq_masks = 2;
  std::uint64_t seed = 0;

  // Throws ConfigError on a non-positive factor, negative mask bound, or
  // negative mask count.
  void validate() const;
};

// Masks n_time_masks time stripes and n_freq_masks frequency stripes with
// the fill value 0.0 (features are assumed normalized, so 0 is the mean).
// For each mask: width ~ Uniform{0..min(max, dim)}, start ~ Uniform{0..dim-
// width}, both inclusive. Cells outside the stripes are bit-identical to
// the input. Pure given the RNG state; callers wanting reproducibility
// derive the stream from (seed, utterance id, epoch).
FeatureMatrix spec_augment(const FeatureMatrix& f, const AugmentPolicy& p,
                           Rng& rng);

// One copy of every utterance per speed factor, id suffixed with
// "#sp<factor>" (shortest round-trip rendering, e.g. "#sp0.9", "#sp1").
// Listed duration is rescaled to duration/factor; the audio path is left
// untouched because perturbation happens at feature-extraction time.
// A generated id colliding with anything -> DuplicateIdError.
Manifest expand_with_speed(const Manifest& m, const AugmentPolicy& p);

// Splits an expanded id back into base id and factor. Ids without the
// "#sp" suffix report factor 1.0 and themselves as base.
void parse_sp_suffix(const std::string& id, std::string* base_id,
                     double* factor);

}  // namespace tinyst

#endif  // TINYST_AUGMENT_H_

/*
 *  Copyright (c) 2026 the ehb authors. All rights reserved.
 *
 *  Use of this source code is governed by a BSD-style license
 *  that can be found in the LICENSE file in the root of the source tree.
 */

#ifndef EHB_SYNTHETIC_H_
#define EHB_SYNTHETIC_H_

#include <cstdint>
#include <string>

#include "ehb/frame.h"

namespace ehb {

enum class Pattern : uint8_t { kGradient, kChecker, kMixed };

Pattern pattern_from_name(const std::string &name);

// Test-content generator: a fixed base pattern translated by t*(dx,dy) per
// frame with wraparound, plus seeded iid Gaussian noise. Output is fully
// determined by these fields (see prng.h for the pinned generator).
struct SyntheticSpec {
  uint64_t seed = 1;
  int width = 64;
  int height = 64;
  int n_frames = 33;
  int motion_dx = 1;
  int motion_dy = 0;
  double noise_sigma = 2.0;
  Pattern pattern = Pattern::kMixed;
};

Sequence gen_synthetic(const SyntheticSpec &spec);

}  // namespace ehb

#endif  // EHB_SYNTHETIC_H_

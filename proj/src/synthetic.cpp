/*
 *  Copyright (c) 2026 the ehb authors. All rights reserved.
 *
 *  Use of this source code is governed by a BSD-style license
 *  that can be found in the LICENSE file in the root of the source tree.
 */

#include "ehb/synthetic.h"

#include "ehb/prng.h"

namespace ehb {

Pattern pattern_from_name(const std::string &name) {
  if (name == "gradient") return Pattern::kGradient;
  if (name == "checker") return Pattern::kChecker;
  if (name == "mixed") return Pattern::kMixed;
  throw Error(ErrorKind::kBadArgument, "unknown pattern: " + name);
}

namespace {

// Fixed per-pixel texture for the mixed pattern. It translates with the
// pattern (unlike the temporal noise), which anchors motion search and
// gives the codec persistent detail to carry through the chain.
int texture_sample(int x, int y) {
  uint64_t state = (uint64_t(uint32_t(x)) << 24) ^ uint64_t(uint32_t(y)) ^
                   0x7E57C0DE5EEDull;
  uint64_t h = splitmix64(state);
  return int(h % 49) - 24;
}

int base_sample(Pattern pattern, int x, int y, int w, int h) {
  int grad = ((x * 255) / (w - 1) + (y * 255) / (h - 1) + 1) / 2;
  int chk = (((x >> 3) ^ (y >> 3)) & 1) ? 200 : 55;
  switch (pattern) {
    case Pattern::kGradient: return grad;
    case Pattern::kChecker:  return chk;
    default: {
      // texture only on the bright squares: half the scene carries
      // persistent detail, half is flat
      int v = (grad + chk + 1) / 2;
      if ((((x >> 3) ^ (y >> 3)) & 1) != 0) v += texture_sample(x, y);
      return v < 0 ? 0 : v > 255 ? 255 : v;
    }
  }
}

int wrap(int v, int n) {
  int r = v % n;
  return r < 0 ? r + n : r;
}

}  // namespace

Sequence gen_synthetic(const SyntheticSpec &spec) {
  if (spec.width < 32 || spec.height < 32)
    throw Error(ErrorKind::kBadArgument, "synthetic frames must be >= 32x32");
  if (spec.n_frames < 1)
    throw Error(ErrorKind::kBadArgument, "need at least one frame");
  if (spec.noise_sigma < 0.0)
    throw Error(ErrorKind::kBadArgument, "noise sigma must be >= 0");

  Prng rng(spec.seed);
  Sequence seq;
  seq.frames.reserve(spec.n_frames);
  for (int t = 0; t < spec.n_frames; ++t) {
    Frame f(spec.width, spec.height);
    for (int y = 0; y < spec.height; ++y)
      for (int x = 0; x < spec.width; ++x) {
        int sx = wrap(x - t * spec.motion_dx, spec.width);
        int sy = wrap(y - t * spec.motion_dy, spec.height);
        int v = base_sample(spec.pattern, sx, sy, spec.width, spec.height);
        if (spec.noise_sigma > 0.0)
          v += int(round_half_away(rng.gaussian() * spec.noise_sigma));
        f.set(x, y, uint8_t(v < 0 ? 0 : v > 255 ? 255 : v));
      }
    seq.frames.push_back(std::move(f));
  }
  return seq;
}

}  // namespace ehb

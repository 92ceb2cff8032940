/*
 *  Copyright (c) 2026 the ehb authors. All rights reserved.
 *
 *  Use of this source code is governed by a BSD-style license
 *  that can be found in the LICENSE file in the root of the source tree.
 */

#include <doctest.h>

#include "ehb/synthetic.h"

using namespace ehb;

TEST_CASE("pure translation wraps around") {
  SyntheticSpec spec;
  spec.seed = 3;
  spec.width = 48;
  spec.height = 32;
  spec.n_frames = 4;
  spec.motion_dx = 1;
  spec.motion_dy = 0;
  spec.noise_sigma = 0.0;
  spec.pattern = Pattern::kChecker;
  Sequence seq = gen_synthetic(spec);
  REQUIRE(seq.frames.size() == 4);
  for (int y = 0; y < 32; ++y)
    for (int x = 0; x < 48; ++x)
      CHECK(seq.frames[1].at(x, y) ==
            seq.frames[0].at((x - 1 + 48) % 48, y));
}

TEST_CASE("same spec twice gives identical sequences") {
  SyntheticSpec spec;
  spec.seed = 77;
  spec.noise_sigma = 3.0;
  spec.n_frames = 5;
  Sequence a = gen_synthetic(spec);
  Sequence b = gen_synthetic(spec);
  for (size_t i = 0; i < a.frames.size(); ++i)
    CHECK(a.frames[i].luma() == b.frames[i].luma());
}

TEST_CASE("zero motion and zero noise means identical frames") {
  SyntheticSpec spec;
  spec.motion_dx = 0;
  spec.motion_dy = 0;
  spec.noise_sigma = 0.0;
  spec.n_frames = 3;
  spec.pattern = Pattern::kGradient;
  Sequence seq = gen_synthetic(spec);
  CHECK(seq.frames[1].luma() == seq.frames[0].luma());
  CHECK(seq.frames[2].luma() == seq.frames[0].luma());
}

TEST_CASE("dimension and pattern guards") {
  SyntheticSpec spec;
  spec.width = 16;
  CHECK_THROWS_AS(gen_synthetic(spec), Error);
  CHECK_THROWS_AS(pattern_from_name("plasma"), Error);
  CHECK(pattern_from_name("mixed") == Pattern::kMixed);
}

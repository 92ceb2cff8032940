/*
 *  Copyright (c) 2026 the ehb authors. All rights reserved.
 *
 *  Use of this source code is governed by a BSD-style license
 *  that can be found in the LICENSE file in the root of the source tree.
 */

#include <doctest.h>

#include <limits>

#include "ehb/motion.h"
#include "ehb/prng.h"

using namespace ehb;

namespace {

Frame random_frame(Prng &rng, int w, int h) {
  Frame f(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) f.set(x, y, uint8_t(rng.below(256)));
  return f;
}

Block16 block_at(const Frame &f, int x, int y) {
  Block16 b;
  for (int sy = 0; sy < 16; ++sy)
    for (int sx = 0; sx < 16; ++sx)
      b[size_t(sy) * 16 + sx] = f.at_clamped(x + sx, y + sy);
  return b;
}

// Plain exhaustive search with the tie-break rules applied directly,
// independent of the production scan order and early exits.
SearchResult oracle_search(const Block16 &cur, const Frame &ref, int ox,
                           int oy, int range) {
  SearchResult best;
  best.sad = std::numeric_limits<uint32_t>::max();
  int best_cost = std::numeric_limits<int>::max();
  for (int dy = -range; dy <= range; ++dy)
    for (int dx = -range; dx <= range; ++dx) {
      uint32_t sad = 0;
      for (int sy = 0; sy < 16; ++sy)
        for (int sx = 0; sx < 16; ++sx)
          sad += uint32_t(std::abs(
              int(cur[size_t(sy) * 16 + sx]) -
              int(ref.at_clamped(ox + dx + sx, oy + dy + sy))));
      int cost = std::abs(dx) + std::abs(dy);
      bool better = sad < best.sad;
      if (sad == best.sad) {
        if (cost != best_cost)
          better = cost < best_cost;
        else if (dy != best.mv.dy)
          better = dy < best.mv.dy;
        else
          better = dx < best.mv.dx;
      }
      if (better) {
        best.sad = sad;
        best.mv = {dx, dy};
        best_cost = cost;
      }
    }
  return best;
}

}  // namespace

TEST_CASE("motion_search finds a pure translation exactly") {
  Prng rng(3);
  Frame ref = random_frame(rng, 64, 64);
  // current block sits at (24, 24); its content lives at (27, 22) in ref
  Block16 cur = block_at(ref, 27, 22);
  SearchResult r = motion_search(cur, ref, 24, 24, 8);
  CHECK(r.mv == MotionVector{3, -2});
  CHECK(r.sad == 0);
}

TEST_CASE("motion_search tie-breaks to the zero vector") {
  Prng rng(4);
  Frame ref = random_frame(rng, 64, 64);
  Block16 cur = block_at(ref, 16, 16);
  SearchResult r = motion_search(cur, ref, 16, 16, 8);
  CHECK(r.mv == MotionVector{0, 0});
  CHECK(r.sad == 0);
}

TEST_CASE("constant reference: every candidate ties, zero vector wins") {
  Prng rng(5);
  Frame ref(64, 64, 77);
  Block16 cur;
  uint32_t expected = 0;
  for (auto &v : cur) {
    v = uint8_t(rng.below(256));
    expected += uint32_t(std::abs(int(v) - 77));
  }
  SearchResult r = motion_search(cur, ref, 24, 24, 8);
  CHECK(r.mv == MotionVector{0, 0});
  CHECK(r.sad == expected);
}

TEST_CASE("motion_search equals the exhaustive oracle on 100 random pairs") {
  Prng rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    Frame ref = random_frame(rng, 48, 48);
    Frame cur_frame =
        rng.below(2) ? random_frame(rng, 48, 48) : ref;  // mix in tie cases
    int ox = int(rng.below(3)) * 16;
    int oy = int(rng.below(3)) * 16;
    Block16 cur = block_at(cur_frame, ox, oy);
    int range = 1 + int(rng.below(16));
    SearchResult got = motion_search(cur, ref, ox, oy, range);
    SearchResult want = oracle_search(cur, ref, ox, oy, range);
    CHECK(got.mv == want.mv);
    CHECK(got.sad == want.sad);
  }
}

TEST_CASE("motion_compensate basics") {
  Prng rng(8);
  Frame ref = random_frame(rng, 64, 64);
  CHECK(motion_compensate(ref, {0, 0}, 16, 16) == block_at(ref, 16, 16));
  CHECK(motion_compensate(ref, {3, -2}, 24, 24) == block_at(ref, 27, 22));

  // way outside: everything clamps to the top-left corner sample column/row
  Block16 far = motion_compensate(ref, {-16, -16}, -32, -32);
  for (auto v : far) CHECK(v == ref.at(0, 0));
}

TEST_CASE("predict_mv is a component-wise median with zero fallback") {
  CHECK(predict_mv(nullptr, nullptr) == MotionVector{0, 0});
  MotionVector left{4, 2};
  CHECK(predict_mv(&left, nullptr) == MotionVector{0, 0});
  MotionVector above{6, 2};
  CHECK(predict_mv(&left, &above) == MotionVector{4, 2});
  MotionVector neg{-3, -5}, pos{2, 4};
  CHECK(predict_mv(&neg, &pos) == MotionVector{0, 0});
}

TEST_CASE("predict_multi_ref picks the zero-distortion adjacent candidate") {
  Prng rng(9);
  Frame ref = random_frame(rng, 64, 64);
  Block16 cur = block_at(ref, 16, 16);
  for (double lambda : {0.0, 1.0, 1e6}) {
    BlockPrediction bp = predict_multi_ref(cur, ref, nullptr, lambda, 16, 16);
    CHECK(bp.mode == PredMode::kAdj);
    CHECK(bp.mv_adj == MotionVector{0, 0});
    CHECK(block_sse(cur, bp.prediction) == 0.0);
  }
}

TEST_CASE("huge lambda with a useless reference prefers INTRA_DC") {
  Prng rng(10);
  Frame noise = random_frame(rng, 64, 64);
  Block16 cur;
  for (auto &v : cur) v = uint8_t(rng.below(256));

  double lambda = 1e7;
  BlockPrediction bp =
      predict_multi_ref(cur, noise, nullptr, lambda, 16, 16, {}, {}, 128);

  // verify against hand-computed candidate costs
  SearchResult adj = motion_search(cur, noise, 16, 16, 16);
  Block16 adj_pred = motion_compensate(noise, adj.mv, 16, 16);
  double cost_adj =
      block_sse(cur, adj_pred) +
      lambda * mode_rate_estimate(PredMode::kAdj,
                                  {adj.mv.dx, adj.mv.dy}, {});
  Block16 dc_pred;
  dc_pred.fill(128);
  double cost_dc = block_sse(cur, dc_pred) + lambda * 10.0;
  REQUIRE(cost_dc < cost_adj);  // the premise of the example
  CHECK(bp.mode == PredMode::kIntraDc);
  CHECK(bp.cost == doctest::Approx(cost_dc));
}

TEST_CASE("AVG wins when the block is the exact mean of both references") {
  Frame adj(64, 64, 100);
  Frame key(64, 64, 200);
  Block16 cur;
  cur.fill(150);
  BlockPrediction bp = predict_multi_ref(cur, adj, &key, 1.0, 16, 16);
  CHECK(bp.mode == PredMode::kAvg);
  CHECK(block_sse(cur, bp.prediction) == 0.0);
}

TEST_CASE("chosen mode cost never exceeds any candidate cost") {
  Prng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    Frame adj = random_frame(rng, 48, 48);
    Frame key = random_frame(rng, 48, 48);
    Block16 cur;
    for (auto &v : cur) v = uint8_t(rng.below(256));
    double lambda = rng.uniform(0.0, 100.0);
    BlockPrediction bp = predict_multi_ref(cur, adj, &key, lambda, 16, 16);

    SearchResult sa = motion_search(cur, adj, 16, 16, 16);
    SearchResult sk = motion_search(cur, key, 16, 16, 16);
    Block16 pa = motion_compensate(adj, sa.mv, 16, 16);
    Block16 pk = motion_compensate(key, sk.mv, 16, 16);
    Block16 pavg;
    for (size_t i = 0; i < pavg.size(); ++i)
      pavg[i] = uint8_t((int(pa[i]) + int(pk[i]) + 1) / 2);
    Block16 pdc;
    pdc.fill(128);
    MotionVector ra{sa.mv.dx, sa.mv.dy}, rk{sk.mv.dx, sk.mv.dy};
    double costs[4] = {
        block_sse(cur, pa) +
            lambda * mode_rate_estimate(PredMode::kAdj, ra, {}),
        block_sse(cur, pk) +
            lambda * mode_rate_estimate(PredMode::kKey, {}, rk),
        block_sse(cur, pavg) +
            lambda * mode_rate_estimate(PredMode::kAvg, ra, rk),
        block_sse(cur, pdc) +
            lambda * mode_rate_estimate(PredMode::kIntraDc, {}, {}),
    };
    for (double c : costs) CHECK(bp.cost <= c + 1e-9);
  }
}

TEST_CASE("identical references collapse to ADJ by tie-break") {
  Prng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    Frame ref = random_frame(rng, 48, 48);
    Block16 cur;
    for (auto &v : cur) v = uint8_t(rng.below(256));
    double lambda = rng.uniform(0.0, 50.0);
    BlockPrediction bp = predict_multi_ref(cur, ref, &ref, lambda, 16, 16);
    // KEY and AVG duplicate ADJ exactly here, so strict improvement never
    // lets them in
    CHECK(bp.mode != PredMode::kKey);
    CHECK(bp.mode != PredMode::kAvg);
  }
}

TEST_CASE("lower lambda never raises the chosen mode's distortion") {
  Prng rng(14);
  for (int trial = 0; trial < 10; ++trial) {
    Frame adj = random_frame(rng, 48, 48);
    Frame key = random_frame(rng, 48, 48);
    Block16 cur;
    for (auto &v : cur) v = uint8_t(rng.below(256));
    double prev_sse = std::numeric_limits<double>::infinity();
    for (double lambda : {1e6, 1e4, 100.0, 1.0, 0.0}) {
      BlockPrediction bp = predict_multi_ref(cur, adj, &key, lambda, 16, 16);
      double sse = block_sse(cur, bp.prediction);
      CHECK(sse <= prev_sse + 1e-9);
      prev_sse = sse;
    }
  }
}

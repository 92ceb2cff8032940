/*
 *  Copyright (c) 2026 the ehb authors. All rights reserved.
 *
 *  Use of this source code is governed by a BSD-style license
 *  that can be found in the LICENSE file in the root of the source tree.
 */

#ifndef EHB_MOTION_H_
#define EHB_MOTION_H_

#include <array>
#include <cstdint>
#include <vector>

#include "ehb/frame.h"

namespace ehb {

inline constexpr int kBlockSize = 16;     // motion block
inline constexpr int kSearchRange = 16;   // full-pel, full search

using Block16 = std::array<uint8_t, kBlockSize * kBlockSize>;

struct MotionVector {
  int dx = 0;
  int dy = 0;

  bool operator==(const MotionVector &o) const = default;
};

// Component-wise median of {left, above, (0,0)}; absent predictors count
// as zero.
MotionVector predict_mv(const MotionVector *left, const MotionVector *above);

// Full search over (+-range)^2 minimizing SAD. Ties prefer smaller
// |dx|+|dy|, then smaller dy, then smaller dx. Reference samples outside
// the frame are edge-clamped.
struct SearchResult {
  MotionVector mv;
  uint32_t sad = 0;
};

SearchResult motion_search(const Block16 &cur, const Frame &ref, int origin_x,
                           int origin_y, int range);

// 16x16 fetch at origin + mv with edge clamping.
Block16 motion_compensate(const Frame &ref, MotionVector mv, int origin_x,
                          int origin_y);

enum class PredMode : uint8_t { kAdj = 0, kKey = 1, kAvg = 2, kIntraDc = 3 };

const char *pred_mode_name(PredMode mode);

struct BlockPrediction {
  PredMode mode = PredMode::kIntraDc;
  MotionVector mv_adj;   // valid for kAdj / kAvg
  MotionVector mv_key;   // valid for kKey / kAvg
  uint8_t dc = 128;      // valid for kIntraDc
  Block16 prediction{};
  double cost = 0.0;     // sse + lambda * estimated bits of the chosen mode
};

// Estimated bits for a mode: 2 header bits plus the exp-Golomb lengths of
// the zigzag-mapped motion residual components; INTRA_DC pays 8 bits for
// its transmitted mean.
int mode_rate_estimate(PredMode mode, MotionVector mv_adj_res,
                       MotionVector mv_key_res);

// Per-block mode decision across ADJ / KEY / AVG / INTRA_DC candidates by
// minimum sse + lambda_eff * rate; ties resolved in that mode order.
// key_ref may be null (only ADJ and INTRA_DC compete). mv predictors feed
// the rate estimate; intra_dc is the caller-supplied fallback constant.
BlockPrediction predict_multi_ref(const Block16 &cur, const Frame &adj_ref,
                                  const Frame *key_ref, double lambda_eff,
                                  int origin_x, int origin_y,
                                  MotionVector mv_pred_adj = {},
                                  MotionVector mv_pred_key = {},
                                  uint8_t intra_dc = 128);

// One frame's per-block predictions in raster order.
struct MotionField {
  int blocks_x = 0;
  int blocks_y = 0;
  std::vector<BlockPrediction> blocks;

  const BlockPrediction &at(int bx, int by) const {
    return blocks[size_t(by) * blocks_x + bx];
  }
};

uint32_t block_sad(const Block16 &a, const Block16 &b);
double block_sse(const Block16 &a, const Block16 &b);

}  // namespace ehb

#endif  // EHB_MOTION_H_

/*
 *  Copyright (c) 2026 the ehb authors. All rights reserved.
 *
 *  Use of this source code is governed by a BSD-style license
 *  that can be found in the LICENSE file in the root of the source tree.
 */

#ifndef EHB_SYNTAX_H_
#define EHB_SYNTAX_H_

#include <array>
#include <cstdint>
#include <vector>

#include "ehb/range_coder.h"
#include "ehb/transform.h"

namespace ehb {

// Zigzag scan order for 8x8 blocks: raster index per scan position.
extern const std::array<uint8_t, 64> kZigzag;

// Significance context band for a zigzag scan position:
// 0 | 1..5 | 6..20 | 21..63.
int sig_band(int scan_pos);

// Adaptive contexts for one frame. Reset at every frame start so a frame
// payload is decodable given only its reference reconstructions.
struct ContextSet {
  std::array<BinProb, 3> mode;      // mode decision tree bins
  std::array<BinProb, 2> mv_zero;   // per component: residual == 0
  std::array<BinProb, 2> mv_gt1;    // per component: residual magnitude > 1
  std::array<BinProb, 4> sig;       // coefficient significance, per band
  std::array<BinProb, 2> level;     // magnitude > 1, selected by history
  std::array<BinProb, 2> last;      // last-significant flag, DC-ish vs rest
  BinProb zero_block;               // all-64-levels-zero flag
  std::array<BinProb, 2> step_idx;  // per-block quantizer multiplier index

  void reset() { *this = ContextSet(); }

  // FNV-1a over all probability states, for encoder/decoder lockstep checks.
  uint64_t state_hash() const;
};

// Order-0 exp-Golomb, all bits bypass-coded.
void encode_ue(RangeEncoder &enc, uint32_t value);
uint32_t decode_ue(RangeDecoder &dec);

// The bare binarization (prefix zeros + value+1), high bit first.
std::vector<int> ue_binarize(uint32_t value);

// Zigzag signed mapping (0,-1,1,-2,2,... -> 0,1,2,3,4,...) then ue.
void encode_se(RangeEncoder &enc, int32_t value);
int32_t decode_se(RangeDecoder &dec);

uint32_t se_to_ue(int32_t v);
int32_t ue_to_se(uint32_t u);

// Code length in bits of the order-0 exp-Golomb word for value.
int ue_code_length(uint32_t value);

// Quantized 8x8 coefficient block: an all-zero flag, then zigzag-scanned
// significance / magnitude / sign / last-flag syntax.
void encode_coef_block(RangeEncoder &enc, ContextSet &ctxs,
                       const LevelBlock &levels);
LevelBlock decode_coef_block(RangeDecoder &dec, ContextSet &ctxs);

// Motion vector residual, one component at a time: zero flag, gt1 flag,
// exp-Golomb remainder in bypass.
void encode_mv_component(RangeEncoder &enc, ContextSet &ctxs, int comp,
                         int32_t residual);
int32_t decode_mv_component(RangeDecoder &dec, ContextSet &ctxs, int comp);

}  // namespace ehb

#endif  // EHB_SYNTAX_H_

/*
 *  Copyright (c) 2026 the ehb authors. All rights reserved.
 *
 *  Use of this source code is governed by a BSD-style license
 *  that can be found in the LICENSE file in the root of the source tree.
 */

#include "ehb/syntax.h"

namespace ehb {

const std::array<uint8_t, 64> kZigzag = {
    0,  1,  8,  16, 9,  2,  3,  10, 17, 24, 32, 25, 18, 11, 4,  5,
    12, 19, 26, 33, 40, 48, 41, 34, 27, 20, 13, 6,  7,  14, 21, 28,
    35, 42, 49, 56, 57, 50, 43, 36, 29, 22, 15, 23, 30, 37, 44, 51,
    58, 59, 52, 45, 38, 31, 39, 46, 53, 60, 61, 54, 47, 55, 62, 63};

int sig_band(int scan_pos) {
  if (scan_pos == 0) return 0;
  if (scan_pos <= 5) return 1;
  if (scan_pos <= 20) return 2;
  return 3;
}

uint64_t ContextSet::state_hash() const {
  uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](uint16_t p) {
    h ^= p;
    h *= 0x100000001b3ull;
  };
  for (const auto &c : mode) mix(c.p);
  for (const auto &c : mv_zero) mix(c.p);
  for (const auto &c : mv_gt1) mix(c.p);
  for (const auto &c : sig) mix(c.p);
  for (const auto &c : level) mix(c.p);
  for (const auto &c : last) mix(c.p);
  mix(zero_block.p);
  for (const auto &c : step_idx) mix(c.p);
  return h;
}

std::vector<int> ue_binarize(uint32_t value) {
  uint64_t v = uint64_t(value) + 1;
  int nbits = 0;
  while ((v >> nbits) != 0) ++nbits;
  std::vector<int> bits;
  for (int i = 0; i < nbits - 1; ++i) bits.push_back(0);
  for (int i = nbits - 1; i >= 0; --i) bits.push_back(int((v >> i) & 1));
  return bits;
}

void encode_ue(RangeEncoder &enc, uint32_t value) {
  uint64_t v = uint64_t(value) + 1;
  int nbits = 0;
  while ((v >> nbits) != 0) ++nbits;
  for (int i = 0; i < nbits - 1; ++i) enc.encode_bypass(0);
  for (int i = nbits - 1; i >= 0; --i) enc.encode_bypass((v >> i) & 1);
}

uint32_t decode_ue(RangeDecoder &dec) {
  int zeros = 0;
  while (dec.decode_bypass() == 0) {
    if (++zeros > 31)
      throw Error(ErrorKind::kMalformed, "overlong exp-Golomb code");
  }
  uint64_t v = 1;
  for (int i = 0; i < zeros; ++i) v = (v << 1) | dec.decode_bypass();
  return static_cast<uint32_t>(v - 1);
}

uint32_t se_to_ue(int32_t v) {
  return v > 0 ? uint32_t(v) * 2 : uint32_t(-int64_t(v)) * 2 - (v < 0 ? 1 : 0);
}

int32_t ue_to_se(uint32_t u) {
  return (u & 1) ? -int32_t((u + 1) / 2) : int32_t(u / 2);
}

void encode_se(RangeEncoder &enc, int32_t value) {
  encode_ue(enc, se_to_ue(value));
}

int32_t decode_se(RangeDecoder &dec) { return ue_to_se(decode_ue(dec)); }

int ue_code_length(uint32_t value) {
  uint64_t v = uint64_t(value) + 1;
  int nbits = 0;
  while ((v >> nbits) != 0) ++nbits;
  return 2 * nbits - 1;
}

void encode_coef_block(RangeEncoder &enc, ContextSet &ctxs,
                       const LevelBlock &levels) {
  int last_sig = -1;
  for (int s = 0; s < 64; ++s)
    if (levels[kZigzag[s]] != 0) last_sig = s;

  enc.encode_bit(ctxs.zero_block, last_sig < 0 ? 0 : 1);
  if (last_sig < 0) return;

  int level_ctx = 0;
  for (int s = 0; s <= last_sig; ++s) {
    int32_t level = levels[kZigzag[s]];
    enc.encode_bit(ctxs.sig[sig_band(s)], level != 0 ? 1 : 0);
    if (level == 0) continue;
    uint32_t mag = level < 0 ? uint32_t(-int64_t(level)) : uint32_t(level);
    enc.encode_bit(ctxs.level[level_ctx], mag > 1 ? 1 : 0);
    if (mag > 1) {
      encode_ue(enc, mag - 2);
      level_ctx = 1;
    }
    enc.encode_bypass(level < 0 ? 1 : 0);
    enc.encode_bit(ctxs.last[s > 5 ? 1 : 0], s == last_sig ? 1 : 0);
  }
}

LevelBlock decode_coef_block(RangeDecoder &dec, ContextSet &ctxs) {
  LevelBlock levels{};
  if (dec.decode_bit(ctxs.zero_block) == 0) return levels;

  int level_ctx = 0;
  for (int s = 0; s < 64; ++s) {
    if (dec.decode_bit(ctxs.sig[sig_band(s)]) == 0) continue;
    uint32_t mag = 1;
    if (dec.decode_bit(ctxs.level[level_ctx]) != 0) {
      uint32_t rem = decode_ue(dec);
      if (rem > uint32_t(INT32_MAX) - 2)
        throw Error(ErrorKind::kMalformed, "coefficient level out of range");
      mag = rem + 2;
      level_ctx = 1;
    }
    int sign = dec.decode_bypass();
    levels[kZigzag[s]] = sign ? -int32_t(mag) : int32_t(mag);
    if (dec.decode_bit(ctxs.last[s > 5 ? 1 : 0]) != 0) break;
  }
  return levels;
}

void encode_mv_component(RangeEncoder &enc, ContextSet &ctxs, int comp,
                         int32_t residual) {
  // The signed-to-unsigned zigzag index carries the sign, so no separate
  // sign bin is needed.
  uint32_t u = se_to_ue(residual);
  enc.encode_bit(ctxs.mv_zero[comp], u == 0 ? 0 : 1);
  if (u == 0) return;
  enc.encode_bit(ctxs.mv_gt1[comp], u == 1 ? 0 : 1);
  if (u > 1) encode_ue(enc, u - 2);
}

int32_t decode_mv_component(RangeDecoder &dec, ContextSet &ctxs, int comp) {
  if (dec.decode_bit(ctxs.mv_zero[comp]) == 0) return 0;
  uint32_t u;
  if (dec.decode_bit(ctxs.mv_gt1[comp]) == 0) {
    u = 1;
  } else {
    uint32_t rem = decode_ue(dec);
    if (rem > (1u << 20))
      throw Error(ErrorKind::kMalformed, "motion residual out of range");
    u = rem + 2;
  }
  return ue_to_se(u);
}

}  // namespace ehb

/*
 *  Copyright (c) 2026 the ehb authors. All rights reserved.
 *
 *  Use of this source code is governed by a BSD-style license
 *  that can be found in the LICENSE file in the root of the source tree.
 */

#ifndef EHB_RANGE_CODER_H_
#define EHB_RANGE_CODER_H_

#include <cstdint>
#include <span>
#include <vector>

#include "ehb/common.h"

namespace ehb {

// Adaptive binary probability state. p is the 12-bit probability that the
// next bit is 0, kept in [1, 4095] so neither symbol ever has zero width.
struct BinProb {
  uint16_t p = 2048;

  void adapt(int bit) {
    int target = bit == 0 ? 4095 : 1;
    int next = p + ((target - p) >> 5);
    if (next < 1) next = 1;
    if (next > 4095) next = 4095;
    p = static_cast<uint16_t>(next);
  }
};

inline constexpr uint16_t kBypassProb = 2048;  // fixed, never adapted

// Byte-oriented renormalizing range coder (32-bit low/range). Carries are
// propagated into the already-emitted bytes; flush appends exactly 4 bytes.
class RangeEncoder {
 public:
  void encode_bit(BinProb &ctx, int bit) {
    code(ctx.p, bit);
    ctx.adapt(bit);
    ++bins_;
  }

  void encode_bypass(int bit) {
    code(kBypassProb, bit);
    ++bins_;
  }

  uint64_t bins_coded() const { return bins_; }

  // Terminates the stream and returns the payload. The encoder must not be
  // reused afterwards.
  std::vector<uint8_t> finish();

  size_t bytes_pending() const { return out_.size(); }

 private:
  void code(uint16_t p, int bit);

  std::vector<uint8_t> out_;
  uint32_t low_ = 0;
  uint32_t range_ = 0xFFFFFFFFu;
  uint64_t bins_ = 0;
};

class RangeDecoder {
 public:
  explicit RangeDecoder(std::span<const uint8_t> bytes);

  int decode_bit(BinProb &ctx) {
    int bit = decode(ctx.p);
    ctx.adapt(bit);
    return bit;
  }

  int decode_bypass() { return decode(kBypassProb); }

 private:
  int decode(uint16_t p);
  uint8_t next_byte();

  std::span<const uint8_t> bytes_;
  size_t pos_ = 0;
  uint32_t code_ = 0;
  uint32_t range_ = 0xFFFFFFFFu;
};

}  // namespace ehb

#endif  // EHB_RANGE_CODER_H_

/*
 *  Copyright (c) 2026 the ehb authors. All rights reserved.
 *
 *  Use of this source code is governed by a BSD-style license
 *  that can be found in the LICENSE file in the root of the source tree.
 */

#include "ehb/range_coder.h"

namespace ehb {

namespace {
constexpr uint32_t kTopValue = 1u << 24;
}

void RangeEncoder::code(uint16_t p, int bit) {
  uint32_t split = (range_ >> 12) * p;
  if (bit == 0) {
    range_ = split;
  } else {
    uint32_t nl = low_ + split;
    if (nl < low_) {
      // carry into the emitted bytes
      for (size_t i = out_.size(); i-- > 0;)
        if (++out_[i] != 0) break;
    }
    low_ = nl;
    range_ -= split;
  }
  while (range_ < kTopValue) {
    out_.push_back(static_cast<uint8_t>(low_ >> 24));
    low_ <<= 8;
    range_ <<= 8;
  }
}

std::vector<uint8_t> RangeEncoder::finish() {
  for (int i = 0; i < 4; ++i) {
    out_.push_back(static_cast<uint8_t>(low_ >> 24));
    low_ <<= 8;
  }
  return std::move(out_);
}

RangeDecoder::RangeDecoder(std::span<const uint8_t> bytes) : bytes_(bytes) {
  for (int i = 0; i < 4; ++i) code_ = (code_ << 8) | next_byte();
}

uint8_t RangeDecoder::next_byte() {
  if (pos_ >= bytes_.size())
    throw Error(ErrorKind::kTruncated, "range decoder ran past end of payload");
  return bytes_[pos_++];
}

int RangeDecoder::decode(uint16_t p) {
  uint32_t split = (range_ >> 12) * p;
  int bit;
  if (code_ < split) {
    bit = 0;
    range_ = split;
  } else {
    bit = 1;
    code_ -= split;
    range_ -= split;
  }
  while (range_ < kTopValue) {
    code_ = (code_ << 8) | next_byte();
    range_ <<= 8;
  }
  return bit;
}

}  // namespace ehb

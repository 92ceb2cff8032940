/*
 *  Copyright (c) 2026 the ehb authors. All rights reserved.
 *
 *  Use of this source code is governed by a BSD-style license
 *  that can be found in the LICENSE file in the root of the source tree.
 */

#ifndef EHB_FRAME_H_
#define EHB_FRAME_H_

#include <cstdint>
#include <vector>

#include "ehb/common.h"

namespace ehb {

// Planar 8-bit picture. Luma is mandatory; 4:2:0 chroma is optional and
// carried through file I/O only -- the codec and all metrics operate on luma.
class Frame {
 public:
  Frame() = default;
  Frame(int width, int height, uint8_t fill = 0);
  Frame(int width, int height, std::vector<uint8_t> luma);

  int width() const { return width_; }
  int height() const { return height_; }

  uint8_t at(int x, int y) const { return luma_[size_t(y) * width_ + x]; }
  void set(int x, int y, uint8_t v) { luma_[size_t(y) * width_ + x] = v; }

  // Edge-clamped fetch: coordinates outside the frame read the nearest
  // border sample.
  uint8_t at_clamped(int x, int y) const;

  const std::vector<uint8_t> &luma() const { return luma_; }
  std::vector<uint8_t> &luma() { return luma_; }

  bool has_chroma() const { return !chroma_u_.empty(); }
  int chroma_width() const { return (width_ + 1) / 2; }
  int chroma_height() const { return (height_ + 1) / 2; }
  const std::vector<uint8_t> &chroma_u() const { return chroma_u_; }
  const std::vector<uint8_t> &chroma_v() const { return chroma_v_; }
  void set_chroma(std::vector<uint8_t> u, std::vector<uint8_t> v);

  bool same_dimensions(const Frame &other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<uint8_t> luma_;
  std::vector<uint8_t> chroma_u_;
  std::vector<uint8_t> chroma_v_;
};

// Square pixel block copied out of a frame. size is 8 for transform blocks
// and 16 for motion blocks.
struct Block {
  int x = 0;
  int y = 0;
  int size = 0;
  std::vector<uint8_t> samples;

  uint8_t at(int bx, int by) const { return samples[size_t(by) * size + bx]; }
};

struct Sequence {
  std::vector<Frame> frames;
  int fps_num = 25;
  int fps_den = 1;
};

// Rounds frame dimensions up to the nearest multiple, replicating the last
// row/column into the new area. Already-aligned frames come back unchanged.
Frame pad_to_multiple(const Frame &frame, int multiple);

// Copies a size x size block. The block must lie fully inside the frame.
Block extract_block(const Frame &frame, int x, int y, int size);

}  // namespace ehb

#endif  // EHB_FRAME_H_

/*
 *  Copyright (c) 2026 the ehb authors. All rights reserved.
 *
 *  Use of this source code is governed by a BSD-style license
 *  that can be found in the LICENSE file in the root of the source tree.
 */

#include "ehb/frame.h"

#include <algorithm>

namespace ehb {

Frame::Frame(int width, int height, uint8_t fill)
    : width_(width), height_(height),
      luma_(size_t(width) * height, fill) {
  if (width <= 0 || height <= 0)
    throw Error(ErrorKind::kBadArgument, "frame dimensions must be positive");
}

Frame::Frame(int width, int height, std::vector<uint8_t> luma)
    : width_(width), height_(height), luma_(std::move(luma)) {
  if (width <= 0 || height <= 0)
    throw Error(ErrorKind::kBadArgument, "frame dimensions must be positive");
  if (luma_.size() != size_t(width) * height)
    throw Error(ErrorKind::kBadArgument, "luma plane size mismatch");
}

void Frame::set_chroma(std::vector<uint8_t> u, std::vector<uint8_t> v) {
  size_t expected = size_t(chroma_width()) * chroma_height();
  if (u.size() != expected || v.size() != expected)
    throw Error(ErrorKind::kBadArgument, "chroma plane size mismatch");
  chroma_u_ = std::move(u);
  chroma_v_ = std::move(v);
}

uint8_t Frame::at_clamped(int x, int y) const {
  x = std::clamp(x, 0, width_ - 1);
  y = std::clamp(y, 0, height_ - 1);
  return at(x, y);
}

Frame pad_to_multiple(const Frame &frame, int multiple) {
  if (multiple != 8 && multiple != 16)
    throw Error(ErrorKind::kBadArgument, "pad multiple must be 8 or 16");
  int pw = (frame.width() + multiple - 1) / multiple * multiple;
  int ph = (frame.height() + multiple - 1) / multiple * multiple;
  if (pw == frame.width() && ph == frame.height()) return frame;

  Frame padded(pw, ph);
  for (int y = 0; y < ph; ++y) {
    int sy = std::min(y, frame.height() - 1);
    for (int x = 0; x < pw; ++x)
      padded.set(x, y, frame.at(std::min(x, frame.width() - 1), sy));
  }
  return padded;
}

Block extract_block(const Frame &frame, int x, int y, int size) {
  if (x < 0 || y < 0 || x + size > frame.width() || y + size > frame.height())
    throw Error(ErrorKind::kBadArgument, "block outside frame");
  Block b;
  b.x = x;
  b.y = y;
  b.size = size;
  b.samples.resize(size_t(size) * size);
  for (int by = 0; by < size; ++by)
    for (int bx = 0; bx < size; ++bx)
      b.samples[size_t(by) * size + bx] = frame.at(x + bx, y + by);
  return b;
}

}  // namespace ehb

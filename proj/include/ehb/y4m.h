/*
 *  Copyright (c) 2026 the ehb authors. All rights reserved.
 *
 *  Use of this source code is governed by a BSD-style license
 *  that can be found in the LICENSE file in the root of the source tree.
 */

#ifndef EHB_Y4M_H_
#define EHB_Y4M_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ehb/frame.h"

namespace ehb {

// YUV4MPEG2 subset: progressive planar 4:2:0 (tag C420*, or absent).
// W, H and F parameters are required.
Sequence parse_y4m(std::span<const uint8_t> bytes);

// Canonical writer: "YUV4MPEG2 W# H# F#:# Ip A1:1 C420jpeg". Frames
// without chroma get neutral (128) chroma planes.
std::vector<uint8_t> write_y4m(const Sequence &seq);

Sequence read_y4m_file(const std::string &path);
void write_y4m_file(const std::string &path, const Sequence &seq);

}  // namespace ehb

#endif  // EHB_Y4M_H_

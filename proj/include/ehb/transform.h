/*
 *  Copyright (c) 2026 the ehb authors. All rights reserved.
 *
 *  Use of this source code is governed by a BSD-style license
 *  that can be found in the LICENSE file in the root of the source tree.
 */

#ifndef EHB_TRANSFORM_H_
#define EHB_TRANSFORM_H_

#include <array>
#include <cstdint>

#include "ehb/common.h"
#include "ehb/structure.h"

namespace ehb {

using CoefBlock = std::array<double, 64>;    // raster order
using LevelBlock = std::array<int32_t, 64>;  // quantized levels

// Orthonormal 2-D DCT-II on an 8x8 block (raster order in/out). Energy is
// preserved: sum(coef^2) == sum(sample^2).
CoefBlock dct8_forward(const std::array<double, 64> &samples);
std::array<double, 64> dct8_inverse(const CoefBlock &coefs);

// Uniform scalar quantizer, no dead zone, reconstruction at bin centers.
LevelBlock quantize(const CoefBlock &coefs, double step);
CoefBlock dequantize(const LevelBlock &levels, double step);

// Per-frame quantization plan. The encoder's and decoder's scale pairing
// (omega on one side, 1/omega on the other) collapses to a single
// consistent step so both sides dequantize identically.
struct QuantPlan {
  double base_step = 0.0;
  double layer_multiplier = 1.0;
  double omega = 1.0;
  double effective_step = 0.0;
};

QuantPlan make_quant_plan(double base_step, const Layer &layer, double omega);

inline constexpr double kOmegaMin = 0.8;
inline constexpr double kOmegaMax = 1.2;

}  // namespace ehb

#endif  // EHB_TRANSFORM_H_

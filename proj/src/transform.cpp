/*
 *  Copyright (c) 2026 the ehb authors. All rights reserved.
 *
 *  Use of this source code is governed by a BSD-style license
 *  that can be found in the LICENSE file in the root of the source tree.
 */

#include "ehb/transform.h"

#include <cmath>

namespace ehb {

namespace {

// basis[k][n] = a_k * cos((2n+1) k pi / 16), a_0 = sqrt(1/8), a_k = 1/2.
struct DctTable {
  double basis[8][8];
  DctTable() {
    const double pi = std::acos(-1.0);
    for (int k = 0; k < 8; ++k) {
      double ak = k == 0 ? std::sqrt(1.0 / 8.0) : 0.5;
      for (int n = 0; n < 8; ++n)
        basis[k][n] = ak * std::cos((2 * n + 1) * k * pi / 16.0);
    }
  }
};

const DctTable &table() {
  static const DctTable t;
  return t;
}

}  // namespace

CoefBlock dct8_forward(const std::array<double, 64> &samples) {
  const auto &b = table().basis;
  double rows[8][8];  // 1-D transform of each row
  for (int y = 0; y < 8; ++y)
    for (int k = 0; k < 8; ++k) {
      double acc = 0.0;
      for (int n = 0; n < 8; ++n) acc += b[k][n] * samples[y * 8 + n];
      rows[y][k] = acc;
    }
  CoefBlock out;
  for (int k = 0; k < 8; ++k)
    for (int x = 0; x < 8; ++x) {
      double acc = 0.0;
      for (int n = 0; n < 8; ++n) acc += b[k][n] * rows[n][x];
      out[k * 8 + x] = acc;
    }
  return out;
}

std::array<double, 64> dct8_inverse(const CoefBlock &coefs) {
  const auto &b = table().basis;
  double cols[8][8];  // 1-D inverse down each column
  for (int x = 0; x < 8; ++x)
    for (int n = 0; n < 8; ++n) {
      double acc = 0.0;
      for (int k = 0; k < 8; ++k) acc += b[k][n] * coefs[k * 8 + x];
      cols[n][x] = acc;
    }
  std::array<double, 64> out;
  for (int y = 0; y < 8; ++y)
    for (int n = 0; n < 8; ++n) {
      double acc = 0.0;
      for (int k = 0; k < 8; ++k) acc += b[k][n] * cols[y][k];
      out[y * 8 + n] = acc;
    }
  return out;
}

LevelBlock quantize(const CoefBlock &coefs, double step) {
  if (step <= 0.0)
    throw Error(ErrorKind::kBadArgument, "quantizer step must be positive");
  LevelBlock levels;
  for (int i = 0; i < 64; ++i)
    levels[i] = static_cast<int32_t>(round_half_away(coefs[i] / step));
  return levels;
}

CoefBlock dequantize(const LevelBlock &levels, double step) {
  if (step <= 0.0)
    throw Error(ErrorKind::kBadArgument, "quantizer step must be positive");
  CoefBlock coefs;
  for (int i = 0; i < 64; ++i) coefs[i] = levels[i] * step;
  return coefs;
}

QuantPlan make_quant_plan(double base_step, const Layer &layer, double omega) {
  if (base_step <= 0.0)
    throw Error(ErrorKind::kBadArgument, "base step must be positive");
  if (omega < kOmegaMin || omega > kOmegaMax)
    throw Error(ErrorKind::kOmegaRange, "omega outside [0.8, 1.2]");
  QuantPlan plan;
  plan.base_step = base_step;
  plan.layer_multiplier = layer_quant_multiplier(layer);
  plan.omega = omega;
  plan.effective_step = base_step * plan.layer_multiplier / omega;
  return plan;
}

}  // namespace ehb

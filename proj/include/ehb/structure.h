/*
 *  Copyright (c) 2026 the ehb authors. All rights reserved.
 *
 *  Use of this source code is governed by a BSD-style license
 *  that can be found in the LICENSE file in the root of the source tree.
 */

#ifndef EHB_STRUCTURE_H_
#define EHB_STRUCTURE_H_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ehb/common.h"

namespace ehb {

// VTM low-delay QP schedule parameters, keyed by frame index inside the
// 8-frame GOP.
struct QpParams {
  int offset;
  double mscale;
  double moffset;
  const char *quality;  // "low", "high", "very_high"
};

QpParams vtm_qp_params(int frame_idx_in_gop);

// QP = Int(QP_bias + MScale * QP_bias + MOffset + 0.5) with
// QP_bias = qp_base + Offset; Int truncates toward zero.
int vtm_qp(int qp_base, int frame_idx_in_gop);

// The two 4-entry reference lists (distances to frames before the current
// one) used by VTM low-delay B, per GOP position.
struct VtmReferenceLists {
  std::array<int, 4> list0;
  std::array<int, 4> list1;
};

VtmReferenceLists vtm_reference_lists(int frame_idx_in_gop);

enum class LayerId { kKey, kHigh, kLow };

const char *layer_name(LayerId id);

struct Layer {
  LayerId id;
  double weight;  // hierarchical quality weight
};

// Default hierarchical weights; index = inter frame counter mod 4.
inline constexpr std::array<double, 4> kDefaultWeights = {0.5, 1.2, 0.5, 0.9};

// Maps an inter-frame counter (1-based, reset after every intra frame) to
// its layer. With the default weights the pattern is
// Key, Low, High, Low, Key, ... The layer id follows the position in the
// 4-frame cycle so the key cadence survives custom weights.
Layer layer_of(int inter_index, const std::array<double, 4> &weights);

// Quantizer step multiplier for a layer: 1/sqrt(weight), rounded half away
// from zero at 4 decimals so the table values are exact.
double layer_quant_multiplier(const Layer &layer);

enum class FrameType { kIntra, kInter };

struct FrameSchedule {
  int index = 0;
  FrameType frame_type = FrameType::kIntra;
  std::optional<Layer> layer;   // inter frames only
  std::vector<int> refs;        // <= 2, refs[0] = index-1, refs[1] = prev key
  double quant_multiplier = 1.0;
  double omega_perturb = 1.0;   // filled in by the codec when enabled
};

struct StructureConfig {
  int n_frames = 0;
  int intra_period = -1;  // -1: only frame 0 is intra
  std::array<double, 4> weights = kDefaultWeights;
  double base_step = 16.0;
  double lambda_base = 0.1;  // lambda_eff = lambda_base * step^2

  void validate() const;
};

// Builds the full coding plan: intra placement, layers, the two-reference
// DAG (adjacent frame + previous key/intra frame, deduplicated), and the
// per-frame quantizer multipliers.
std::vector<FrameSchedule> build_schedule(const StructureConfig &config);

// CSV dump of a schedule: index,type,layer,omega,refs,quant_mult with refs
// joined by ';'.
std::string schedule_to_csv(const std::vector<FrameSchedule> &schedule);

}  // namespace ehb

#endif  // EHB_STRUCTURE_H_

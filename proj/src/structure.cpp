/*
 *  Copyright (c) 2026 the ehb authors. All rights reserved.
 *
 *  Use of this source code is governed by a BSD-style license
 *  that can be found in the LICENSE file in the root of the source tree.
 */

#include "ehb/structure.h"

#include <cmath>
#include <sstream>

namespace ehb {

QpParams vtm_qp_params(int frame_idx_in_gop) {
  switch (frame_idx_in_gop) {
    case 0: case 2: case 4: case 6:
      return {6, 0.245, -6.5, "low"};
    case 1: case 3: case 5:
      return {4, 0.259, -6.5, "high"};
    case 7:
      return {1, 0.0, 0.0, "very_high"};
    default:
      throw Error(ErrorKind::kBadArgument, "GOP index must be in 0..7");
  }
}

int vtm_qp(int qp_base, int frame_idx_in_gop) {
  QpParams p = vtm_qp_params(frame_idx_in_gop);
  double bias = qp_base + p.offset;
  double qp = bias + p.mscale * bias + p.moffset + 0.5;
  return static_cast<int>(std::trunc(qp));
}

VtmReferenceLists vtm_reference_lists(int frame_idx_in_gop) {
  static const VtmReferenceLists kLists[8] = {
      {{1, 9, 17, 25}, {1, 3, 5, 33}},
      {{1, 2, 10, 18}, {1, 2, 4, 26}},
      {{1, 3, 11, 19}, {1, 3, 5, 27}},
      {{1, 4, 12, 20}, {1, 2, 4, 28}},
      {{1, 5, 13, 21}, {1, 3, 5, 29}},
      {{1, 6, 14, 22}, {1, 2, 6, 30}},
      {{1, 7, 15, 23}, {1, 3, 7, 31}},
      {{1, 8, 16, 24}, {1, 2, 4, 32}},
  };
  if (frame_idx_in_gop < 0 || frame_idx_in_gop > 7)
    throw Error(ErrorKind::kBadArgument, "GOP index must be in 0..7");
  return kLists[frame_idx_in_gop];
}

const char *layer_name(LayerId id) {
  switch (id) {
    case LayerId::kKey:  return "Key";
    case LayerId::kHigh: return "High";
    default:             return "Low";
  }
}

Layer layer_of(int inter_index, const std::array<double, 4> &weights) {
  int slot = inter_index % 4;
  LayerId id = slot == 1 ? LayerId::kKey
             : slot == 3 ? LayerId::kHigh
                         : LayerId::kLow;
  return {id, weights[slot]};
}

double layer_quant_multiplier(const Layer &layer) {
  if (layer.weight <= 0.0)
    throw Error(ErrorKind::kBadArgument, "layer weight must be positive");
  double m = 1.0 / std::sqrt(layer.weight);
  return double(round_half_away(m * 10000.0)) / 10000.0;
}

void StructureConfig::validate() const {
  if (n_frames < 1)
    throw Error(ErrorKind::kBadArgument, "need at least one frame");
  if (intra_period != -1 && intra_period < 1)
    throw Error(ErrorKind::kBadArgument, "intra period must be -1 or >= 1");
  if (base_step <= 0.0)
    throw Error(ErrorKind::kBadArgument, "base step must be positive");
  if (lambda_base <= 0.0)
    throw Error(ErrorKind::kBadArgument, "lambda must be positive");
  for (double w : weights)
    if (w <= 0.0)
      throw Error(ErrorKind::kBadArgument, "weights must be positive");
}

std::vector<FrameSchedule> build_schedule(const StructureConfig &config) {
  config.validate();

  // Intra frames get the key-layer multiplier: they anchor the chain and
  // are held at the highest quality grade.
  const double intra_mult =
      layer_quant_multiplier({LayerId::kKey, config.weights[1]});

  std::vector<FrameSchedule> schedule(config.n_frames);
  int inter_index = 0;     // resets after each intra frame
  int prev_key = 0;        // most recent key or intra frame
  for (int i = 0; i < config.n_frames; ++i) {
    FrameSchedule &fs = schedule[i];
    fs.index = i;
    bool intra = i == 0 ||
                 (config.intra_period != -1 && i % config.intra_period == 0);
    if (intra) {
      fs.frame_type = FrameType::kIntra;
      fs.quant_multiplier = intra_mult;
      inter_index = 0;
      prev_key = i;
      continue;
    }

    fs.frame_type = FrameType::kInter;
    fs.layer = layer_of(++inter_index, config.weights);
    fs.quant_multiplier = layer_quant_multiplier(*fs.layer);
    fs.refs.push_back(i - 1);
    if (prev_key != i - 1) fs.refs.push_back(prev_key);
    if (fs.layer->id == LayerId::kKey) prev_key = i;
  }
  return schedule;
}

std::string schedule_to_csv(const std::vector<FrameSchedule> &schedule) {
  std::ostringstream os;
  os << "index,type,layer,omega,refs,quant_mult\n";
  for (const FrameSchedule &fs : schedule) {
    os << fs.index << ',' << (fs.frame_type == FrameType::kIntra ? 'I' : 'P')
       << ',';
    if (fs.layer)
      os << layer_name(fs.layer->id) << ',' << fs.layer->weight;
    else
      os << "-,-";
    os << ',';
    for (size_t r = 0; r < fs.refs.size(); ++r) {
      if (r) os << ';';
      os << fs.refs[r];
    }
    os << ',' << fs.quant_multiplier << '\n';
  }
  return os.str();
}

}  // namespace ehb

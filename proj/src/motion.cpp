/*
 *  Copyright (c) 2026 the ehb authors. All rights reserved.
 *
 *  Use of this source code is governed by a BSD-style license
 *  that can be found in the LICENSE file in the root of the source tree.
 */

#include "ehb/motion.h"

#include <algorithm>
#include <limits>

#include "ehb/syntax.h"

namespace ehb {

namespace {

// Candidate offsets sorted by tie-break priority (|dx|+|dy|, dy, dx) so a
// linear scan with strict improvement reproduces the stated tie rules and
// can stop early at SAD 0.
const std::vector<MotionVector> &candidates_for_range(int range) {
  static std::vector<MotionVector> tables[kSearchRange + 1];
  std::vector<MotionVector> &tab = tables[range];
  if (tab.empty()) {
    tab.reserve(size_t(2 * range + 1) * (2 * range + 1));
    for (int dy = -range; dy <= range; ++dy)
      for (int dx = -range; dx <= range; ++dx) tab.push_back({dx, dy});
    std::stable_sort(tab.begin(), tab.end(),
                     [](const MotionVector &a, const MotionVector &b) {
                       int ma = std::abs(a.dx) + std::abs(a.dy);
                       int mb = std::abs(b.dx) + std::abs(b.dy);
                       if (ma != mb) return ma < mb;
                       if (a.dy != b.dy) return a.dy < b.dy;
                       return a.dx < b.dx;
                     });
  }
  return tab;
}

int median3(int a, int b, int c) {
  return std::max(std::min(a, b), std::min(std::max(a, b), c));
}

// SAD against an edge-clamped window, aborting once the running total can
// no longer beat the best seen so far.
uint32_t sad_clamped(const Block16 &cur, const Frame &ref, int x0, int y0,
                     uint32_t abort_at) {
  uint32_t sad = 0;
  const int w = ref.width();
  const int h = ref.height();
  if (x0 >= 0 && y0 >= 0 && x0 + kBlockSize <= w && y0 + kBlockSize <= h) {
    const uint8_t *plane = ref.luma().data();
    for (int y = 0; y < kBlockSize; ++y) {
      const uint8_t *row = plane + size_t(y0 + y) * w + x0;
      const uint8_t *c = cur.data() + size_t(y) * kBlockSize;
      for (int x = 0; x < kBlockSize; ++x)
        sad += uint32_t(std::abs(int(c[x]) - int(row[x])));
      if (sad >= abort_at) return sad;
    }
    return sad;
  }
  for (int y = 0; y < kBlockSize; ++y) {
    for (int x = 0; x < kBlockSize; ++x)
      sad += uint32_t(std::abs(int(cur[size_t(y) * kBlockSize + x]) -
                               int(ref.at_clamped(x0 + x, y0 + y))));
    if (sad >= abort_at) return sad;
  }
  return sad;
}

}  // namespace

MotionVector predict_mv(const MotionVector *left, const MotionVector *above) {
  MotionVector l = left ? *left : MotionVector{};
  MotionVector a = above ? *above : MotionVector{};
  return {median3(l.dx, a.dx, 0), median3(l.dy, a.dy, 0)};
}

SearchResult motion_search(const Block16 &cur, const Frame &ref, int origin_x,
                           int origin_y, int range) {
  if (range < 0 || range > kSearchRange)
    throw Error(ErrorKind::kBadArgument, "search range must be in 0..16");
  SearchResult best;
  best.sad = std::numeric_limits<uint32_t>::max();
  for (const MotionVector &mv : candidates_for_range(range)) {
    uint32_t sad =
        sad_clamped(cur, ref, origin_x + mv.dx, origin_y + mv.dy, best.sad);
    if (sad < best.sad) {
      best.sad = sad;
      best.mv = mv;
      if (sad == 0) break;
    }
  }
  return best;
}

Block16 motion_compensate(const Frame &ref, MotionVector mv, int origin_x,
                          int origin_y) {
  Block16 out;
  int x0 = origin_x + mv.dx;
  int y0 = origin_y + mv.dy;
  if (x0 >= 0 && y0 >= 0 && x0 + kBlockSize <= ref.width() &&
      y0 + kBlockSize <= ref.height()) {
    const uint8_t *plane = ref.luma().data();
    for (int y = 0; y < kBlockSize; ++y)
      std::copy_n(plane + size_t(y0 + y) * ref.width() + x0, kBlockSize,
                  out.begin() + size_t(y) * kBlockSize);
    return out;
  }
  for (int y = 0; y < kBlockSize; ++y)
    for (int x = 0; x < kBlockSize; ++x)
      out[size_t(y) * kBlockSize + x] = ref.at_clamped(x0 + x, y0 + y);
  return out;
}

const char *pred_mode_name(PredMode mode) {
  switch (mode) {
    case PredMode::kAdj: return "ADJ";
    case PredMode::kKey: return "KEY";
    case PredMode::kAvg: return "AVG";
    default:             return "INTRA_DC";
  }
}

uint32_t block_sad(const Block16 &a, const Block16 &b) {
  uint32_t sad = 0;
  for (size_t i = 0; i < a.size(); ++i)
    sad += uint32_t(std::abs(int(a[i]) - int(b[i])));
  return sad;
}

double block_sse(const Block16 &a, const Block16 &b) {
  double sse = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    double d = double(a[i]) - double(b[i]);
    sse += d * d;
  }
  return sse;
}

int mode_rate_estimate(PredMode mode, MotionVector mv_adj_res,
                       MotionVector mv_key_res) {
  int bits = 2;  // mode header
  switch (mode) {
    case PredMode::kAdj:
      bits += ue_code_length(se_to_ue(mv_adj_res.dx)) +
              ue_code_length(se_to_ue(mv_adj_res.dy));
      break;
    case PredMode::kKey:
      bits += ue_code_length(se_to_ue(mv_key_res.dx)) +
              ue_code_length(se_to_ue(mv_key_res.dy));
      break;
    case PredMode::kAvg:
      bits += ue_code_length(se_to_ue(mv_adj_res.dx)) +
              ue_code_length(se_to_ue(mv_adj_res.dy)) +
              ue_code_length(se_to_ue(mv_key_res.dx)) +
              ue_code_length(se_to_ue(mv_key_res.dy));
      break;
    case PredMode::kIntraDc:
      bits += 8;  // transmitted mean
      break;
  }
  return bits;
}

BlockPrediction predict_multi_ref(const Block16 &cur, const Frame &adj_ref,
                                  const Frame *key_ref, double lambda_eff,
                                  int origin_x, int origin_y,
                                  MotionVector mv_pred_adj,
                                  MotionVector mv_pred_key, uint8_t intra_dc) {
  SearchResult adj = motion_search(cur, adj_ref, origin_x, origin_y,
                                   kSearchRange);
  Block16 pred_adj = motion_compensate(adj_ref, adj.mv, origin_x, origin_y);

  BlockPrediction best;
  best.mode = PredMode::kAdj;
  best.mv_adj = adj.mv;
  best.prediction = pred_adj;
  MotionVector adj_res = {adj.mv.dx - mv_pred_adj.dx,
                          adj.mv.dy - mv_pred_adj.dy};
  best.cost = block_sse(cur, pred_adj) +
              lambda_eff * mode_rate_estimate(PredMode::kAdj, adj_res, {});

  if (key_ref != nullptr) {
    SearchResult key = motion_search(cur, *key_ref, origin_x, origin_y,
                                     kSearchRange);
    Block16 pred_key = motion_compensate(*key_ref, key.mv, origin_x, origin_y);
    MotionVector key_res = {key.mv.dx - mv_pred_key.dx,
                            key.mv.dy - mv_pred_key.dy};
    double cost_key =
        block_sse(cur, pred_key) +
        lambda_eff * mode_rate_estimate(PredMode::kKey, {}, key_res);
    if (cost_key < best.cost) {
      best.mode = PredMode::kKey;
      best.mv_key = key.mv;
      best.prediction = pred_key;
      best.cost = cost_key;
    }

    Block16 pred_avg;
    for (size_t i = 0; i < pred_avg.size(); ++i)
      pred_avg[i] = uint8_t((int(pred_adj[i]) + int(pred_key[i]) + 1) / 2);
    double cost_avg =
        block_sse(cur, pred_avg) +
        lambda_eff * mode_rate_estimate(PredMode::kAvg, adj_res, key_res);
    if (cost_avg < best.cost) {
      best.mode = PredMode::kAvg;
      best.mv_adj = adj.mv;
      best.mv_key = key.mv;
      best.prediction = pred_avg;
      best.cost = cost_avg;
    }
  }

  Block16 pred_dc;
  pred_dc.fill(intra_dc);
  double cost_dc = block_sse(cur, pred_dc) +
                   lambda_eff * mode_rate_estimate(PredMode::kIntraDc, {}, {});
  if (cost_dc < best.cost) {
    best.mode = PredMode::kIntraDc;
    best.dc = intra_dc;
    best.prediction = pred_dc;
    best.cost = cost_dc;
  }
  return best;
}

}  // namespace ehb

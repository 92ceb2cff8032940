/*
 *  Copyright (c) 2026 the ehb authors. All rights reserved.
 *
 *  Use of this source code is governed by a BSD-style license
 *  that can be found in the LICENSE file in the root of the source tree.
 */

#include "ehb/codec.h"

#include <algorithm>
#include <cmath>

#include "ehb/metrics.h"
#include "ehb/prng.h"
#include "ehb/syntax.h"

namespace ehb {

namespace {

void put_u16(std::vector<uint8_t> &out, uint16_t v) {
  out.push_back(uint8_t(v));
  out.push_back(uint8_t(v >> 8));
}

void put_u32(std::vector<uint8_t> &out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(uint8_t(v >> (8 * i)));
}

uint16_t get_u16(std::span<const uint8_t> b, size_t off) {
  return uint16_t(b[off] | (b[off + 1] << 8));
}

uint32_t get_u32(std::span<const uint8_t> b, size_t off) {
  return uint32_t(b[off]) | uint32_t(b[off + 1]) << 8 |
         uint32_t(b[off + 2]) << 16 | uint32_t(b[off + 3]) << 24;
}

}  // namespace

void CodecConfig::validate() const {
  structure.validate();
  if (lookahead_strength < 0.0 || lookahead_strength > 1.0)
    throw Error(ErrorKind::kBadArgument, "lookahead strength must be in [0,1]");
}

void SequenceHeader::serialize(std::vector<uint8_t> &out) const {
  size_t start = out.size();
  out.insert(out.end(), kMagic, kMagic + 4);
  put_u16(out, width);
  put_u16(out, height);
  put_u32(out, frame_count);
  put_u32(out, base_step_milli);
  for (uint16_t w : weights_milli) put_u16(out, w);
  put_u32(out, uint32_t(intra_period));
  out.push_back(flags);
  out.push_back(0);
  put_u16(out, fps_num);
  put_u16(out, fps_den);
  put_u16(out, lookahead_strength_milli);
  put_u32(out, 0);
  if (out.size() - start != kSize)
    throw Error(ErrorKind::kBadArgument, "sequence header layout broken");
}

SequenceHeader SequenceHeader::parse(std::span<const uint8_t> b) {
  if (b.size() < kSize)
    throw Error(ErrorKind::kTruncated, "bitstream shorter than header");
  if (!std::equal(kMagic, kMagic + 4, b.begin()))
    throw Error(ErrorKind::kBadMagic, "bad magic, not an EHB1 stream");
  SequenceHeader h;
  h.width = get_u16(b, 4);
  h.height = get_u16(b, 6);
  h.frame_count = get_u32(b, 8);
  h.base_step_milli = get_u32(b, 12);
  for (int i = 0; i < 4; ++i) h.weights_milli[i] = get_u16(b, 16 + 2 * i);
  h.intra_period = int32_t(get_u32(b, 24));
  h.flags = b[28];
  h.fps_num = get_u16(b, 30);
  h.fps_den = get_u16(b, 32);
  h.lookahead_strength_milli = get_u16(b, 34);
  if (h.width == 0 || h.height == 0 || h.frame_count == 0)
    throw Error(ErrorKind::kMalformed, "empty dimensions or frame count");
  if (h.base_step_milli == 0)
    throw Error(ErrorKind::kMalformed, "zero quantizer step");
  if (h.intra_period != -1 && h.intra_period < 1)
    throw Error(ErrorKind::kMalformed, "invalid intra period");
  for (uint16_t w : h.weights_milli)
    if (w == 0) throw Error(ErrorKind::kMalformed, "zero layer weight");
  return h;
}

void FrameHeader::serialize(std::vector<uint8_t> &out) const {
  out.push_back(frame_type);
  out.push_back(layer);
  put_u16(out, omega_q8);
  put_u32(out, payload_len);
  put_u32(out, 0);
}

FrameHeader FrameHeader::parse(std::span<const uint8_t> b) {
  if (b.size() < kSize)
    throw Error(ErrorKind::kTruncated, "truncated frame header");
  FrameHeader h;
  h.frame_type = b[0];
  h.layer = b[1];
  h.omega_q8 = get_u16(b, 2);
  h.payload_len = get_u32(b, 4);
  return h;
}

uint16_t omega_to_q8(double omega) {
  auto q = round_half_away(omega * 256.0);
  return uint16_t(std::clamp<int64_t>(q, 205, 307));
}

double omega_from_q8(uint16_t q8) { return double(q8) / 256.0; }

namespace {

constexpr uint16_t kOmegaQ8Min = 205;  // round(0.8 * 256)
constexpr uint16_t kOmegaQ8Max = 307;  // round(1.2 * 256)

uint8_t layer_to_code(const std::optional<Layer> &layer) {
  if (!layer) return 255;
  switch (layer->id) {
    case LayerId::kKey:  return 0;
    case LayerId::kHigh: return 1;
    default:             return 2;
  }
}

Frame crop(const Frame &padded, int width, int height) {
  if (padded.width() == width && padded.height() == height) return padded;
  Frame out(width, height);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) out.set(x, y, padded.at(x, y));
  return out;
}

// The quantities a frame's coding depends on. Both sides derive them from
// header fields only, so encoder and decoder stay in lockstep.
struct FrameCoding {
  double effective_step = 0.0;
  double lambda_base = 0.1;
  bool step_syntax = false;  // per-block multiplier indices present
  bool key_allowed = false;  // schedule provides a second reference
};

double causal_dc(const Frame &src, int x, int y) {
  // Mean of the original row above and column left of the block; the value
  // is transmitted, so the choice of source samples is encoder-only.
  int sum = 0;
  int count = 0;
  if (y > 0)
    for (int i = 0; i < kBlockSize; ++i) {
      sum += src.at(x + i, y - 1);
      ++count;
    }
  if (x > 0)
    for (int i = 0; i < kBlockSize; ++i) {
      sum += src.at(x - 1, y + i);
      ++count;
    }
  if (count == 0) return 128;
  return double(round_half_away(double(sum) / count));
}

// Index 1 (multiplier 0.75) dominates on well-referenced content, so it
// gets the single-bin branch of the tree.
void encode_step_index(RangeEncoder &enc, ContextSet &ctxs, int idx) {
  enc.encode_bit(ctxs.step_idx[0], idx == 1 ? 0 : 1);
  if (idx == 1) return;
  enc.encode_bit(ctxs.step_idx[1], idx == 0 ? 0 : 1);
  if (idx == 0) return;
  enc.encode_bit(ctxs.step_idx[1], idx == 2 ? 0 : 1);
}

int decode_step_index(RangeDecoder &dec, ContextSet &ctxs) {
  if (dec.decode_bit(ctxs.step_idx[0]) == 0) return 1;
  if (dec.decode_bit(ctxs.step_idx[1]) == 0) return 0;
  return dec.decode_bit(ctxs.step_idx[1]) == 0 ? 2 : 3;
}

void encode_mode(RangeEncoder &enc, ContextSet &ctxs, PredMode mode,
                 bool key_allowed) {
  enc.encode_bit(ctxs.mode[0], mode == PredMode::kAdj ? 0 : 1);
  if (mode == PredMode::kAdj) return;
  if (!key_allowed) return;  // only INTRA_DC remains
  enc.encode_bit(ctxs.mode[1], mode == PredMode::kKey ? 0 : 1);
  if (mode == PredMode::kKey) return;
  enc.encode_bit(ctxs.mode[2], mode == PredMode::kAvg ? 0 : 1);
}

PredMode decode_mode(RangeDecoder &dec, ContextSet &ctxs, bool key_allowed) {
  if (dec.decode_bit(ctxs.mode[0]) == 0) return PredMode::kAdj;
  if (!key_allowed) return PredMode::kIntraDc;
  if (dec.decode_bit(ctxs.mode[1]) == 0) return PredMode::kKey;
  if (dec.decode_bit(ctxs.mode[2]) == 0) return PredMode::kAvg;
  return PredMode::kIntraDc;
}

void encode_dc(RangeEncoder &enc, uint8_t dc) {
  for (int i = 7; i >= 0; --i) enc.encode_bypass((dc >> i) & 1);
}

uint8_t decode_dc(RangeDecoder &dec) {
  int dc = 0;
  for (int i = 0; i < 8; ++i) dc = (dc << 1) | dec.decode_bypass();
  return uint8_t(dc);
}

const MotionVector *branch_mv(const MotionField &mf, int bx, int by,
                              bool adj_branch) {
  if (bx < 0 || by < 0) return nullptr;
  const BlockPrediction &bp = mf.at(bx, by);
  if (adj_branch) {
    if (bp.mode == PredMode::kAdj || bp.mode == PredMode::kAvg)
      return &bp.mv_adj;
  } else {
    if (bp.mode == PredMode::kKey || bp.mode == PredMode::kAvg)
      return &bp.mv_key;
  }
  return nullptr;
}

MotionVector predict_branch_mv(const MotionField &mf, int bx, int by,
                               bool adj_branch) {
  const MotionVector *left =
      bx > 0 ? branch_mv(mf, bx - 1, by, adj_branch) : nullptr;
  const MotionVector *above =
      by > 0 ? branch_mv(mf, bx, by - 1, adj_branch) : nullptr;
  return predict_mv(left, above);
}

// Residual transform coding of one 16x16 block (four 8x8 quadrants),
// shared verbatim by encoder reconstruction and decoder.
void reconstruct_block(const Block16 &prediction,
                       const std::array<LevelBlock, 4> &levels, double step,
                       Frame &recon, int x, int y) {
  static constexpr int kQuadX[4] = {0, 8, 0, 8};
  static constexpr int kQuadY[4] = {0, 0, 8, 8};
  for (int q = 0; q < 4; ++q) {
    auto res = dct8_inverse(dequantize(levels[q], step));
    for (int sy = 0; sy < 8; ++sy)
      for (int sx = 0; sx < 8; ++sx) {
        int px = kQuadX[q] + sx;
        int py = kQuadY[q] + sy;
        double v = double(prediction[size_t(py) * kBlockSize + px]) +
                   res[size_t(sy) * 8 + sx];
        recon.set(x + px, y + py, clamp_pixel(v));
      }
  }
}

struct InterFrameOutput {
  std::vector<uint8_t> payload;
  Frame recon;
  MotionField field;
};

InterFrameOutput encode_inter_frame(const Frame &src, const Frame &adj,
                                    const Frame *key, const FrameCoding &fc,
                                    const std::vector<int> &step_indices) {
  const int bw = src.width() / kBlockSize;
  const int bh = src.height() / kBlockSize;
  RangeEncoder enc;
  ContextSet ctxs;
  InterFrameOutput out;
  out.recon = Frame(src.width(), src.height());
  out.field.blocks_x = bw;
  out.field.blocks_y = bh;
  out.field.blocks.reserve(size_t(bw) * bh);

  for (int by = 0; by < bh; ++by) {
    for (int bx = 0; bx < bw; ++bx) {
      const int x = bx * kBlockSize;
      const int y = by * kBlockSize;
      Block16 cur;
      for (int sy = 0; sy < kBlockSize; ++sy)
        std::copy_n(src.luma().data() + size_t(y + sy) * src.width() + x,
                    kBlockSize, cur.begin() + size_t(sy) * kBlockSize);

      int step_idx = fc.step_syntax ? step_indices[size_t(by) * bw + bx] : 0;
      double step = fc.effective_step * step_multiplier_from_index(step_idx);
      double lambda = fc.lambda_base * step * step;

      MotionVector pred_adj = predict_branch_mv(out.field, bx, by, true);
      MotionVector pred_key = predict_branch_mv(out.field, bx, by, false);
      uint8_t dc = uint8_t(causal_dc(src, x, y));

      BlockPrediction bp =
          predict_multi_ref(cur, adj, key, lambda, x, y, pred_adj, pred_key,
                            dc);

      if (fc.step_syntax) encode_step_index(enc, ctxs, step_idx);
      encode_mode(enc, ctxs, bp.mode, key != nullptr);
      if (bp.mode == PredMode::kAdj || bp.mode == PredMode::kAvg) {
        encode_mv_component(enc, ctxs, 0, bp.mv_adj.dx - pred_adj.dx);
        encode_mv_component(enc, ctxs, 1, bp.mv_adj.dy - pred_adj.dy);
      }
      if (bp.mode == PredMode::kKey || bp.mode == PredMode::kAvg) {
        encode_mv_component(enc, ctxs, 0, bp.mv_key.dx - pred_key.dx);
        encode_mv_component(enc, ctxs, 1, bp.mv_key.dy - pred_key.dy);
      }
      if (bp.mode == PredMode::kIntraDc) encode_dc(enc, bp.dc);

      std::array<LevelBlock, 4> levels;
      static constexpr int kQuadX[4] = {0, 8, 0, 8};
      static constexpr int kQuadY[4] = {0, 0, 8, 8};
      for (int q = 0; q < 4; ++q) {
        std::array<double, 64> res;
        for (int sy = 0; sy < 8; ++sy)
          for (int sx = 0; sx < 8; ++sx) {
            int px = kQuadX[q] + sx;
            int py = kQuadY[q] + sy;
            res[size_t(sy) * 8 + sx] =
                double(cur[size_t(py) * kBlockSize + px]) -
                double(bp.prediction[size_t(py) * kBlockSize + px]);
          }
        levels[q] = quantize(dct8_forward(res), step);
        encode_coef_block(enc, ctxs, levels[q]);
      }
      reconstruct_block(bp.prediction, levels, step, out.recon, x, y);
      out.field.blocks.push_back(bp);
    }
  }
  out.payload = enc.finish();
  return out;
}

Frame decode_inter_frame(std::span<const uint8_t> payload, int width,
                         int height, const Frame &adj, const Frame *key,
                         const FrameCoding &fc) {
  const int bw = width / kBlockSize;
  const int bh = height / kBlockSize;
  RangeDecoder dec(payload);
  ContextSet ctxs;
  Frame recon(width, height);
  MotionField field;
  field.blocks_x = bw;
  field.blocks_y = bh;
  field.blocks.reserve(size_t(bw) * bh);

  for (int by = 0; by < bh; ++by) {
    for (int bx = 0; bx < bw; ++bx) {
      const int x = bx * kBlockSize;
      const int y = by * kBlockSize;
      int step_idx = fc.step_syntax ? decode_step_index(dec, ctxs) : 0;
      double step = fc.effective_step * step_multiplier_from_index(step_idx);

      PredMode mode = decode_mode(dec, ctxs, key != nullptr);
      BlockPrediction bp;
      bp.mode = mode;
      if (mode == PredMode::kAdj || mode == PredMode::kAvg) {
        MotionVector pred = predict_branch_mv(field, bx, by, true);
        bp.mv_adj.dx = pred.dx + decode_mv_component(dec, ctxs, 0);
        bp.mv_adj.dy = pred.dy + decode_mv_component(dec, ctxs, 1);
      }
      if (mode == PredMode::kKey || mode == PredMode::kAvg) {
        MotionVector pred = predict_branch_mv(field, bx, by, false);
        bp.mv_key.dx = pred.dx + decode_mv_component(dec, ctxs, 0);
        bp.mv_key.dy = pred.dy + decode_mv_component(dec, ctxs, 1);
      }
      if (mode == PredMode::kIntraDc) bp.dc = decode_dc(dec);

      switch (mode) {
        case PredMode::kAdj:
          bp.prediction = motion_compensate(adj, bp.mv_adj, x, y);
          break;
        case PredMode::kKey:
          bp.prediction = motion_compensate(*key, bp.mv_key, x, y);
          break;
        case PredMode::kAvg: {
          Block16 a = motion_compensate(adj, bp.mv_adj, x, y);
          Block16 k = motion_compensate(*key, bp.mv_key, x, y);
          for (size_t i = 0; i < a.size(); ++i)
            bp.prediction[i] = uint8_t((int(a[i]) + int(k[i]) + 1) / 2);
          break;
        }
        case PredMode::kIntraDc:
          bp.prediction.fill(bp.dc);
          break;
      }

      std::array<LevelBlock, 4> levels;
      for (int q = 0; q < 4; ++q) levels[q] = decode_coef_block(dec, ctxs);
      reconstruct_block(bp.prediction, levels, step, recon, x, y);
      field.blocks.push_back(bp);
    }
  }
  return recon;
}

Frame decode_intra_frame(std::span<const uint8_t> payload, int width,
                         int height, double step) {
  RangeDecoder dec(payload);
  ContextSet ctxs;
  Frame recon(width, height);
  for (int y = 0; y < height; y += 8)
    for (int x = 0; x < width; x += 8) {
      LevelBlock levels = decode_coef_block(dec, ctxs);
      auto pixels = dct8_inverse(dequantize(levels, step));
      for (int sy = 0; sy < 8; ++sy)
        for (int sx = 0; sx < 8; ++sx)
          recon.set(x + sx, y + sy, clamp_pixel(pixels[size_t(sy) * 8 + sx]));
    }
  return recon;
}

}  // namespace

std::pair<std::vector<uint8_t>, Frame> encode_intra_frame(const Frame &padded,
                                                          double step) {
  RangeEncoder enc;
  ContextSet ctxs;
  Frame recon(padded.width(), padded.height());
  for (int y = 0; y < padded.height(); y += 8)
    for (int x = 0; x < padded.width(); x += 8) {
      std::array<double, 64> samples;
      for (int sy = 0; sy < 8; ++sy)
        for (int sx = 0; sx < 8; ++sx)
          samples[size_t(sy) * 8 + sx] = padded.at(x + sx, y + sy);
      LevelBlock levels = quantize(dct8_forward(samples), step);
      encode_coef_block(enc, ctxs, levels);
      auto pixels = dct8_inverse(dequantize(levels, step));
      for (int sy = 0; sy < 8; ++sy)
        for (int sx = 0; sx < 8; ++sx)
          recon.set(x + sx, y + sy, clamp_pixel(pixels[size_t(sy) * 8 + sx]));
    }
  return {enc.finish(), std::move(recon)};
}

InterFrameResult encode_inter_frame(const Frame &padded,
                                    const FrameSchedule &entry,
                                    const DecodedPictureBuffer &dpb,
                                    const QuantPlan &plan,
                                    const std::vector<int> &step_indices,
                                    double lambda_base) {
  if (entry.frame_type != FrameType::kInter)
    throw Error(ErrorKind::kBadArgument, "schedule entry is not inter");
  if (dpb.last.width() != padded.width() ||
      dpb.last.height() != padded.height())
    throw Error(ErrorKind::kBadArgument, "missing or mismatched reference");
  FrameCoding fc;
  fc.effective_step = plan.effective_step;
  fc.lambda_base = lambda_base;
  fc.step_syntax = !step_indices.empty();
  fc.key_allowed = entry.refs.size() > 1;
  if (fc.key_allowed && dpb.key.width() != padded.width())
    throw Error(ErrorKind::kBadArgument, "missing key reference");
  const Frame *key = fc.key_allowed ? &dpb.key : nullptr;
  InterFrameOutput out =
      encode_inter_frame(padded, dpb.last, key, fc, step_indices);
  return {std::move(out.payload), std::move(out.recon), std::move(out.field)};
}

std::vector<double> lookahead_weights(const Frame &cur, const Frame &next,
                                      double strength) {
  if (!cur.same_dimensions(next))
    throw Error(ErrorKind::kBadArgument, "lookahead frames differ in size");
  if (cur.width() % kBlockSize != 0 || cur.height() % kBlockSize != 0)
    throw Error(ErrorKind::kBadArgument, "lookahead frames must be padded");
  const int bw = cur.width() / kBlockSize;
  const int bh = cur.height() / kBlockSize;
  std::vector<double> mult(size_t(bw) * bh, 1.0);
  if (strength == 0.0) return mult;

  std::vector<double> weight(size_t(bw) * bh, 0.0);
  for (int by = 0; by < bh; ++by)
    for (int bx = 0; bx < bw; ++bx) {
      const int x = bx * kBlockSize;
      const int y = by * kBlockSize;
      Block16 blk;
      double sum = 0.0;
      for (int sy = 0; sy < kBlockSize; ++sy)
        for (int sx = 0; sx < kBlockSize; ++sx) {
          uint8_t v = next.at(x + sx, y + sy);
          blk[size_t(sy) * kBlockSize + sx] = v;
          sum += v;
        }
      double mean = sum / (kBlockSize * kBlockSize);
      double sad_intra = 0.0;
      for (uint8_t v : blk) sad_intra += std::abs(double(v) - mean);

      SearchResult sr = motion_search(blk, cur, x, y, kSearchRange);
      double ratio = 1.0 - double(sr.sad) / (sad_intra + 1.0);
      if (ratio <= 0.0) continue;

      // Distribute over the up-to-four current blocks the match overlaps.
      int mx = x + sr.mv.dx;
      int my = y + sr.mv.dy;
      int cb_x0 = std::max(0, mx / kBlockSize);
      int cb_y0 = std::max(0, my / kBlockSize);
      for (int cby = cb_y0; cby <= (my + kBlockSize - 1) / kBlockSize; ++cby)
        for (int cbx = cb_x0; cbx <= (mx + kBlockSize - 1) / kBlockSize;
             ++cbx) {
          if (cbx < 0 || cby < 0 || cbx >= bw || cby >= bh) continue;
          int ox = std::min(mx + kBlockSize, (cbx + 1) * kBlockSize) -
                   std::max(mx, cbx * kBlockSize);
          int oy = std::min(my + kBlockSize, (cby + 1) * kBlockSize) -
                   std::max(my, cby * kBlockSize);
          if (ox <= 0 || oy <= 0) continue;
          weight[size_t(cby) * bw + cbx] +=
              (double(ox) * oy / (kBlockSize * kBlockSize)) * ratio;
        }
    }

  for (size_t i = 0; i < mult.size(); ++i)
    mult[i] = std::clamp(std::pow(1.0 + weight[i], -strength), 0.5, 1.0);
  return mult;
}

std::vector<int> snap_step_indices(const std::vector<double> &multipliers) {
  std::vector<int> idx(multipliers.size());
  for (size_t i = 0; i < multipliers.size(); ++i) {
    double snapped = double(round_half_away(multipliers[i] * 4.0)) / 4.0;
    snapped = std::clamp(snapped, 0.5, 1.0);
    idx[i] = int(round_half_away((1.0 - snapped) * 4.0));
  }
  return idx;
}

double step_multiplier_from_index(int index) {
  switch (index) {
    case 0: return 1.0;
    case 1: return 0.75;
    case 2: return 0.5;
    default: return 0.5;  // 0.25 is reserved, floored at 0.5
  }
}

namespace {

struct CanonicalParams {
  double base_step;
  std::array<double, 4> weights;
  double strength;
  bool lookahead;  // step syntax present
};

// Encoder and decoder must derive quantizer math from the transmitted
// fixed-point fields, so the encoder canonicalizes its config up front.
CanonicalParams canonicalize(const SequenceHeader &h) {
  CanonicalParams p;
  p.base_step = double(h.base_step_milli) / 1000.0;
  for (int i = 0; i < 4; ++i) p.weights[i] = double(h.weights_milli[i]) / 1000.0;
  p.strength = double(h.lookahead_strength_milli) / 1000.0;
  p.lookahead = (h.flags & SequenceHeader::kFlagLookahead) != 0;
  return p;
}

void update_dpb(DecodedPictureBuffer &dpb, const FrameSchedule &entry,
                const Frame &recon) {
  dpb.last = recon;
  if (entry.frame_type == FrameType::kIntra) {
    dpb.intra = recon;
    dpb.key = recon;
  } else if (entry.layer && entry.layer->id == LayerId::kKey) {
    dpb.key = recon;
  }
}

}  // namespace

EncodeResult encode_sequence(const Sequence &seq, const CodecConfig &config) {
  config.validate();
  if (seq.frames.empty())
    throw Error(ErrorKind::kBadArgument, "empty sequence");
  const int width = seq.frames[0].width();
  const int height = seq.frames[0].height();
  if (width <= 0 || height <= 0)
    throw Error(ErrorKind::kBadArgument, "zero frame dimensions");
  for (const Frame &f : seq.frames)
    if (f.width() != width || f.height() != height)
      throw Error(ErrorKind::kBadArgument, "frames differ in size");
  if (width > 0xFFFF || height > 0xFFFF)
    throw Error(ErrorKind::kBadArgument, "dimensions exceed 16 bits");
  if (config.structure.n_frames != int(seq.frames.size()))
    throw Error(ErrorKind::kBadArgument,
                "config frame count disagrees with sequence");

  SequenceHeader hdr;
  hdr.width = uint16_t(width);
  hdr.height = uint16_t(height);
  hdr.frame_count = uint32_t(seq.frames.size());
  hdr.base_step_milli =
      uint32_t(std::max<int64_t>(1, round_half_away(config.structure.base_step * 1000.0)));
  for (int i = 0; i < 4; ++i)
    hdr.weights_milli[i] = uint16_t(std::max<int64_t>(
        1, round_half_away(config.structure.weights[i] * 1000.0)));
  hdr.intra_period = config.structure.intra_period;
  hdr.fps_num = uint16_t(std::clamp(seq.fps_num, 1, 0xFFFF));
  hdr.fps_den = uint16_t(std::clamp(seq.fps_den, 1, 0xFFFF));
  bool lookahead_active = config.lookahead_enabled &&
                          config.lookahead_strength > 0.0 &&
                          seq.frames.size() > 1;
  hdr.lookahead_strength_milli =
      lookahead_active
          ? uint16_t(round_half_away(config.lookahead_strength * 1000.0))
          : 0;
  lookahead_active = lookahead_active && hdr.lookahead_strength_milli > 0;
  if (lookahead_active) hdr.flags |= SequenceHeader::kFlagLookahead;
  if (config.omega_mode == OmegaMode::kRandomKey)
    hdr.flags |= SequenceHeader::kFlagRandomOmega;
  if (!config.use_key_reference) hdr.flags |= SequenceHeader::kFlagAdjOnly;

  CanonicalParams params = canonicalize(hdr);

  StructureConfig sc = config.structure;
  sc.base_step = params.base_step;
  sc.weights = params.weights;
  std::vector<FrameSchedule> schedule = build_schedule(sc);

  std::vector<Frame> padded;
  padded.reserve(seq.frames.size());
  for (const Frame &f : seq.frames) padded.push_back(pad_to_multiple(f, 16));

  EncodeResult result;
  hdr.serialize(result.bitstream);

  Prng omega_rng(config.random_omega_seed);
  DecodedPictureBuffer dpb;
  double psnr_sum = 0.0;

  for (size_t i = 0; i < seq.frames.size(); ++i) {
    const FrameSchedule &entry = schedule[i];

    uint16_t omega_q8 = 256;
    if (config.omega_mode == OmegaMode::kRandomKey && entry.layer &&
        entry.layer->id == LayerId::kKey)
      omega_q8 = omega_to_q8(omega_rng.uniform(kOmegaMin, kOmegaMax));
    double omega = omega_from_q8(omega_q8);

    FrameCoding fc;
    fc.effective_step =
        params.base_step * entry.quant_multiplier / omega;
    fc.lambda_base = sc.lambda_base;
    fc.step_syntax = lookahead_active &&
                     entry.frame_type == FrameType::kInter;
    fc.key_allowed = config.use_key_reference && entry.refs.size() > 1;

    std::vector<uint8_t> payload;
    Frame recon_padded;
    if (entry.frame_type == FrameType::kIntra) {
      auto [p, r] = encode_intra_frame(padded[i], fc.effective_step);
      payload = std::move(p);
      recon_padded = std::move(r);
    } else {
      std::vector<int> step_indices;
      if (fc.step_syntax) {
        std::vector<double> mults =
            i + 1 < padded.size()
                ? lookahead_weights(padded[i], padded[i + 1], params.strength)
                : std::vector<double>(
                      size_t(padded[i].width() / kBlockSize) *
                          (padded[i].height() / kBlockSize),
                      1.0);
        step_indices = snap_step_indices(mults);
      }
      const Frame *key = fc.key_allowed ? &dpb.key : nullptr;
      InterFrameOutput out =
          encode_inter_frame(padded[i], dpb.last, key, fc, step_indices);
      payload = std::move(out.payload);
      recon_padded = std::move(out.recon);
    }

    FrameHeader fh;
    fh.frame_type = entry.frame_type == FrameType::kIntra ? 0 : 1;
    fh.layer = layer_to_code(entry.layer);
    fh.omega_q8 = omega_q8;
    fh.payload_len = uint32_t(payload.size());
    fh.serialize(result.bitstream);
    result.bitstream.insert(result.bitstream.end(), payload.begin(),
                            payload.end());

    update_dpb(dpb, entry, recon_padded);
    Frame recon = crop(recon_padded, width, height);

    FrameStats stats;
    stats.index = int(i);
    stats.type = entry.frame_type;
    stats.layer = entry.layer;
    stats.omega = omega;
    stats.bits = (FrameHeader::kSize + payload.size()) * 8;
    double p = psnr(seq.frames[i], recon);
    stats.psnr = p;
    double sse = 0.0;
    for (int y = 0; y < height; ++y)
      for (int x = 0; x < width; ++x) {
        double d = double(seq.frames[i].at(x, y)) - double(recon.at(x, y));
        sse += d * d;
      }
    stats.sse = sse;
    result.stats.push_back(stats);
    result.reconstructions.push_back(std::move(recon));
    psnr_sum += std::min(p, 99.0);  // cap the +inf sentinel for averaging
  }

  result.rd.bpp = bpp(result.bitstream.size() * 8, width, height,
                      int(seq.frames.size()));
  result.rd.psnr = psnr_sum / double(seq.frames.size());
  return result;
}

DecodeResult decode_sequence(std::span<const uint8_t> bitstream) {
  DecodeResult result;
  SequenceHeader hdr;
  try {
    hdr = SequenceHeader::parse(bitstream);
  } catch (const Error &e) {
    result.error = DecodeIssue{e.kind(), e.what(), -1};
    return result;
  }

  // reject absurd headers before allocating anything sized by them
  if (size_t(hdr.frame_count) >
      bitstream.size() / FrameHeader::kSize + 1) {
    result.error = DecodeIssue{ErrorKind::kTruncated,
                               "frame count exceeds stream capacity", -1};
    return result;
  }
  if (size_t(hdr.width) * hdr.height > (1u << 26)) {
    result.error = DecodeIssue{ErrorKind::kUnsupported,
                               "frame dimensions too large", -1};
    return result;
  }

  CanonicalParams params = canonicalize(hdr);
  StructureConfig sc;
  sc.n_frames = int(hdr.frame_count);
  sc.intra_period = hdr.intra_period;
  sc.weights = params.weights;
  sc.base_step = params.base_step;
  std::vector<FrameSchedule> schedule;
  try {
    schedule = build_schedule(sc);
  } catch (const Error &e) {
    result.error = DecodeIssue{ErrorKind::kMalformed, e.what(), -1};
    return result;
  }

  const int width = hdr.width;
  const int height = hdr.height;
  const int pw = (width + 15) / 16 * 16;
  const int ph = (height + 15) / 16 * 16;
  const bool adj_only = (hdr.flags & SequenceHeader::kFlagAdjOnly) != 0;

  result.sequence.fps_num = hdr.fps_num;
  result.sequence.fps_den = hdr.fps_den;

  DecodedPictureBuffer dpb;
  size_t pos = SequenceHeader::kSize;

  for (uint32_t i = 0; i < hdr.frame_count; ++i) {
    const FrameSchedule &entry = schedule[i];
    FrameHeader fh;
    try {
      fh = FrameHeader::parse(bitstream.subspan(pos));
    } catch (const Error &e) {
      result.error = DecodeIssue{e.kind(), e.what(), int(i)};
      return result;
    }
    pos += FrameHeader::kSize;
    if (bitstream.size() - pos < fh.payload_len) {
      result.error =
          DecodeIssue{ErrorKind::kTruncated, "payload extends past stream end",
                      int(i)};
      return result;
    }
    std::span<const uint8_t> payload = bitstream.subspan(pos, fh.payload_len);
    pos += fh.payload_len;

    uint8_t expect_type = entry.frame_type == FrameType::kIntra ? 0 : 1;
    if (fh.frame_type != expect_type || fh.layer != layer_to_code(entry.layer)) {
      result.error = DecodeIssue{ErrorKind::kMalformed,
                                 "frame header disagrees with schedule",
                                 int(i)};
      return result;
    }
    if (fh.omega_q8 < kOmegaQ8Min || fh.omega_q8 > kOmegaQ8Max) {
      result.error = DecodeIssue{ErrorKind::kOmegaRange,
                                 "quality scale outside [0.8, 1.2]", int(i)};
      return result;
    }

    FrameCoding fc;
    fc.effective_step = params.base_step * entry.quant_multiplier /
                        omega_from_q8(fh.omega_q8);
    fc.step_syntax = params.lookahead &&
                     entry.frame_type == FrameType::kInter;
    fc.key_allowed = !adj_only && entry.refs.size() > 1;

    Frame recon_padded;
    bool ok = true;
    try {
      if (entry.frame_type == FrameType::kIntra) {
        recon_padded = decode_intra_frame(payload, pw, ph, fc.effective_step);
      } else {
        const Frame *key = fc.key_allowed ? &dpb.key : nullptr;
        recon_padded =
            decode_inter_frame(payload, pw, ph, dpb.last, key, fc);
      }
    } catch (const Error &) {
      // Corrupt payload: substitute the previous reconstruction (neutral
      // gray at the start) and keep going; lengths in the frame headers
      // keep the rest of the stream decodable.
      ok = false;
      recon_padded = dpb.last.width() > 0 ? dpb.last : Frame(pw, ph, 128);
    }

    update_dpb(dpb, entry, recon_padded);
    result.sequence.frames.push_back(crop(recon_padded, width, height));
    result.frame_ok.push_back(ok);
  }
  return result;
}

}  // namespace ehb

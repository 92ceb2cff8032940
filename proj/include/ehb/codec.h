/*
 *  Copyright (c) 2026 the ehb authors. All rights reserved.
 *
 *  Use of this source code is governed by a BSD-style license
 *  that can be found in the LICENSE file in the root of the source tree.
 */

#ifndef EHB_CODEC_H_
#define EHB_CODEC_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ehb/frame.h"
#include "ehb/metrics.h"
#include "ehb/motion.h"
#include "ehb/structure.h"
#include "ehb/transform.h"

namespace ehb {

enum class OmegaMode : uint8_t { kOff = 0, kRandomKey = 1 };

struct CodecConfig {
  StructureConfig structure;
  bool lookahead_enabled = true;
  // 0 behaves exactly like off. The default keeps the dominant multiplier
  // (1+w)^-s at w ~= 1 on the 0.75 point of the transmitted alphabet.
  double lookahead_strength = 0.4;
  OmegaMode omega_mode = OmegaMode::kOff;
  uint64_t random_omega_seed = 1;
  bool use_key_reference = true;  // off: ADJ/INTRA-only ablation

  void validate() const;
};

// 40-byte little-endian sequence header.
struct SequenceHeader {
  static constexpr char kMagic[4] = {'E', 'H', 'B', '1'};
  static constexpr size_t kSize = 40;

  uint16_t width = 0;
  uint16_t height = 0;
  uint32_t frame_count = 0;
  uint32_t base_step_milli = 0;
  uint16_t weights_milli[4] = {0, 0, 0, 0};
  int32_t intra_period = -1;
  uint8_t flags = 0;  // bit0 lookahead, bit1 random-key omega, bit2 adj-only
  uint16_t fps_num = 25;
  uint16_t fps_den = 1;
  uint16_t lookahead_strength_milli = 0;

  static constexpr uint8_t kFlagLookahead = 1;
  static constexpr uint8_t kFlagRandomOmega = 2;
  static constexpr uint8_t kFlagAdjOnly = 4;

  void serialize(std::vector<uint8_t> &out) const;
  static SequenceHeader parse(std::span<const uint8_t> bytes);
};

// 12-byte little-endian frame header.
struct FrameHeader {
  static constexpr size_t kSize = 12;

  uint8_t frame_type = 0;  // 0 intra, 1 inter
  uint8_t layer = 255;     // 0 Key, 1 High, 2 Low, 255 none
  uint16_t omega_q8 = 256; // round(omega * 256), valid range [205, 307]
  uint32_t payload_len = 0;

  void serialize(std::vector<uint8_t> &out) const;
  static FrameHeader parse(std::span<const uint8_t> bytes);
};

uint16_t omega_to_q8(double omega);
double omega_from_q8(uint16_t q8);

// Reference slots: the previous frame, the most recent key or intra frame,
// and the most recent intra frame (padded reconstructions).
struct DecodedPictureBuffer {
  Frame last;
  Frame key;
  Frame intra;
};

struct FrameStats {
  int index = 0;
  FrameType type = FrameType::kIntra;
  std::optional<Layer> layer;
  double omega = 1.0;
  uint64_t bits = 0;  // frame header + payload
  double sse = 0.0;   // vs the (padded) source handed to the encoder
  double psnr = 0.0;  // vs the source, on original dimensions
};

struct EncodeResult {
  std::vector<uint8_t> bitstream;
  std::vector<Frame> reconstructions;  // original dimensions
  std::vector<FrameStats> stats;
  RdPoint rd;  // bpp over original dimensions, mean luma PSNR
};

EncodeResult encode_sequence(const Sequence &seq, const CodecConfig &config);

struct DecodeIssue {
  ErrorKind kind;
  std::string message;
  int frame_index = -1;
};

struct DecodeResult {
  Sequence sequence;            // fully or partially decoded frames
  std::vector<bool> frame_ok;   // per decoded frame: payload parsed cleanly
  std::optional<DecodeIssue> error;  // stream-level failure, if any

  bool ok() const { return !error.has_value(); }
};

DecodeResult decode_sequence(std::span<const uint8_t> bitstream);

// Encoder-side helpers, exposed for tests.

// Intra frame: per-8x8 DCT, quantize, entropy code; returns the payload and
// the padded reconstruction.
std::pair<std::vector<uint8_t>, Frame> encode_intra_frame(const Frame &padded,
                                                          double step);

struct InterFrameResult {
  std::vector<uint8_t> payload;
  Frame reconstruction;  // padded
  MotionField field;
};

// Inter frame against the buffer's last (and optionally key) slot. An empty
// step_indices means the per-block multiplier syntax is absent; otherwise it
// must hold one 2-bit index per 16x16 block.
InterFrameResult encode_inter_frame(const Frame &padded,
                                    const FrameSchedule &entry,
                                    const DecodedPictureBuffer &dpb,
                                    const QuantPlan &plan,
                                    const std::vector<int> &step_indices,
                                    double lambda_base = 0.1);

// Reference-importance propagation from one future frame: per-16x16-block
// quantizer multipliers in [0.5, 1] (all 1 when strength is 0).
std::vector<double> lookahead_weights(const Frame &cur, const Frame &next,
                                      double strength);

// Multiplier grid snapped to the transmitted 2-bit alphabet
// {1.0, 0.75, 0.5}; index 3 (0.25) is reserved and never produced.
std::vector<int> snap_step_indices(const std::vector<double> &multipliers);

double step_multiplier_from_index(int index);

}  // namespace ehb

#endif  // EHB_CODEC_H_

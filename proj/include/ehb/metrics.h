/*
 *  Copyright (c) 2026 the ehb authors. All rights reserved.
 *
 *  Use of this source code is governed by a BSD-style license
 *  that can be found in the LICENSE file in the root of the source tree.
 */

#ifndef EHB_METRICS_H_
#define EHB_METRICS_H_

#include <array>
#include <vector>

#include "ehb/frame.h"

namespace ehb {

// Luma PSNR in dB; identical frames return +infinity.
double psnr(const Frame &ref, const Frame &rec);

// total_bits / (width * height * n_frames), on original dimensions.
double bpp(uint64_t total_bits, int width, int height, int n_frames);

struct RdPoint {
  double bpp = 0.0;
  double psnr = 0.0;
};

// Rate-distortion curve: at least 4 points, strictly increasing in both
// bpp and psnr once sorted by rate.
class RdCurve {
 public:
  explicit RdCurve(std::vector<RdPoint> points);

  const std::vector<RdPoint> &points() const { return points_; }

 private:
  std::vector<RdPoint> points_;
};

// Bjontegaard delta-rate between two curves: cubic least-squares fits of
// log10(bpp) over psnr, integrated across the overlapping PSNR interval.
// Negative means the test curve saves bitrate vs the anchor.
double bd_rate(const RdCurve &anchor, const RdCurve &test);

// Cubic least-squares fit y(x); returns coefficients c0..c3 for powers of
// (x - x_center). Exposed for the harness and tests.
std::array<double, 4> fit_cubic(const std::vector<double> &x,
                                const std::vector<double> &y,
                                double x_center);

double eval_cubic(const std::array<double, 4> &c, double x, double x_center);

}  // namespace ehb

#endif  // EHB_METRICS_H_

/*
 *  Copyright (c) 2026 the ehb authors. All rights reserved.
 *
 *  Use of this source code is governed by a BSD-style license
 *  that can be found in the LICENSE file in the root of the source tree.
 */

#include "ehb/metrics.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace ehb {

double psnr(const Frame &ref, const Frame &rec) {
  if (!ref.same_dimensions(rec))
    throw Error(ErrorKind::kBadArgument, "PSNR frames differ in size");
  double sse = 0.0;
  const auto &a = ref.luma();
  const auto &b = rec.luma();
  for (size_t i = 0; i < a.size(); ++i) {
    double d = double(a[i]) - double(b[i]);
    sse += d * d;
  }
  if (sse == 0.0) return std::numeric_limits<double>::infinity();
  double mse = sse / double(a.size());
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

double bpp(uint64_t total_bits, int width, int height, int n_frames) {
  if (width <= 0 || height <= 0 || n_frames <= 0)
    throw Error(ErrorKind::kBadArgument, "bpp denominator must be positive");
  return double(total_bits) / (double(width) * height * n_frames);
}

RdCurve::RdCurve(std::vector<RdPoint> points) : points_(std::move(points)) {
  std::sort(points_.begin(), points_.end(),
            [](const RdPoint &a, const RdPoint &b) {
              return a.bpp < b.bpp;
            });
  for (size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].bpp <= 0.0)
      throw Error(ErrorKind::kBadArgument, "RD point with non-positive bpp");
    if (!std::isfinite(points_[i].psnr))
      throw Error(ErrorKind::kBadArgument, "RD point with non-finite PSNR");
    if (i > 0 && (points_[i].bpp <= points_[i - 1].bpp ||
                  points_[i].psnr <= points_[i - 1].psnr))
      throw Error(ErrorKind::kBadArgument, "RD curve not strictly monotone");
  }
}

std::array<double, 4> fit_cubic(const std::vector<double> &x,
                                const std::vector<double> &y,
                                double x_center) {
  if (x.size() != y.size() || x.size() < 4)
    throw Error(ErrorKind::kBadArgument, "cubic fit needs at least 4 points");

  // Normal equations for the centered Vandermonde system.
  double sx[7] = {0};
  double sy[4] = {0};
  for (size_t i = 0; i < x.size(); ++i) {
    double xc = x[i] - x_center;
    double p = 1.0;
    for (int k = 0; k < 7; ++k) {
      sx[k] += p;
      if (k < 4) sy[k] += p * y[i];
      p *= xc;
    }
  }
  double m[4][5];
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) m[r][c] = sx[r + c];
    m[r][4] = sy[r];
  }
  // Gaussian elimination with partial pivoting.
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    if (std::abs(m[pivot][col]) < 1e-12)
      throw Error(ErrorKind::kBadArgument, "degenerate cubic fit");
    std::swap(m[col], m[pivot]);
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      double f = m[r][col] / m[col][col];
      for (int c = col; c < 5; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return {m[0][4] / m[0][0], m[1][4] / m[1][1], m[2][4] / m[2][2],
          m[3][4] / m[3][3]};
}

double eval_cubic(const std::array<double, 4> &c, double x, double x_center) {
  double xc = x - x_center;
  return c[0] + xc * (c[1] + xc * (c[2] + xc * c[3]));
}

namespace {

// Definite integral of the centered cubic over [lo, hi].
double integrate_cubic(const std::array<double, 4> &c, double lo, double hi,
                       double x_center) {
  auto antiderivative = [&](double x) {
    double xc = x - x_center;
    return xc * (c[0] + xc * (c[1] / 2 + xc * (c[2] / 3 + xc * c[3] / 4)));
  };
  return antiderivative(hi) - antiderivative(lo);
}

}  // namespace

double bd_rate(const RdCurve &anchor, const RdCurve &test) {
  const auto &pa = anchor.points();
  const auto &pt = test.points();
  if (pa.size() < 4 || pt.size() < 4)
    throw Error(ErrorKind::kBadArgument, "BD-rate needs 4 points per curve");

  double lo = std::max(pa.front().psnr, pt.front().psnr);
  double hi = std::min(pa.back().psnr, pt.back().psnr);
  if (lo >= hi)
    throw Error(ErrorKind::kBadArgument, "RD curves do not overlap in PSNR");

  double center = (lo + hi) / 2.0;
  auto fit = [center](const std::vector<RdPoint> &pts) {
    std::vector<double> x, y;
    for (const RdPoint &p : pts) {
      x.push_back(p.psnr);
      y.push_back(std::log10(p.bpp));
    }
    return fit_cubic(x, y, center);
  };
  std::array<double, 4> ca = fit(pa);
  std::array<double, 4> ct = fit(pt);

  double avg_diff = (integrate_cubic(ct, lo, hi, center) -
                     integrate_cubic(ca, lo, hi, center)) /
                    (hi - lo);
  return (std::pow(10.0, avg_diff) - 1.0) * 100.0;
}

}  // namespace ehb

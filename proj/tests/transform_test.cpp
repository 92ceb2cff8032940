/*
 *  Copyright (c) 2026 the ehb authors. All rights reserved.
 *
 *  Use of this source code is governed by a BSD-style license
 *  that can be found in the LICENSE file in the root of the source tree.
 */

#include <doctest.h>

#include <cmath>

#include "ehb/prng.h"
#include "ehb/transform.h"

using namespace ehb;

namespace {

std::array<double, 64> random_block(Prng &rng, double lo, double hi) {
  std::array<double, 64> b;
  for (double &v : b) v = rng.uniform(lo, hi);
  return b;
}

// Direct evaluation of one 2-D DCT basis function, independent of the
// transform implementation.
double basis_at(int ky, int kx, int y, int x) {
  const double pi = std::acos(-1.0);
  double ay = ky == 0 ? std::sqrt(1.0 / 8.0) : 0.5;
  double ax = kx == 0 ? std::sqrt(1.0 / 8.0) : 0.5;
  return ay * std::cos((2 * y + 1) * ky * pi / 16.0) * ax *
         std::cos((2 * x + 1) * kx * pi / 16.0);
}

}  // namespace

TEST_CASE("constant block transforms to a pure DC of 1024") {
  std::array<double, 64> block;
  block.fill(128.0);
  CoefBlock c = dct8_forward(block);
  CHECK(c[0] == doctest::Approx(1024.0).epsilon(1e-12));
  for (int i = 1; i < 64; ++i) CHECK(std::abs(c[i]) < 1e-9);

  CoefBlock dc{};
  dc[0] = 1024.0;
  auto back = dct8_inverse(dc);
  for (double v : back) CHECK(v == doctest::Approx(128.0).epsilon(1e-12));
}

TEST_CASE("zero block stays zero") {
  std::array<double, 64> block{};
  CoefBlock c = dct8_forward(block);
  for (double v : c) CHECK(v == 0.0);
}

TEST_CASE("forward/inverse round-trip and Parseval") {
  Prng rng(42);
  for (int trial = 0; trial < 10000; ++trial) {
    auto block = random_block(rng, -256.0, 256.0);
    CoefBlock c = dct8_forward(block);
    auto back = dct8_inverse(c);
    double energy_in = 0.0, energy_out = 0.0;
    for (int i = 0; i < 64; ++i) {
      CHECK(std::abs(back[i] - block[i]) < 1e-9);
      energy_in += block[i] * block[i];
      energy_out += c[i] * c[i];
    }
    CHECK(energy_out == doctest::Approx(energy_in).epsilon(1e-6));
  }
}

TEST_CASE("single AC coefficient reproduces its basis pattern") {
  for (auto [ky, kx] : {std::pair{0, 3}, {2, 0}, {5, 7}, {1, 1}}) {
    CoefBlock c{};
    c[ky * 8 + kx] = 100.0;
    auto pixels = dct8_inverse(c);
    for (int y = 0; y < 8; ++y)
      for (int x = 0; x < 8; ++x)
        CHECK(pixels[y * 8 + x] ==
              doctest::Approx(100.0 * basis_at(ky, kx, y, x)).epsilon(1e-9));
  }
}

TEST_CASE("quantize rounds half away from zero") {
  CoefBlock c{};
  c[0] = 34.0;
  c[1] = -35.0;
  LevelBlock l = quantize(c, 10.0);
  CHECK(l[0] == 3);
  CHECK(l[1] == -4);

  c[2] = 7.49;
  c[3] = 7.5;
  l = quantize(c, 1.0);
  CHECK(l[0] == 34);
  CHECK(l[1] == -35);
  CHECK(l[2] == 7);
  CHECK(l[3] == 8);

  CHECK_THROWS_AS(quantize(c, 0.0), Error);
  CHECK_THROWS_AS(quantize(c, -2.0), Error);
}

TEST_CASE("dequantize bounds the round-trip error by step/2") {
  CoefBlock c{};
  c[0] = 34.0;
  LevelBlock l = quantize(c, 10.0);
  CoefBlock back = dequantize(l, 10.0);
  CHECK(back[0] == doctest::Approx(30.0));
  CHECK(std::abs(back[0] - 34.0) <= 5.0);

  LevelBlock zeros{};
  CoefBlock z = dequantize(zeros, 16.0);
  for (double v : z) CHECK(v == 0.0);

  Prng rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    auto block = random_block(rng, -300.0, 300.0);
    CoefBlock coefs = dct8_forward(block);
    double step = rng.uniform(0.5, 64.0);
    CoefBlock rec = dequantize(quantize(coefs, step), step);
    for (int i = 0; i < 64; ++i)
      CHECK(std::abs(rec[i] - coefs[i]) <= step / 2 + 1e-9);
  }
  // concrete instance: step 16 keeps every coefficient within 8
  for (int trial = 0; trial < 100; ++trial) {
    auto block = random_block(rng, -256.0, 256.0);
    CoefBlock coefs = dct8_forward(block);
    CoefBlock rec = dequantize(quantize(coefs, 16.0), 16.0);
    for (int i = 0; i < 64; ++i) CHECK(std::abs(rec[i] - coefs[i]) <= 8.0);
  }
  CHECK_THROWS_AS(dequantize(zeros, 0.0), Error);
}

TEST_CASE("make_quant_plan combines step, layer and omega") {
  QuantPlan key = make_quant_plan(16.0, {LayerId::kKey, 1.2}, 1.2);
  CHECK(key.effective_step == doctest::Approx(12.172).epsilon(1e-9));

  QuantPlan id = make_quant_plan(16.0, {LayerId::kHigh, 0.9}, 1.0);
  CHECK(id.effective_step == doctest::Approx(16.0 * 1.0541).epsilon(1e-9));

  QuantPlan low = make_quant_plan(16.0, {LayerId::kLow, 0.5}, 0.8);
  CHECK(low.effective_step == doctest::Approx(28.284).epsilon(1e-9));

  CHECK_THROWS_AS(make_quant_plan(16.0, {LayerId::kKey, 1.2}, 0.79), Error);
  CHECK_THROWS_AS(make_quant_plan(16.0, {LayerId::kKey, 1.2}, 1.21), Error);
  CHECK_THROWS_AS(make_quant_plan(0.0, {LayerId::kKey, 1.2}, 1.0), Error);
}

TEST_CASE("make_quant_plan is strictly decreasing in omega") {
  double prev = 1e9;
  for (int i = 80; i <= 120; i += 5) {
    QuantPlan p = make_quant_plan(16.0, {LayerId::kKey, 1.2}, i / 100.0);
    CHECK(p.effective_step < prev);
    prev = p.effective_step;
  }
}

TEST_CASE("PSNR through the transform path is non-increasing in step") {
  Prng rng(11);
  std::vector<std::array<double, 64>> blocks;
  for (int i = 0; i < 10; ++i) blocks.push_back(random_block(rng, 0.0, 255.0));

  double prev_mse = -1.0;
  for (double step : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0}) {
    double mse = 0.0;
    for (const auto &block : blocks) {
      auto rec = dct8_inverse(dequantize(quantize(dct8_forward(block), step),
                                         step));
      for (int i = 0; i < 64; ++i) {
        double d = rec[i] - block[i];
        mse += d * d;
      }
    }
    CHECK(mse >= prev_mse);  // PSNR non-increasing == MSE non-decreasing
    prev_mse = mse;
  }
}

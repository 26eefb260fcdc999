/* Copyright 2026 The aurad Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "aurad/ms_ssim.h"

#include <gtest/gtest.h>

#include <cmath>

#include "aurad/error.h"
#include "support/oracles.h"
#include "support/scenes.h"

namespace aurad {
namespace {

constexpr int kSide = 192;  // smallest convenient size for five scales

// Smooth random texture: sum of a few seeded sinusoids plus noise.
GrayImage texture(std::uint64_t seed, int w = kSide, int h = kSide) {
  SeededRng rng(seed);
  const double fx = rng.uniform(0.02, 0.2), fy = rng.uniform(0.02, 0.2);
  const double px = rng.uniform(0, 6), py = rng.uniform(0, 6);
  std::vector<std::uint8_t> px_out(static_cast<std::size_t>(w) * h);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      const double v = 128 + 60 * std::sin(fx * c + px) + 40 * std::cos(fy * r + py) +
                       rng.uniform(-20, 20);
      px_out[static_cast<std::size_t>(r) * w + c] =
          static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
    }
  }
  return GrayImage(w, h, std::move(px_out));
}

TEST(MsSsimTest, IdentityIsOne) {
  const GrayImage x = texture(1);
  EXPECT_NEAR(ms_ssim(x, x), 1.0, 1e-6);
}

TEST(MsSsimTest, Symmetric) {
  const GrayImage x = texture(2), y = texture(3);
  EXPECT_NEAR(ms_ssim(x, y), ms_ssim(y, x), 1e-12);
}

TEST(MsSsimTest, ConstantImagesReduceToLuminance) {
  // Contrast-structure is exactly 1 for flat inputs, so only the last
  // scale's luminance term survives.
  const double a = 100, b = 140;
  const double c1 = (0.01 * 255) * (0.01 * 255);
  const double l = (2 * a * b + c1) / (a * a + b * b + c1);
  const double expected = std::pow(l, 0.1333);
  EXPECT_NEAR(ms_ssim(GrayImage(kSide, kSide, 100), GrayImage(kSide, kSide, 140)),
              expected, 1e-12);
}

TEST(MsSsimTest, InvertedIsWorse) {
  const GrayImage x = texture(4);
  std::vector<std::uint8_t> inv(x.pixels().begin(), x.pixels().end());
  for (auto& p : inv) p = static_cast<std::uint8_t>(255 - p);
  const double v = ms_ssim(x, GrayImage(kSide, kSide, std::move(inv)));
  EXPECT_LT(v, ms_ssim(x, x));
  EXPECT_GE(v, -1.0);
}

TEST(MsSsimTest, MatchesDirectWindowOracle) {
  for (std::uint64_t seed : {10u, 11u, 12u}) {
    const GrayImage x = texture(seed), y = texture(seed + 100);
    EXPECT_NEAR(ms_ssim(x, y), testing::oracle_ms_ssim(x, y), 1e-9) << seed;
  }
  // Random noise pairs exercise negative contrast terms.
  SeededRng rng(5);
  const GrayImage x = testing::random_image(rng, kSide, kSide);
  const GrayImage y = testing::random_image(rng, kSide, kSide);
  EXPECT_NEAR(ms_ssim(x, y), testing::oracle_ms_ssim(x, y), 1e-9);
}

TEST(MsSsimTest, SingleScaleTermsMatchOracle) {
  const GrayImage x = texture(20, 40, 30), y = texture(21, 40, 30);
  const SsimTerms t = ssim_terms(x, y);
  const auto o = testing::oracle_ssim({x.pixels().begin(), x.pixels().end()},
                                      {y.pixels().begin(), y.pixels().end()}, 40, 30);
  EXPECT_NEAR(t.ssim, o.ssim, 1e-12);
  EXPECT_NEAR(t.cs, o.cs, 1e-12);
}

TEST(MsSsimTest, Errors) {
  EXPECT_THROW(ms_ssim(GrayImage(100, 100, 0), GrayImage(100, 100, 0)),
               TooSmallForScales);
  EXPECT_THROW(ms_ssim(GrayImage(kSide, kSide, 0), GrayImage(kSide, kSide + 2, 0)),
               DimensionMismatch);
  MsSsimConfig cfg;
  cfg.weights = {1.0};
  EXPECT_THROW(ms_ssim(texture(1), texture(1), cfg), ValidationError);
}

TEST(MsSsimTest, FewerScalesFitSmallerImages) {
  MsSsimConfig cfg;
  cfg.scales = 2;
  cfg.weights = {0.5, 0.5};
  const GrayImage x = texture(7, 32, 32);
  EXPECT_NEAR(ms_ssim(x, x, cfg), 1.0, 1e-12);
}

}  // namespace
}  // namespace aurad

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

#include "aurad/overlap_metrics.h"

#include <gtest/gtest.h>

#include "aurad/error.h"
#include "support/scenes.h"

namespace aurad {
namespace {

TEST(OverlapMetricsTest, IdenticalMasks) {
  SeededRng rng(1);
  const RasterMask a = testing::random_mask(rng, 20, 20, 0.3);
  EXPECT_DOUBLE_EQ(dice(a, a), 1.0);
  EXPECT_DOUBLE_EQ(iou(a, a), 1.0);
}

TEST(OverlapMetricsTest, BothEmptyAgree) {
  EXPECT_DOUBLE_EQ(dice(RasterMask(5, 5), RasterMask(5, 5)), 1.0);
  EXPECT_DOUBLE_EQ(iou(RasterMask(5, 5), RasterMask(5, 5)), 1.0);
}

TEST(OverlapMetricsTest, DisjointMasks) {
  const RasterMask a(4, 1, {1, 1, 0, 0});
  const RasterMask b(4, 1, {0, 0, 1, 1});
  EXPECT_DOUBLE_EQ(dice(a, b), 0.0);
  EXPECT_DOUBLE_EQ(iou(a, b), 0.0);
  EXPECT_DOUBLE_EQ(dice(a, RasterMask(4, 1)), 0.0);
}

TEST(OverlapMetricsTest, HandCountedPair) {
  // |A| = |B| = 4, |A n B| = 2.
  const RasterMask a(6, 1, {1, 1, 1, 1, 0, 0});
  const RasterMask b(6, 1, {0, 0, 1, 1, 1, 1});
  EXPECT_DOUBLE_EQ(dice(a, b), 0.5);
  EXPECT_DOUBLE_EQ(iou(a, b), 2.0 / 6.0);
}

TEST(OverlapMetricsTest, DiceDominatesIou) {
  SeededRng rng(1000);
  for (int trial = 0; trial < 1000; ++trial) {
    const RasterMask a = testing::random_mask(rng, 10, 10, rng.uniform());
    const RasterMask b = testing::random_mask(rng, 10, 10, rng.uniform());
    const double d = dice(a, b);
    const double j = iou(a, b);
    EXPECT_GE(d, j);
    // Equality only at the extremes; the two are tied by d = 2j / (1 + j).
    if (d > 0.0 && d < 1.0) EXPECT_GT(d, j);
    EXPECT_NEAR(d, 2 * j / (1 + j), 1e-12);
  }
}

TEST(OverlapMetricsTest, ShapeMismatch) {
  EXPECT_THROW(dice(RasterMask(3, 3), RasterMask(3, 4)), DimensionMismatch);
  EXPECT_THROW(iou(RasterMask(3, 3), RasterMask(4, 3)), DimensionMismatch);
}

}  // namespace
}  // namespace aurad

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

#include "aurad/agreement.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "aurad/error.h"
#include "aurad/seed.h"
#include "support/oracles.h"

namespace aurad {
namespace {

using Rows = std::vector<std::vector<int>>;

const Rows kFourByThree = {{4, 5, 4}, {2, 3, 3}, {5, 5, 4}, {1, 2, 1}};

const Rows kTenByThreeBinary = {{1, 1, 1}, {0, 0, 0}, {1, 0, 1}, {1, 1, 0},
                                {0, 0, 0}, {1, 1, 1}, {0, 1, 0}, {1, 1, 1},
                                {0, 0, 1}, {1, 1, 1}};

TEST(RatingMatrixTest, Validation) {
  EXPECT_THROW(RatingMatrix(Rows{}), ValidationError);
  EXPECT_THROW(RatingMatrix(Rows{{1}, {2}}), ValidationError);
  EXPECT_THROW(RatingMatrix(Rows{{1, 2}, {3}}), ValidationError);
  EXPECT_THROW(RatingMatrix(2, 2, {1, 2, 3}), ValidationError);
  const RatingMatrix m(Rows{{1, 2}, {3, 4}});
  EXPECT_EQ(m.at(1, 0), 3);
}

TEST(IccTest, PerfectAgreementIsOne) {
  const IccResult r = icc_2_1(RatingMatrix(Rows{{1, 1, 1}, {3, 3, 3}, {5, 5, 5}}));
  EXPECT_DOUBLE_EQ(r.ms_e, 0.0);
  EXPECT_DOUBLE_EQ(r.icc, 1.0);
}

TEST(IccTest, FourByThreeMatchesSumOfSquares) {
  const IccResult r = icc_2_1(RatingMatrix(kFourByThree));
  const auto o = testing::oracle_icc(kFourByThree);
  EXPECT_NEAR(r.icc, o.icc, 1e-9);
  EXPECT_NEAR(r.ms_r, o.ms_r, 1e-9);
  EXPECT_NEAR(r.ms_c, o.ms_c, 1e-9);
  EXPECT_NEAR(r.ms_e, o.ms_e, 1e-9);
  // Worked by hand: grand mean 39/12, SSR 259/12, SSC 3/2, SSE 7/6.
  EXPECT_NEAR(r.ms_r, 259.0 / 36, 1e-12);
  EXPECT_NEAR(r.ms_c, 0.75, 1e-12);
  EXPECT_NEAR(r.ms_e, 7.0 / 36, 1e-12);
}

TEST(IccTest, TenByThreeMatchesSumOfSquares) {
  const IccResult r = icc_2_1(RatingMatrix(kTenByThreeBinary));
  EXPECT_NEAR(r.icc, testing::oracle_icc(kTenByThreeBinary).icc, 1e-9);
}

TEST(IccTest, NoiseIsNearZero) {
  SeededRng rng(200);
  Rows rows(200, std::vector<int>(3));
  for (auto& r : rows)
    for (auto& v : r) v = 1 + static_cast<int>(rng.below(5));
  EXPECT_LT(std::abs(icc_2_1(RatingMatrix(rows)).icc), 0.2);
}

TEST(IccTest, Degenerate) {
  EXPECT_THROW(icc_2_1(RatingMatrix(Rows{{3, 3}, {3, 3}})), DegenerateVariance);
  EXPECT_THROW(icc_2_1(RatingMatrix(Rows{{3, 4}})), ValidationError);
}

TEST(KappaTest, UnanimousIsOne) {
  const KappaResult k = fleiss_kappa(RatingMatrix(Rows{{0, 0, 0}, {1, 1, 1}, {1, 1, 1}}), 2);
  EXPECT_DOUBLE_EQ(k.kappa, 1.0);
  EXPECT_DOUBLE_EQ(k.p_bar, 1.0);
}

TEST(KappaTest, TenByThreeMatchesTally) {
  const KappaResult k = fleiss_kappa(RatingMatrix(kTenByThreeBinary), 2);
  const auto o = testing::oracle_kappa(kTenByThreeBinary, 2);
  EXPECT_NEAR(k.kappa, o.kappa, 1e-9);
  EXPECT_NEAR(k.p_bar, o.p_bar, 1e-9);
  EXPECT_NEAR(k.p_bar_e, o.p_bar_e, 1e-9);
}

TEST(KappaTest, FourByThreeFiveCategories) {
  Rows shifted = kFourByThree;
  for (auto& r : shifted)
    for (auto& v : r) v -= 1;
  EXPECT_NEAR(fleiss_kappa(RatingMatrix(shifted), 5).kappa,
              testing::oracle_kappa(shifted, 5).kappa, 1e-9);
}

TEST(KappaTest, Errors) {
  EXPECT_THROW(fleiss_kappa(RatingMatrix(Rows{{1, 1}, {1, 1}}), 2), DegenerateMarginals);
  EXPECT_THROW(fleiss_kappa(RatingMatrix(Rows{{0, 2}, {1, 1}}), 2), OutOfRangeRating);
  EXPECT_THROW(fleiss_kappa(RatingMatrix(Rows{{0, -1}, {1, 1}}), 2), OutOfRangeRating);
}

TEST(AgreementTest, InvariantUnderItemAndRaterPermutation) {
  SeededRng rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    Rows rows(8, std::vector<int>(4));
    for (auto& r : rows)
      for (auto& v : r) v = 1 + static_cast<int>(rng.below(5));
    const double icc = icc_2_1(RatingMatrix(rows)).icc;
    const double kappa = fleiss_kappa(binarize_realism(RatingMatrix(rows)), 2).kappa;
    Rows p = rows;
    std::reverse(p.begin(), p.end());
    for (auto& r : p) std::rotate(r.begin(), r.begin() + 1, r.end());
    EXPECT_NEAR(icc_2_1(RatingMatrix(p)).icc, icc, 1e-12);
    EXPECT_NEAR(fleiss_kappa(binarize_realism(RatingMatrix(p)), 2).kappa, kappa, 1e-12);
  }
}

TEST(AgreementTest, BoundedAboveByOne) {
  SeededRng rng(78);
  for (int trial = 0; trial < 100; ++trial) {
    Rows rows(5, std::vector<int>(3));
    for (auto& r : rows)
      for (auto& v : r) v = 1 + static_cast<int>(rng.below(5));
    try {
      EXPECT_LE(icc_2_1(RatingMatrix(rows)).icc, 1.0 + 1e-12);
      EXPECT_LE(fleiss_kappa(binarize_realism(RatingMatrix(rows)), 2).kappa, 1.0 + 1e-12);
    } catch (const ValidationError&) {
      // Degenerate draws are reported, not bounded.
    }
  }
}

TEST(BinarizeTest, Threshold) {
  const std::vector<int> scores = {5, 4, 3, 2, 1};
  EXPECT_EQ(binarize_realism(scores), (std::vector<int>{1, 1, 0, 0, 0}));
  EXPECT_EQ(binarize_realism(std::vector<int>(4, 3)), std::vector<int>(4, 0));
  EXPECT_EQ(binarize_realism(std::vector<int>(4, 4)), std::vector<int>(4, 1));
  EXPECT_THROW(binarize_realism(0), OutOfRangeRating);
  EXPECT_THROW(binarize_realism(6), OutOfRangeRating);
  for (int s = 1; s < 5; ++s) EXPECT_LE(binarize_realism(s), binarize_realism(s + 1));
}

TEST(MeanTest, ReaderAverage) {
  const std::vector<double> rates = {0.34, 0.56, 0.34};
  EXPECT_NEAR(mean(rates), 0.41, 0.005);
  EXPECT_THROW(mean(std::vector<double>{}), DegenerateInput);
}

}  // namespace
}  // namespace aurad

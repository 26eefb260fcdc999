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

#include "aurad/frechet.h"

#include <gtest/gtest.h>

#include <cmath>

#include "aurad/error.h"
#include "aurad/seed.h"
#include "support/oracles.h"
#include "support/scenes.h"

namespace aurad {
namespace {

using testing::Matrix;

FeatureGaussian gaussian_1d(double mean, double var) {
  return FeatureGaussian({mean}, {var});
}

// Random symmetric positive definite matrix A A^T + d I.
Matrix random_spd(SeededRng& rng, std::size_t n) {
  Matrix a(n, std::vector<double>(n));
  for (auto& row : a)
    for (auto& v : row) v = rng.uniform(-1, 1);
  Matrix s(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) s[i][j] += a[i][k] * a[j][k];
  for (std::size_t i = 0; i < n; ++i) s[i][i] += 0.1;
  return s;
}

std::vector<double> flatten(const Matrix& m) {
  std::vector<double> out;
  for (const auto& row : m) out.insert(out.end(), row.begin(), row.end());
  return out;
}

TEST(FrechetTest, OneDimensionalFormula) {
  EXPECT_NEAR(frechet_distance(gaussian_1d(0, 1), gaussian_1d(1, 1)), 1.0, 1e-9);
  EXPECT_NEAR(frechet_distance(gaussian_1d(3, 1), gaussian_1d(3, 4)), 1.0, 1e-9);
  SeededRng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const double m1 = rng.uniform(-5, 5), m2 = rng.uniform(-5, 5);
    const double s1 = rng.uniform(0, 3), s2 = rng.uniform(0, 3);
    EXPECT_NEAR(frechet_distance(gaussian_1d(m1, s1 * s1), gaussian_1d(m2, s2 * s2)),
                (m1 - m2) * (m1 - m2) + (s1 - s2) * (s1 - s2), 1e-9);
  }
}

TEST(FrechetTest, SelfDistanceIsZero) {
  SeededRng rng(9);
  for (std::size_t n : {1u, 3u, 8u}) {
    const Matrix s = random_spd(rng, n);
    const FeatureGaussian p(std::vector<double>(n, 0.5), flatten(s));
    EXPECT_NEAR(frechet_distance(p, p), 0.0, 1e-6);
  }
}

TEST(FrechetTest, SymmetricAndMatchesDenmanBeavers) {
  SeededRng rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng.below(6);
    const Matrix s1 = random_spd(rng, n), s2 = random_spd(rng, n);
    std::vector<double> m1(n), m2(n);
    for (auto& v : m1) v = rng.uniform(-2, 2);
    for (auto& v : m2) v = rng.uniform(-2, 2);
    const FeatureGaussian p(m1, flatten(s1)), q(m2, flatten(s2));
    const double d = frechet_distance(p, q);
    EXPECT_NEAR(d, frechet_distance(q, p), 1e-9);
    EXPECT_NEAR(d, testing::oracle_frechet(m1, s1, m2, s2), 1e-8);
    EXPECT_GE(d, 0.0);
  }
}

TEST(FrechetTest, SingularCovariancesAllowed) {
  // Rank-one covariances are PSD, not PD.
  const FeatureGaussian p({0, 0}, {1, 1, 1, 1});
  const FeatureGaussian q({0, 0}, {1, -1, -1, 1});
  // Orthogonal supports: cross term vanishes, distance = Tr S1 + Tr S2.
  EXPECT_NEAR(frechet_distance(p, q), 4.0, 1e-9);
}

TEST(FrechetTest, Errors) {
  EXPECT_THROW(FeatureGaussian({0, 0}, {1, 0, 0}), DimensionMismatch);
  EXPECT_THROW(FeatureGaussian({0, 0}, {1, 0.5, 0.2, 1}), ValidationError);
  EXPECT_THROW(frechet_distance(gaussian_1d(0, 1), FeatureGaussian({0, 0}, {1, 0, 0, 1})),
               DimensionMismatch);
  EXPECT_THROW(frechet_distance(gaussian_1d(0, -1), gaussian_1d(0, 1)), NonPsdCovariance);
  EXPECT_THROW(frechet_distance(gaussian_1d(0, 1), gaussian_1d(0, -1)), NonPsdCovariance);
}

TEST(GaussianStatsTest, HandComputed) {
  const std::vector<FeatureVector> x = {{0.0}, {2.0}};
  const FeatureGaussian g = gaussian_stats(x);
  EXPECT_DOUBLE_EQ(g.mean()[0], 1.0);
  EXPECT_DOUBLE_EQ(g.cov(0, 0), 2.0);
}

TEST(GaussianStatsTest, IdenticalVectorsHaveZeroCovariance) {
  const std::vector<FeatureVector> x(7, FeatureVector{1.5, -2.0, 4.0});
  const FeatureGaussian g = gaussian_stats(x);
  for (double c : g.covariance()) EXPECT_DOUBLE_EQ(c, 0.0);
}

TEST(GaussianStatsTest, MatchesTwoPassOracle) {
  SeededRng rng(12);
  std::vector<FeatureVector> x(50, FeatureVector(3));
  for (auto& v : x)
    for (auto& c : v) c = rng.uniform(-10, 10) + 1000;
  const FeatureGaussian g = gaussian_stats(x);
  std::vector<double> mean;
  Matrix cov;
  testing::oracle_gaussian(x, mean, cov);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(g.mean()[i], mean[i], 1e-9);
    for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(g.cov(i, j), cov[i][j], 1e-9);
  }
}

TEST(GaussianStatsTest, Errors) {
  const std::vector<FeatureVector> one = {{1.0}};
  EXPECT_THROW(gaussian_stats(one), TooFewSamples);
  const std::vector<FeatureVector> ragged = {{1.0}, {1.0, 2.0}};
  EXPECT_THROW(gaussian_stats(ragged), DimensionMismatch);
}

TEST(FeatureTextTest, ParsesSeparatorsAndComments) {
  const auto v = parse_feature_text("# header\n1 2, 3\n\n4,5,6\n  # note\n7\t8 9\n");
  ASSERT_EQ(v.size(), 3u);
  EXPECT_EQ(v[1], (FeatureVector{4, 5, 6}));
  EXPECT_EQ(v[2], (FeatureVector{7, 8, 9}));
  EXPECT_THROW(parse_feature_text("1 2 x\n"), ValidationError);
}

TEST(FeatureTextTest, LoadFile) {
  testing::TempDir dir;
  testing::write_text(dir / "f.txt", "1 2\n3 4\n");
  EXPECT_EQ(load_feature_file(dir / "f.txt").size(), 2u);
  EXPECT_THROW(load_feature_file(dir / "none.txt"), IoError);
}

}  // namespace
}  // namespace aurad

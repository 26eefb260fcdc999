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

#include <benchmark/benchmark.h>

#include "aurad/frechet.h"
#include "aurad/ms_ssim.h"
#include "aurad/overlap_metrics.h"
#include "aurad/seed.h"

namespace aurad {
namespace {

GrayImage noise_image(int n, std::uint64_t seed) {
  SeededRng rng(seed);
  std::vector<std::uint8_t> px(static_cast<std::size_t>(n) * n);
  for (auto& p : px) p = static_cast<std::uint8_t>(rng.below(256));
  return GrayImage(n, n, px);
}

void BM_MsSsim(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const GrayImage x = noise_image(n, 1);
  const GrayImage y = noise_image(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(ms_ssim(x, y));
}
BENCHMARK(BM_MsSsim)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_Dice(benchmark::State& state) {
  SeededRng rng(3);
  const int n = 512;
  const auto coin = [&](int, int) { return rng.below(2) == 1; };
  const RasterMask a = RasterMask::from_predicate(n, n, coin);
  const RasterMask b = RasterMask::from_predicate(n, n, coin);
  for (auto _ : state) benchmark::DoNotOptimize(dice(a, b));
}
BENCHMARK(BM_Dice);

void BM_Frechet(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  SeededRng rng(4);
  auto sample = [&](double shift) {
    std::vector<FeatureVector> v(2 * dim + 10, FeatureVector(dim));
    for (auto& x : v)
      for (auto& c : x) c = rng.uniform(-1, 1) + shift;
    return gaussian_stats(v);
  };
  const FeatureGaussian p = sample(0.0), q = sample(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(frechet_distance(p, q));
}
BENCHMARK(BM_Frechet)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace aurad

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

#include "aurad/prompt_grammar.h"
#include "aurad/seed.h"

namespace aurad {
namespace {

std::vector<std::string> prompts(std::size_t n) {
  SeededRng rng(5);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Finding> f;
    const std::size_t k = 1 + rng.below(4);
    for (std::size_t j = 0; j < k; ++j) {
      f.push_back(Finding::of(kSeverities[rng.below(kSeverities.size())],
                              kPathologyClasses[rng.below(kPathologyClasses.size())],
                              kLocations[rng.below(kLocations.size())]));
    }
    out.push_back(render(f));
  }
  return out;
}

void BM_Parse(benchmark::State& state) {
  const auto texts = prompts(256);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(parse(texts[i++ % texts.size()]));
}
BENCHMARK(BM_Parse);

void BM_Render(benchmark::State& state) {
  std::vector<std::vector<Finding>> lists;
  for (const auto& t : prompts(256)) lists.push_back(parse(t));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(render(lists[i++ % lists.size()]));
}
BENCHMARK(BM_Render);

}  // namespace
}  // namespace aurad

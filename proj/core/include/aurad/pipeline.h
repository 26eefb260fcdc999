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

// Two-stage generation of one sample.
//
// Stage 1 asks the text-to-mask backend for pathology masks and keeps the
// first candidate whose re-caption matches the request. Stage 2 renders an
// image from the accepted masks and keeps the first image that passes every
// filter. The stage-1 masks are reused across stage-2 retries. Each stage
// has its own attempt budget.

#ifndef AURAD_PIPELINE_H_
#define AURAD_PIPELINE_H_

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "aurad/backends.h"
#include "aurad/self_assessment.h"
#include "aurad/severity_policy.h"

namespace aurad {

struct PipelineConfig {
  int max_attempts_stage1 = 3;
  int max_attempts_stage2 = 3;
  MatchPolicy match;
  SeverityPolicy severity;
};

struct FilterVerdict {
  std::string filter;
  double score = 0.0;
  double threshold = 0.0;
  bool pass = false;
  friend bool operator==(const FilterVerdict&, const FilterVerdict&) = default;
};

struct ImageAttempt {
  int attempt_index = 0;
  std::uint64_t seed = 0;
  std::vector<FilterVerdict> verdicts;  // one per filter, in filter order
  bool passed = false;
};

struct StageSeeds {
  std::uint64_t stage1 = 0;  // base seed; attempt i uses stage1 + i
  std::uint64_t stage2 = 0;  // base seed; attempt i uses stage2 + i
};

struct Accepted {
  Candidate masks;
  GrayImage image;
  StageSeeds seeds;
  int stage1_attempts = 0;
  int stage2_attempts = 0;
  std::vector<MatchReport> stage1_reports;
  std::vector<ImageAttempt> stage2_reports;
};

struct Rejection {
  int stage = 0;  // 1 or 2
  std::string reason;
  StageSeeds seeds;
  int stage1_attempts = 0;
  int stage2_attempts = 0;
  std::vector<MatchReport> stage1_reports;
  std::vector<ImageAttempt> stage2_reports;
};

using PipelineResult = std::variant<Accepted, Rejection>;

// Identifies the sample to the filters; only used to fill ScoreContext.
struct SampleKey {
  std::string sample_id;
  std::size_t request_index = 0;
};

// Stage seeds are derived from `seed`. Throws ValidationError when a
// budget is below 1 and BackendFailure when a backend throws.
PipelineResult run_pipeline(const PromptSpec& request, const OrganMap& organ,
                            TextToMaskBackend& text_to_mask,
                            MaskToImageBackend& mask_to_image,
                            std::span<QualityScorer* const> filters,
                            const PipelineConfig& config, std::uint64_t seed,
                            const SampleKey& key = {});

StageSeeds derive_stage_seeds(std::uint64_t seed);

}  // namespace aurad

#endif  // AURAD_PIPELINE_H_

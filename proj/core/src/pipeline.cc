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

#include "aurad/pipeline.h"

#include "aurad/error.h"
#include "aurad/seed.h"

namespace aurad {

StageSeeds derive_stage_seeds(std::uint64_t seed) {
  return {derive_seed({seed, 1}), derive_seed({seed, 2})};
}

PipelineResult run_pipeline(const PromptSpec& request, const OrganMap& organ,
                            TextToMaskBackend& text_to_mask,
                            MaskToImageBackend& mask_to_image,
                            std::span<QualityScorer* const> filters,
                            const PipelineConfig& config, std::uint64_t seed,
                            const SampleKey& key) {
  if (config.max_attempts_stage1 < 1 || config.max_attempts_stage2 < 1) {
    throw ValidationError("max_attempts must be at least 1 for each stage");
  }
  const StageSeeds seeds = derive_stage_seeds(seed);

  RetryOutcome stage1 =
      run_with_retries(request, text_to_mask, organ, config.max_attempts_stage1,
                       seeds.stage1, config.match, config.severity);
  if (!stage1.accepted) {
    Rejection r;
    r.stage = 1;
    r.reason = "no candidate mask matched the prompt in " +
               std::to_string(stage1.attempts_used) + " attempts";
    r.seeds = seeds;
    r.stage1_attempts = stage1.attempts_used;
    r.stage1_reports = std::move(stage1.reports);
    return r;
  }

  std::vector<ImageAttempt> attempts;
  for (int attempt = 0; attempt < config.max_attempts_stage2; ++attempt) {
    ImageAttempt a;
    a.attempt_index = attempt;
    a.seed = seeds.stage2 + static_cast<std::uint64_t>(attempt);
    GrayImage image(1, 1, std::uint8_t{0});
    try {
      image = mask_to_image.generate(request, organ, stage1.accepted->annotations,
                                     a.seed);
    } catch (const BackendFailure&) {
      throw;
    } catch (const std::exception& e) {
      throw BackendFailure(attempt, e.what());
    }
    if (image.width() != organ.width() || image.height() != organ.height()) {
      throw BackendFailure(attempt,
                           "image size does not match the organ map");
    }

    ScoreContext ctx;
    ctx.sample_id = key.sample_id;
    ctx.request_index = key.request_index;
    ctx.attempt_index = attempt;
    ctx.seed = a.seed;
    ctx.prompt = &request;
    ctx.organ = &organ;
    ctx.pathology = stage1.accepted->annotations;
    a.passed = true;
    // Every filter is evaluated so verdicts are complete in the audit log.
    for (QualityScorer* f : filters) {
      const ScoreResult s = f->score(image, ctx);
      a.verdicts.push_back({f->name(), s.score, f->threshold(), s.pass});
      a.passed = a.passed && s.pass;
    }
    const bool passed = a.passed;
    attempts.push_back(std::move(a));
    if (passed) {
      Accepted out{std::move(*stage1.accepted), std::move(image), seeds,
                   stage1.attempts_used, attempt + 1,
                   std::move(stage1.reports), std::move(attempts)};
      return out;
    }
  }

  Rejection r;
  r.stage = 2;
  r.reason = "no image passed every filter in " +
             std::to_string(attempts.size()) + " attempts";
  r.seeds = seeds;
  r.stage1_attempts = stage1.attempts_used;
  r.stage2_attempts = static_cast<int>(attempts.size());
  r.stage1_reports = std::move(stage1.reports);
  r.stage2_reports = std::move(attempts);
  return r;
}

}  // namespace aurad

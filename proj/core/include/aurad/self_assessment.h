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

// Prompt-match validation: re-caption generated masks and compare the result
// with the findings that were requested.

#ifndef AURAD_SELF_ASSESSMENT_H_
#define AURAD_SELF_ASSESSMENT_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "aurad/backends.h"
#include "aurad/finding.h"
#include "aurad/prompt_grammar.h"
#include "aurad/severity_policy.h"

namespace aurad {

enum class SeverityMode { kStrict, kOff };
enum class LocationMode { kStrict, kMajorRegionEquivalent };

struct MatchPolicy {
  SeverityMode severity = SeverityMode::kStrict;
  LocationMode location = LocationMode::kStrict;

  friend bool operator==(const MatchPolicy&, const MatchPolicy&) = default;
};

std::string_view to_string(SeverityMode mode);
std::string_view to_string(LocationMode mode);
std::optional<SeverityMode> severity_mode_from_string(std::string_view s);
std::optional<LocationMode> location_mode_from_string(std::string_view s);

struct SeverityMismatch {
  Finding requested;
  Finding observed;

  friend bool operator==(const SeverityMismatch&,
                         const SeverityMismatch&) = default;
};

struct MatchReport {
  bool matched = false;
  std::vector<Finding> observed;  // the re-caption
  std::vector<Finding> missing;   // requested, not observed
  std::vector<Finding> extra;     // observed, not requested
  // Same class and compatible location but a different severity. Only
  // reported under SeverityMode::kStrict.
  std::vector<SeverityMismatch> severity_mismatches;

  friend bool operator==(const MatchReport&, const MatchReport&) = default;
};

// Multiset comparison. Pairs are formed in three rounds (identical findings,
// then compatible locations with equal severity, then compatible locations
// with any severity) using maximum bipartite matching within each round.
MatchReport match_findings(std::span<const Finding> requested,
                           std::span<const Finding> observed,
                           const MatchPolicy& policy);

MatchReport recaption_and_match(
    const PromptSpec& prompt,
    std::span<const PathologyAnnotation> candidate_masks,
    const OrganMap& organ, const MatchPolicy& policy,
    const SeverityPolicy& severity_policy);

struct Candidate {
  std::vector<PathologyAnnotation> annotations;
  std::uint64_t seed = 0;
  int attempt_index = 0;
};

struct RetryOutcome {
  std::optional<Candidate> accepted;
  int attempts_used = 0;
  std::vector<MatchReport> reports;
};

// Calls the backend with seeds seed, seed + 1, ... and stops at the first
// candidate whose re-caption matches. Never exceeds `max_attempts` calls.
// Backend exceptions are rethrown as BackendFailure with the attempt index.
RetryOutcome run_with_retries(const PromptSpec& request,
                              TextToMaskBackend& backend,
                              const OrganMap& organ, int max_attempts,
                              std::uint64_t seed, const MatchPolicy& policy,
                              const SeverityPolicy& severity_policy);

}  // namespace aurad

#endif  // AURAD_SELF_ASSESSMENT_H_

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

#include "aurad/self_assessment.h"

#include <algorithm>
#include <functional>

#include "aurad/error.h"
#include "aurad/prompt_tool.h"

namespace aurad {
namespace {

bool locations_compatible(const Finding& a, const Finding& b,
                          LocationMode mode) {
  if (a.location.has_value() != b.location.has_value()) return false;
  if (!a.location) return true;
  if (mode == LocationMode::kStrict) return *a.location == *b.location;
  return location_within(*a.location, *b.location) ||
         location_within(*b.location, *a.location);
}

using PairPredicate = std::function<bool(const Finding&, const Finding&)>;

// Kuhn's augmenting-path matching over the still-unpaired entries.
void match_round(std::span<const Finding> requested,
                 std::span<const Finding> observed, const PairPredicate& ok,
                 std::vector<int>& req_to_obs, std::vector<int>& obs_to_req) {
  const std::size_t n = requested.size();
  const std::size_t m = observed.size();
  std::vector<char> req_free(n), obs_free(m);
  for (std::size_t i = 0; i < n; ++i) req_free[i] = req_to_obs[i] < 0;
  for (std::size_t j = 0; j < m; ++j) obs_free[j] = obs_to_req[j] < 0;

  std::vector<int> round_obs_to_req(m, -1);
  std::vector<char> seen;
  std::function<bool(std::size_t)> augment = [&](std::size_t i) -> bool {
    for (std::size_t j = 0; j < m; ++j) {
      if (!obs_free[j] || seen[j] || !ok(requested[i], observed[j])) continue;
      seen[j] = 1;
      if (round_obs_to_req[j] < 0 ||
          augment(static_cast<std::size_t>(round_obs_to_req[j]))) {
        round_obs_to_req[j] = static_cast<int>(i);
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (!req_free[i]) continue;
    seen.assign(m, 0);
    augment(i);
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (round_obs_to_req[j] >= 0) {
      obs_to_req[j] = round_obs_to_req[j];
      req_to_obs[static_cast<std::size_t>(round_obs_to_req[j])] =
          static_cast<int>(j);
    }
  }
}

}  // namespace

std::string_view to_string(SeverityMode mode) {
  return mode == SeverityMode::kStrict ? "strict" : "off";
}

std::string_view to_string(LocationMode mode) {
  return mode == LocationMode::kStrict ? "strict" : "major-region-equivalent";
}

std::optional<SeverityMode> severity_mode_from_string(std::string_view s) {
  if (s == "strict") return SeverityMode::kStrict;
  if (s == "off") return SeverityMode::kOff;
  return std::nullopt;
}

std::optional<LocationMode> location_mode_from_string(std::string_view s) {
  if (s == "strict") return LocationMode::kStrict;
  if (s == "major-region-equivalent" || s == "major-region") {
    return LocationMode::kMajorRegionEquivalent;
  }
  return std::nullopt;
}

MatchReport match_findings(std::span<const Finding> requested,
                           std::span<const Finding> observed,
                           const MatchPolicy& policy) {
  std::vector<int> req_to_obs(requested.size(), -1);
  std::vector<int> obs_to_req(observed.size(), -1);

  match_round(requested, observed,
              [](const Finding& a, const Finding& b) { return a == b; },
              req_to_obs, obs_to_req);
  match_round(
      requested, observed,
      [&](const Finding& a, const Finding& b) {
        return a.disease == b.disease && a.severity == b.severity &&
               locations_compatible(a, b, policy.location);
      },
      req_to_obs, obs_to_req);

  std::vector<int> severity_round(requested.size(), -1);
  {
    std::vector<int> r2o = req_to_obs;
    std::vector<int> o2r = obs_to_req;
    match_round(
        requested, observed,
        [&](const Finding& a, const Finding& b) {
          return a.disease == b.disease &&
                 locations_compatible(a, b, policy.location);
        },
        r2o, o2r);
    for (std::size_t i = 0; i < requested.size(); ++i) {
      if (req_to_obs[i] < 0 && r2o[i] >= 0) severity_round[i] = r2o[i];
    }
    req_to_obs = std::move(r2o);
    obs_to_req = std::move(o2r);
  }

  MatchReport report;
  report.observed.assign(observed.begin(), observed.end());
  for (std::size_t i = 0; i < requested.size(); ++i) {
    if (req_to_obs[i] < 0) {
      report.missing.push_back(requested[i]);
    } else if (severity_round[i] >= 0 &&
               policy.severity == SeverityMode::kStrict) {
      report.severity_mismatches.push_back(
          {requested[i], observed[static_cast<std::size_t>(severity_round[i])]});
    }
  }
  for (std::size_t j = 0; j < observed.size(); ++j) {
    if (obs_to_req[j] < 0) report.extra.push_back(observed[j]);
  }
  report.matched = report.missing.empty() && report.extra.empty() &&
                   report.severity_mismatches.empty();
  return report;
}

MatchReport recaption_and_match(
    const PromptSpec& prompt,
    std::span<const PathologyAnnotation> candidate_masks,
    const OrganMap& organ, const MatchPolicy& policy,
    const SeverityPolicy& severity_policy) {
  const std::vector<Finding> observed =
      caption(organ, candidate_masks, severity_policy);
  return match_findings(prompt.findings(), observed, policy);
}

RetryOutcome run_with_retries(const PromptSpec& request,
                              TextToMaskBackend& backend,
                              const OrganMap& organ, int max_attempts,
                              std::uint64_t seed, const MatchPolicy& policy,
                              const SeverityPolicy& severity_policy) {
  if (max_attempts < 1) {
    throw ValidationError("max_attempts must be at least 1");
  }
  RetryOutcome outcome;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    const std::uint64_t attempt_seed = seed + static_cast<std::uint64_t>(attempt);
    std::vector<PathologyAnnotation> masks;
    try {
      masks = backend.generate(request, organ, attempt_seed);
    } catch (const BackendFailure&) {
      throw;
    } catch (const std::exception& e) {
      throw BackendFailure(attempt, e.what());
    }
    outcome.attempts_used = attempt + 1;
    outcome.reports.push_back(
        recaption_and_match(request, masks, organ, policy, severity_policy));
    if (outcome.reports.back().matched) {
      outcome.accepted = Candidate{std::move(masks), attempt_seed, attempt};
      break;
    }
  }
  return outcome;
}

}  // namespace aurad

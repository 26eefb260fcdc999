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

#include <gtest/gtest.h>

#include <algorithm>

#include "aurad/error.h"
#include "aurad/prompt_tool.h"
#include "aurad/stub_backends.h"
#include "support/scenes.h"

namespace aurad {
namespace {

using testing::chest_organ;
using testing::rectangle;

Finding F(Severity s, DiseaseClass c, Location l) { return Finding::of(s, c, l); }

// Produces the stub's masks on the scheduled attempt and nothing otherwise.
class ScriptedBackend : public TextToMaskBackend {
 public:
  ScriptedBackend(std::string schedule) : schedule_(std::move(schedule)) {}
  std::vector<PathologyAnnotation> generate(const PromptSpec& prompt,
                                            const OrganMap& organ,
                                            std::uint64_t seed) override {
    seeds.push_back(seed);
    const std::size_t i = std::min(calls++, schedule_.size() - 1);
    if (schedule_[i] == 'E') throw std::runtime_error("backend crashed");
    if (schedule_[i] != 'P') return {};
    return stub_.generate(prompt, organ, seed);
  }
  std::string name() const override { return "scripted"; }

  std::size_t calls = 0;
  std::vector<std::uint64_t> seeds;

 private:
  std::string schedule_;
  StubTextToMask stub_;
};

const PromptSpec kRequest({F(Severity::kMild, DiseaseClass::kNodule,
                             Location::kRightUpperLung)});

TEST(MatchFindingsTest, IdenticalListsMatch) {
  const std::vector<Finding> f = {
      F(Severity::kMild, DiseaseClass::kMass, Location::kHeart),
      F(Severity::kSevere, DiseaseClass::kEffusion, Location::kLeftLowerLung)};
  EXPECT_TRUE(match_findings(f, f, {}).matched);
}

TEST(MatchFindingsTest, MissingFinding) {
  const std::vector<Finding> requested = {
      F(Severity::kMild, DiseaseClass::kMass, Location::kHeart),
      F(Severity::kMild, DiseaseClass::kNodule, Location::kLeftUpperLung)};
  const std::vector<Finding> observed = {requested[0]};
  const MatchReport r = match_findings(requested, observed, {});
  EXPECT_FALSE(r.matched);
  ASSERT_EQ(r.missing.size(), 1u);
  EXPECT_EQ(r.missing[0], requested[1]);
  EXPECT_TRUE(r.extra.empty());
}

TEST(MatchFindingsTest, ExtraFinding) {
  const std::vector<Finding> requested = {
      F(Severity::kMild, DiseaseClass::kMass, Location::kHeart)};
  const std::vector<Finding> observed = {
      requested[0], F(Severity::kMild, DiseaseClass::kMass, Location::kMediastinum)};
  const MatchReport r = match_findings(requested, observed, {});
  EXPECT_FALSE(r.matched);
  EXPECT_EQ(r.extra.size(), 1u);
}

TEST(MatchFindingsTest, SeverityModes) {
  const std::vector<Finding> requested = {
      F(Severity::kMild, DiseaseClass::kPneumothorax, Location::kLeftLung)};
  const std::vector<Finding> observed = {
      F(Severity::kModerate, DiseaseClass::kPneumothorax, Location::kLeftLung)};
  const MatchReport strict = match_findings(requested, observed, {});
  EXPECT_FALSE(strict.matched);
  ASSERT_EQ(strict.severity_mismatches.size(), 1u);
  EXPECT_EQ(strict.severity_mismatches[0].observed, observed[0]);
  EXPECT_TRUE(strict.missing.empty());
  EXPECT_TRUE(strict.extra.empty());
  EXPECT_TRUE(match_findings(requested, observed, {SeverityMode::kOff}).matched);
}

TEST(MatchFindingsTest, MajorRegionEquivalence) {
  const std::vector<Finding> requested = {
      F(Severity::kMild, DiseaseClass::kMass, Location::kLeftUpperLung)};
  const std::vector<Finding> observed = {
      F(Severity::kMild, DiseaseClass::kMass, Location::kLeftLung)};
  EXPECT_FALSE(match_findings(requested, observed, {}).matched);
  const MatchPolicy loose{SeverityMode::kStrict, LocationMode::kMajorRegionEquivalent};
  EXPECT_TRUE(match_findings(requested, observed, loose).matched);
  const std::vector<Finding> wrong_side = {
      F(Severity::kMild, DiseaseClass::kMass, Location::kRightLung)};
  EXPECT_FALSE(match_findings(requested, wrong_side, loose).matched);
}

TEST(MatchFindingsTest, ExactPairsTakePriority) {
  // The exact pair must not be consumed by the looser rounds.
  const MatchPolicy loose{SeverityMode::kStrict, LocationMode::kMajorRegionEquivalent};
  const std::vector<Finding> requested = {
      F(Severity::kMild, DiseaseClass::kMass, Location::kLeftLung),
      F(Severity::kMild, DiseaseClass::kMass, Location::kLeftUpperLung)};
  const std::vector<Finding> observed = {
      F(Severity::kMild, DiseaseClass::kMass, Location::kLeftUpperLung),
      F(Severity::kMild, DiseaseClass::kMass, Location::kLeftLung)};
  EXPECT_TRUE(match_findings(requested, observed, loose).matched);
}

TEST(MatchFindingsTest, PermutationDoesNotChangeVerdict) {
  SeededRng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Finding> requested, observed;
    for (int i = 0; i < 3; ++i) {
      requested.push_back(F(kSeverities[rng.below(2)], kPathologyClasses[rng.below(2)],
                            kLocations[rng.below(3)]));
      observed.push_back(F(kSeverities[rng.below(2)], kPathologyClasses[rng.below(2)],
                           kLocations[rng.below(3)]));
    }
    for (const MatchPolicy& p :
         {MatchPolicy{}, MatchPolicy{SeverityMode::kOff, LocationMode::kStrict}}) {
      const bool base = match_findings(requested, observed, p).matched;
      auto r2 = requested;
      auto o2 = observed;
      std::reverse(r2.begin(), r2.end());
      std::rotate(o2.begin(), o2.begin() + 1, o2.end());
      EXPECT_EQ(match_findings(r2, o2, p).matched, base);
    }
  }
}

TEST(RecaptionTest, SelfConsistentFixtureMatches) {
  const OrganMap organ = chest_organ();
  StubTextToMask stub;
  const auto masks = stub.generate(kRequest, organ, 9);
  EXPECT_TRUE(recaption_and_match(kRequest, masks, organ, {}, {}).matched);
}

TEST(RecaptionTest, ModerateStripAgainstMildRequest) {
  const OrganMap organ = chest_organ();
  const ZoneMap zones = define_organ_parts(organ);
  // A vertical strip through all three left thirds, a fifth of the lung.
  const RasterMask strip = intersect(rectangle(128, 128, 0, 88, 127, 95),
                                     zones.zone(Location::kLeftLung));
  const std::vector<PathologyAnnotation> masks = {{DiseaseClass::kPneumothorax, strip}};
  ASSERT_EQ(caption(organ, zones, masks, {}),
            std::vector<Finding>{F(Severity::kModerate, DiseaseClass::kPneumothorax,
                                   Location::kLeftLung)});
  const PromptSpec request(
      {F(Severity::kMild, DiseaseClass::kPneumothorax, Location::kLeftLung)});
  EXPECT_FALSE(recaption_and_match(request, masks, organ, {}, {}).matched);
  EXPECT_TRUE(recaption_and_match(request, masks, organ,
                                  {SeverityMode::kOff, LocationMode::kStrict}, {})
                  .matched);
}

TEST(RecaptionTest, PartialRealizationReportsMissing) {
  const OrganMap organ = chest_organ();
  const PromptSpec request(
      {F(Severity::kMild, DiseaseClass::kNodule, Location::kRightUpperLung),
       F(Severity::kMild, DiseaseClass::kMass, Location::kMediastinum)});
  StubTextToMask stub;
  const auto masks = stub.generate(PromptSpec({request.findings()[0]}), organ, 1);
  const MatchReport r = recaption_and_match(request, masks, organ, {}, {});
  EXPECT_FALSE(r.matched);
  EXPECT_EQ(r.missing.size(), 1u);
}

TEST(RecaptionTest, OrderOfMasksIrrelevant) {
  const OrganMap organ = chest_organ();
  const PromptSpec request(
      {F(Severity::kMild, DiseaseClass::kNodule, Location::kRightUpperLung),
       F(Severity::kModerate, DiseaseClass::kMass, Location::kMediastinum)});
  StubTextToMask stub;
  auto masks = stub.generate(request, organ, 4);
  const bool base = recaption_and_match(request, masks, organ, {}, {}).matched;
  std::reverse(masks.begin(), masks.end());
  EXPECT_EQ(recaption_and_match(request, masks, organ, {}, {}).matched, base);
}

TEST(RetryTest, EarlyStopOnFirstPass) {
  ScriptedBackend backend("P");
  const auto out = run_with_retries(kRequest, backend, chest_organ(), 5, 100, {}, {});
  ASSERT_TRUE(out.accepted);
  EXPECT_EQ(out.attempts_used, 1);
  EXPECT_EQ(backend.calls, 1u);
  EXPECT_EQ(out.accepted->seed, 100u);
}

TEST(RetryTest, ExhaustionReturnsAllReports) {
  ScriptedBackend backend("F");
  const auto out = run_with_retries(kRequest, backend, chest_organ(), 5, 100, {}, {});
  EXPECT_FALSE(out.accepted);
  EXPECT_EQ(out.attempts_used, 5);
  EXPECT_EQ(out.reports.size(), 5u);
  EXPECT_EQ(backend.calls, 5u);
}

TEST(RetryTest, PassOnThirdAttempt) {
  ScriptedBackend backend("FFP");
  const auto out = run_with_retries(kRequest, backend, chest_organ(), 5, 40, {}, {});
  ASSERT_TRUE(out.accepted);
  EXPECT_EQ(out.attempts_used, 3);
  EXPECT_EQ(out.accepted->attempt_index, 2);
  EXPECT_EQ(backend.seeds, (std::vector<std::uint64_t>{40, 41, 42}));
}

TEST(RetryTest, NeverExceedsBudget) {
  for (int budget = 1; budget <= 6; ++budget) {
    ScriptedBackend backend("FFFFFFFFP");
    run_with_retries(kRequest, backend, chest_organ(), budget, 0, {}, {});
    EXPECT_LE(backend.calls, static_cast<std::size_t>(budget));
  }
  ScriptedBackend backend("P");
  EXPECT_THROW(run_with_retries(kRequest, backend, chest_organ(), 0, 0, {}, {}),
               ValidationError);
}

TEST(RetryTest, BackendFailureCarriesAttempt) {
  ScriptedBackend backend("FE");
  try {
    run_with_retries(kRequest, backend, chest_organ(), 5, 0, {}, {});
    FAIL();
  } catch (const BackendFailure& e) {
    EXPECT_EQ(e.attempt_index(), 1);
  }
}

TEST(RetryTest, ReplayIsIdentical) {
  StubTextToMask a, b;
  const OrganMap organ = chest_organ();
  const auto x = run_with_retries(kRequest, a, organ, 3, 77, {}, {});
  const auto y = run_with_retries(kRequest, b, organ, 3, 77, {}, {});
  ASSERT_TRUE(x.accepted && y.accepted);
  EXPECT_EQ(x.accepted->annotations, y.accepted->annotations);
  EXPECT_EQ(x.reports, y.reports);
}

}  // namespace
}  // namespace aurad

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

// Deterministic stand-ins for the generative backends and the image filters.
//
// StubTextToMask draws one blob per finding inside the named zone, sized so
// the prompt tool grades it into the requested severity band. A blob is grown
// pixel by pixel from a point near the zone centre, always taking the
// frontier pixel with the smallest elliptical distance, so it stays connected
// and inside the zone. Whole-lung findings use a tall thin ellipse that
// reaches all three thirds; `bilateral lung` puts one blob in each lung.
// Cardiomegaly widens every heart row until the cardiothoracic ratio falls
// in the requested band. Each blob is checked against the prompt tool before
// it is returned; a few jittered retries are made before giving up with
// UnplaceableFinding.

#ifndef AURAD_STUB_BACKENDS_H_
#define AURAD_STUB_BACKENDS_H_

#include <memory>
#include <string>
#include <string_view>

#include "aurad/backends.h"
#include "aurad/severity_policy.h"

namespace aurad {

class StubTextToMask final : public TextToMaskBackend {
 public:
  explicit StubTextToMask(SeverityPolicy policy = {});

  std::vector<PathologyAnnotation> generate(const PromptSpec& prompt,
                                            const OrganMap& organ,
                                            std::uint64_t seed) override;
  std::string name() const override { return "stub"; }

  // Realizes a single finding. Exposed for tests.
  RasterMask place(const Finding& finding, const OrganMap& organ,
                   std::uint64_t seed) const;

 private:
  SeverityPolicy policy_;
};

// Flat organ intensities, brighter pathology, seeded noise.
class StubMaskToImage final : public MaskToImageBackend {
 public:
  GrayImage generate(const PromptSpec& prompt, const OrganMap& organ,
                     std::span<const PathologyAnnotation> pathology,
                     std::uint64_t seed) override;
  std::string name() const override { return "stub"; }
};

class PassAllScorer final : public QualityScorer {
 public:
  ScoreResult score(const GrayImage&, const ScoreContext&) override {
    return {1.0, true};
  }
  double threshold() const override { return 0.5; }
  std::string name() const override { return "pass-all"; }
};

class RejectAllScorer final : public QualityScorer {
 public:
  ScoreResult score(const GrayImage&, const ScoreContext&) override {
    return {0.0, false};
  }
  double threshold() const override { return 0.5; }
  std::string name() const override { return "reject-all"; }
};

// Verdicts scripted per stage-2 attempt: pattern "FP" fails the first image
// of every request and passes the second. Attempts past the end of the
// pattern reuse its last character.
class ScheduleScorer final : public QualityScorer {
 public:
  explicit ScheduleScorer(std::string pattern);
  ScoreResult score(const GrayImage&, const ScoreContext& context) override;
  double threshold() const override { return 0.5; }
  std::string name() const override { return "schedule:" + pattern_; }

 private:
  std::string pattern_;
};

// Fails every image of every n-th request (request_index % n == n - 1).
class RejectEveryScorer final : public QualityScorer {
 public:
  explicit RejectEveryScorer(int n);
  ScoreResult score(const GrayImage&, const ScoreContext& context) override;
  double threshold() const override { return 0.5; }
  std::string name() const override {
    return "reject-every:" + std::to_string(n_);
  }

 private:
  int n_;
};

// Score is the population standard deviation of pixel intensities.
class ContrastScorer final : public QualityScorer {
 public:
  explicit ContrastScorer(double min_std);
  ScoreResult score(const GrayImage& image, const ScoreContext&) override;
  double threshold() const override { return min_std_; }
  std::string name() const override;

 private:
  double min_std_;
};

// Parses "pass-all", "reject-all", "schedule:<P|F...>", "reject-every:<n>"
// or "contrast:<min_std>". Throws ValidationError for anything else.
std::unique_ptr<QualityScorer> make_scorer(std::string_view spec);

}  // namespace aurad

#endif  // AURAD_STUB_BACKENDS_H_

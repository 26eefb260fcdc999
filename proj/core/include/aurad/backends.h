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

// Pluggable generators and image filters for the two-stage pipeline.
//
// Implementations must be deterministic for a fixed (inputs, seed) and must
// tolerate concurrent calls from several sample workers. Stateful
// implementations can be wrapped in the Serialized* adapters below.

#ifndef AURAD_BACKENDS_H_
#define AURAD_BACKENDS_H_

#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "aurad/mask.h"
#include "aurad/prompt_grammar.h"

namespace aurad {

// Stage 1: organ-only anatomy plus prompt to pathology masks. Output masks
// must match the organ map's dimensions.
class TextToMaskBackend {
 public:
  virtual ~TextToMaskBackend() = default;
  virtual std::vector<PathologyAnnotation> generate(const PromptSpec& prompt,
                                                    const OrganMap& organ,
                                                    std::uint64_t seed) = 0;
  virtual std::string name() const = 0;
};

// Stage 2: masks to a grayscale image of the organ map's dimensions.
class MaskToImageBackend {
 public:
  virtual ~MaskToImageBackend() = default;
  virtual GrayImage generate(const PromptSpec& prompt, const OrganMap& organ,
                             std::span<const PathologyAnnotation> pathology,
                             std::uint64_t seed) = 0;
  virtual std::string name() const = 0;
};

struct ScoreContext {
  std::string sample_id;
  std::size_t request_index = 0;
  int attempt_index = 0;
  std::uint64_t seed = 0;
  const PromptSpec* prompt = nullptr;
  const OrganMap* organ = nullptr;
  std::span<const PathologyAnnotation> pathology;
};

struct ScoreResult {
  double score = 0.0;
  bool pass = false;
};

// Image-stage filter (realism discriminator, diagnostic classifier, ...).
// `pass` must agree with `score >= threshold()`.
class QualityScorer {
 public:
  virtual ~QualityScorer() = default;
  virtual ScoreResult score(const GrayImage& image,
                            const ScoreContext& context) = 0;
  virtual double threshold() const = 0;
  virtual std::string name() const = 0;
};

class SerializedTextToMask final : public TextToMaskBackend {
 public:
  explicit SerializedTextToMask(std::shared_ptr<TextToMaskBackend> inner)
      : inner_(std::move(inner)) {}
  std::vector<PathologyAnnotation> generate(const PromptSpec& prompt,
                                            const OrganMap& organ,
                                            std::uint64_t seed) override {
    std::lock_guard<std::mutex> lock(mu_);
    return inner_->generate(prompt, organ, seed);
  }
  std::string name() const override { return inner_->name(); }

 private:
  std::shared_ptr<TextToMaskBackend> inner_;
  std::mutex mu_;
};

class SerializedMaskToImage final : public MaskToImageBackend {
 public:
  explicit SerializedMaskToImage(std::shared_ptr<MaskToImageBackend> inner)
      : inner_(std::move(inner)) {}
  GrayImage generate(const PromptSpec& prompt, const OrganMap& organ,
                     std::span<const PathologyAnnotation> pathology,
                     std::uint64_t seed) override {
    std::lock_guard<std::mutex> lock(mu_);
    return inner_->generate(prompt, organ, pathology, seed);
  }
  std::string name() const override { return inner_->name(); }

 private:
  std::shared_ptr<MaskToImageBackend> inner_;
  std::mutex mu_;
};

class SerializedScorer final : public QualityScorer {
 public:
  explicit SerializedScorer(std::shared_ptr<QualityScorer> inner)
      : inner_(std::move(inner)) {}
  ScoreResult score(const GrayImage& image,
                    const ScoreContext& context) override {
    std::lock_guard<std::mutex> lock(mu_);
    return inner_->score(image, context);
  }
  double threshold() const override { return inner_->threshold(); }
  std::string name() const override { return inner_->name(); }

 private:
  std::shared_ptr<QualityScorer> inner_;
  std::mutex mu_;
};

}  // namespace aurad

#endif  // AURAD_BACKENDS_H_

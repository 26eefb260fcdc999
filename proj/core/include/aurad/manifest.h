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

// Dataset assembly: runs the pipeline over a list of requests and persists
// the accepted (prompt, masks, image) triplets.
//
// Layout under the output directory:
//
//   manifest.json                       written once, atomically
//   rejections.ndjson                   one JSON object per rejected request
//   samples/<sample_id>/organ.png
//   samples/<sample_id>/<sample_id>__<Class>.png
//   samples/<sample_id>/image.png
//
// Manifest keys are sorted and every path is relative to the manifest. The
// canonical form leaves out `created`, so two runs with the same inputs and
// seed produce byte-identical canonical manifests.

#ifndef AURAD_MANIFEST_H_
#define AURAD_MANIFEST_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <nlohmann/json.hpp>
#include <span>
#include <string>
#include <vector>

#include "aurad/pipeline.h"

namespace aurad {

inline constexpr int kManifestVersion = 1;

struct PathologyFile {
  DiseaseClass disease;
  std::string path;
};

struct SampleRecord {
  std::string sample_id;
  std::size_t request_index = 0;
  PromptSpec prompt{{Finding::no_finding()}};
  std::string organ_source;  // file name of the sampled organ map
  std::string organ_path;
  std::vector<PathologyFile> pathology;
  std::string image_path;
  std::uint64_t request_seed = 0;
  StageSeeds stage_seeds;
  std::uint64_t mask_seed = 0;   // seed of the accepted stage-1 attempt
  std::uint64_t image_seed = 0;  // seed of the accepted stage-2 attempt
  int stage1_attempts = 0;
  int stage2_attempts = 0;
  std::vector<FilterVerdict> verdicts;
  std::string provenance = "synthesized";
};

struct RejectionRecord {
  std::string sample_id;
  std::size_t request_index = 0;
  std::string prompt;
  int stage = 0;  // 1, 2, or 0 when the sample failed with an error
  std::string reason;
  nlohmann::json details;
};

struct BuildOptions {
  std::filesystem::path out_dir;
  std::uint64_t seed = 0;
  PipelineConfig pipeline;
  unsigned threads = 0;  // 0 picks std::thread::hardware_concurrency()
  // ISO-8601 creation time; defaults to the system clock.
  std::function<std::string()> clock;
};

struct BuildResult {
  std::vector<SampleRecord> records;
  std::vector<RejectionRecord> rejections;
  std::filesystem::path manifest_path;
  std::filesystem::path rejection_log_path;
  nlohmann::json manifest;
};

// Request file: one prompt per line; blank lines and '#' comments skipped.
// Parse errors are rethrown with the line number.
std::vector<PromptSpec> load_requests(const std::filesystem::path& path);

// A directory yields its *.png files sorted by name; a file yields itself.
std::vector<std::filesystem::path> list_organ_files(
    const std::filesystem::path& source);

// Organ map index used for request `i`.
std::size_t organ_index(std::uint64_t seed, std::size_t request_index,
                        std::size_t organ_count);

std::string sample_id_for(std::size_t request_index);

// Per-sample failures become RejectionRecords with stage 0. Failing to
// create the output directory or to write the manifest throws IoError.
BuildResult build_dataset(std::span<const PromptSpec> requests,
                          std::span<const std::filesystem::path> organ_files,
                          TextToMaskBackend& text_to_mask,
                          MaskToImageBackend& mask_to_image,
                          std::span<QualityScorer* const> filters,
                          const BuildOptions& options);

nlohmann::json to_json(const SampleRecord& record);
nlohmann::json to_json(const RejectionRecord& record);
nlohmann::json to_json(const SeverityPolicy& policy);
nlohmann::json to_json(const Finding& finding);

// Pretty-printed manifest without `created`.
std::string canonical_manifest(const nlohmann::json& manifest);
nlohmann::json load_manifest(const std::filesystem::path& path);

// Writes `content` to `path` through a temporary file and a rename.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content);

std::string iso8601_now();

}  // namespace aurad

#endif  // AURAD_MANIFEST_H_

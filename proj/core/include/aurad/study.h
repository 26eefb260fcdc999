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

// Blinded reader study: per-rater randomized item order, response capture
// into an append-only journal, CSV export and agreement summary.
//
// Every rater rates the realism (1-5) of every item and, for items that come
// with a mask overlay, whether the overlay is helpful (0/1). Items and media
// are addressed by opaque ids derived from the study seed; the source tag
// and file paths only ever appear in the CSV export.
//
// Study file (JSON), paths relative to the file:
//
//   {"seed": 7, "raters": ["r1", "r2"],
//    "items": [{"id": "case-01", "image": "img/01.png",
//               "overlay": "ovl/01.png", "source": "real"}]}

#ifndef AURAD_STUDY_H_
#define AURAD_STUDY_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <nlohmann/json.hpp>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace aurad {

enum class StudyTask { kRealism, kHelpfulness };

std::string_view to_string(StudyTask task);
std::optional<StudyTask> study_task_from_string(std::string_view s);

inline constexpr std::string_view kSourceReal = "real";
inline constexpr std::string_view kSourceSynthesized = "synthesized";

struct StudyItem {
  std::string item_id;
  std::filesystem::path image;
  std::optional<std::filesystem::path> overlay;
  std::string source;  // kSourceReal or kSourceSynthesized
};

struct StudyConfig {
  std::vector<StudyItem> items;
  std::vector<std::string> raters;
  std::uint64_t seed = 0;
  std::filesystem::path journal;  // empty: responses kept in memory only
  std::function<std::string()> clock;  // ISO-8601 timestamps
};

// Reads the study file. Throws UnreadableFile / ValidationError.
StudyConfig load_study_config(const std::filesystem::path& path);

struct StudyResponse {
  std::string rater_id;
  std::string timestamp;
  std::string item_id;  // original (non-opaque) id
  StudyTask task = StudyTask::kRealism;
  int value = 0;
};

struct MediaRef {
  std::filesystem::path path;
  std::string content_type;
};

struct RateSummary {
  std::size_t count = 0;
  std::optional<double> rate;
};

struct RaterSummary {
  std::string rater_id;
  RateSummary realism;      // share of realism scores >= 4
  RateSummary helpfulness;  // share of "helpful" judgments
};

struct AgreementEntry {
  bool available = false;
  std::string reason;  // why not available
  double value = 0.0;
  nlohmann::json intermediates;
};

struct StudySummary {
  std::vector<RaterSummary> raters;
  std::optional<double> mean_realism_rate;
  std::optional<double> mean_helpfulness_rate;
  AgreementEntry realism_icc;
  AgreementEntry realism_kappa;  // on binarized scores
  AgreementEntry helpfulness_kappa;
};

class StudyService {
 public:
  // Replays the journal if it exists. Throws ValidationError on a bad
  // config and StudyError on a journal that violates the protocol.
  explicit StudyService(StudyConfig config);

  // {"done": false, "item": "<opaque>", "image": "/media/<id>",
  //  "overlay": "/media/<id>", "tasks": [...], "position": i, "total": n}
  // or {"done": true, "total": n}. Throws UnknownRater.
  nlohmann::json next_item(const std::string& rater_id);

  // `item` is the opaque id from next_item. Throws UnknownRater,
  // UnknownItem, OutOfRangeValue, DuplicateResponse.
  nlohmann::json submit(const std::string& rater_id, const std::string& item,
                        StudyTask task, int value);

  // rater_id,timestamp,item_id,task,value,source sorted by rater, item, task.
  std::string export_csv() const;
  void export_csv(const std::filesystem::path& path) const;

  StudySummary summarize() const;
  nlohmann::json summary_json() const;

  std::optional<MediaRef> media(const std::string& media_id) const;

  // Rating scale labels, served separately from item payloads.
  static nlohmann::json option_labels();

  // Permutation of item indices shown to `rater_id`.
  std::vector<std::size_t> order_for(const std::string& rater_id) const;

  std::size_t response_count() const;
  const StudyConfig& config() const { return config_; }

 private:
  struct Key {
    std::string rater;
    std::string item;
    StudyTask task;
    friend auto operator<=>(const Key&, const Key&) = default;
  };

  void check_rater(const std::string& rater_id) const;
  void record(StudyResponse r, bool persist);
  bool item_complete(const std::string& rater, std::size_t index) const;
  std::vector<StudyTask> tasks_for(std::size_t index) const;

  StudyConfig config_;
  std::map<std::string, std::size_t> item_index_;     // original id -> index
  std::map<std::string, std::size_t> opaque_to_item_;
  std::vector<std::string> opaque_ids_;
  std::map<std::string, MediaRef> media_;
  std::vector<std::string> image_media_ids_;
  std::vector<std::optional<std::string>> overlay_media_ids_;
  std::set<std::string> raters_;
  std::map<std::string, std::vector<std::size_t>> orders_;

  mutable std::mutex mu_;
  std::map<Key, StudyResponse> responses_;
};

}  // namespace aurad

#endif  // AURAD_STUDY_H_

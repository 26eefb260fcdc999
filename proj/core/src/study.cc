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

#include "aurad/study.h"

#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "aurad/agreement.h"
#include "aurad/error.h"
#include "aurad/manifest.h"
#include "aurad/seed.h"

namespace fs = std::filesystem;

namespace aurad {
namespace {

std::string hex_id(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string content_type_for(const fs::path& p) {
  const std::string ext = p.extension().string();
  if (ext == ".png") return "image/png";
  if (ext == ".jpg" || ext == ".jpeg") return "image/jpeg";
  return "application/octet-stream";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void check_value(StudyTask task, int value) {
  if (task == StudyTask::kRealism && (value < 1 || value > 5)) {
    throw OutOfRangeValue("realism must be 1..5, got " + std::to_string(value));
  }
  if (task == StudyTask::kHelpfulness && value != 0 && value != 1) {
    throw OutOfRangeValue("helpfulness must be 0 or 1, got " +
                          std::to_string(value));
  }
}

nlohmann::json response_json(const StudyResponse& r) {
  return {{"rater_id", r.rater_id},
          {"timestamp", r.timestamp},
          {"item_id", r.item_id},
          {"task", std::string(to_string(r.task))},
          {"value", r.value}};
}

}  // namespace

std::string_view to_string(StudyTask task) {
  return task == StudyTask::kRealism ? "realism" : "helpfulness";
}

std::optional<StudyTask> study_task_from_string(std::string_view s) {
  if (s == "realism") return StudyTask::kRealism;
  if (s == "helpfulness") return StudyTask::kHelpfulness;
  return std::nullopt;
}

StudyConfig load_study_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw UnreadableFile(path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UnreadableFile(path.string(), e.what());
  }
  const fs::path base = path.parent_path();
  StudyConfig cfg;
  try {
    cfg.seed = j.value("seed", std::uint64_t{0});
    for (const auto& r : j.at("raters")) cfg.raters.push_back(r.get<std::string>());
    for (const auto& it : j.at("items")) {
      StudyItem item;
      item.item_id = it.at("id").get<std::string>();
      item.image = base / it.at("image").get<std::string>();
      if (it.contains("overlay") && !it.at("overlay").is_null()) {
        item.overlay = base / it.at("overlay").get<std::string>();
      }
      item.source = it.at("source").get<std::string>();
      cfg.items.push_back(std::move(item));
    }
    if (j.contains("journal")) cfg.journal = base / j.at("journal").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("bad study file '" + path.string() + "': " + e.what());
  }
  return cfg;
}

StudyService::StudyService(StudyConfig config) : config_(std::move(config)) {
  if (config_.raters.empty()) throw ValidationError("study has no raters");
  if (!config_.clock) config_.clock = iso8601_now;
  for (const auto& r : config_.raters) {
    if (r.empty() || !raters_.insert(r).second) {
      throw ValidationError("rater ids must be unique and non-empty");
    }
  }
  std::set<std::string> opaque_seen;
  for (std::size_t i = 0; i < config_.items.size(); ++i) {
    const StudyItem& item = config_.items[i];
    if (item.source != kSourceReal && item.source != kSourceSynthesized) {
      throw ValidationError("item '" + item.item_id + "' has source '" +
                            item.source + "'");
    }
    if (!item_index_.emplace(item.item_id, i).second) {
      throw ValidationError("duplicate item id '" + item.item_id + "'");
    }
    const std::uint64_t h = hash_string(item.item_id);
    const std::string opaque = hex_id(derive_seed({config_.seed, h, 0}));
    const std::string image_id = hex_id(derive_seed({config_.seed, h, 1}));
    const std::string overlay_id = hex_id(derive_seed({config_.seed, h, 2}));
    if (!opaque_seen.insert(opaque).second || !opaque_seen.insert(image_id).second ||
        !opaque_seen.insert(overlay_id).second) {
      throw ValidationError("opaque id collision; change the study seed");
    }
    opaque_ids_.push_back(opaque);
    opaque_to_item_[opaque] = i;
    image_media_ids_.push_back(image_id);
    media_[image_id] = {item.image, content_type_for(item.image)};
    if (item.overlay) {
      overlay_media_ids_.push_back(overlay_id);
      media_[overlay_id] = {*item.overlay, content_type_for(*item.overlay)};
    } else {
      overlay_media_ids_.push_back(std::nullopt);
    }
  }
  for (const auto& r : config_.raters) {
    std::vector<std::size_t> order(config_.items.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    SeededRng rng(derive_seed({config_.seed, hash_string(r)}));
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[rng.below(i)]);
    }
    orders_[r] = std::move(order);
  }

  if (!config_.journal.empty() && fs::exists(config_.journal)) {
    std::ifstream in(config_.journal);
    if (!in) throw UnreadableFile(config_.journal.string());
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      StudyResponse r;
      try {
        const auto j = nlohmann::json::parse(line);
        r.rater_id = j.at("rater_id").get<std::string>();
        r.timestamp = j.at("timestamp").get<std::string>();
        r.item_id = j.at("item_id").get<std::string>();
        const auto task = study_task_from_string(j.at("task").get<std::string>());
        if (!task) throw ValidationError("unknown task");
        r.task = *task;
        r.value = j.at("value").get<int>();
      } catch (const std::exception& e) {
        throw ValidationError("journal line " + std::to_string(line_no) + ": " +
                              e.what());
      }
      check_rater(r.rater_id);
      const auto it = item_index_.find(r.item_id);
      if (it == item_index_.end()) throw UnknownItem("journal item '" + r.item_id + "'");
      if (r.task == StudyTask::kHelpfulness && !config_.items[it->second].overlay) {
        throw OutOfRangeValue("item '" + r.item_id + "' has no helpfulness task");
      }
      check_value(r.task, r.value);
      record(std::move(r), false);
    }
  }
}

void StudyService::check_rater(const std::string& rater_id) const {
  if (!raters_.contains(rater_id)) throw UnknownRater("unknown rater '" + rater_id + "'");
}

std::vector<StudyTask> StudyService::tasks_for(std::size_t index) const {
  std::vector<StudyTask> t{StudyTask::kRealism};
  if (config_.items[index].overlay) t.push_back(StudyTask::kHelpfulness);
  return t;
}

bool StudyService::item_complete(const std::string& rater,
                                 std::size_t index) const {
  for (StudyTask t : tasks_for(index)) {
    if (!responses_.contains(Key{rater, config_.items[index].item_id, t})) {
      return false;
    }
  }
  return true;
}

void StudyService::record(StudyResponse r, bool persist) {
  Key key{r.rater_id, r.item_id, r.task};
  if (responses_.contains(key)) {
    throw DuplicateResponse("rater '" + r.rater_id + "' already answered " +
                            std::string(to_string(r.task)) + " for this item");
  }
  if (persist && !config_.journal.empty()) {
    std::ofstream out(config_.journal, std::ios::app | std::ios::binary);
    out << response_json(r).dump() << "\n";
    out.flush();
    if (!out) throw IoError("cannot append to '" + config_.journal.string() + "'");
  }
  responses_.emplace(std::move(key), std::move(r));
}

std::vector<std::size_t> StudyService::order_for(const std::string& rater_id) const {
  check_rater(rater_id);
  return orders_.at(rater_id);
}

nlohmann::json StudyService::next_item(const std::string& rater_id) {
  check_rater(rater_id);
  std::lock_guard<std::mutex> lock(mu_);
  const auto& order = orders_.at(rater_id);
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const std::size_t idx = order[pos];
    if (item_complete(rater_id, idx)) continue;
    nlohmann::json tasks = nlohmann::json::array();
    for (StudyTask t : tasks_for(idx)) {
      if (!responses_.contains(Key{rater_id, config_.items[idx].item_id, t})) {
        tasks.push_back(std::string(to_string(t)));
      }
    }
    nlohmann::json payload = {{"done", false},
                              {"item", opaque_ids_[idx]},
                              {"image", "/media/" + image_media_ids_[idx]},
                              {"tasks", tasks},
                              {"position", pos},
                              {"total", order.size()}};
    if (overlay_media_ids_[idx]) {
      payload["overlay"] = "/media/" + *overlay_media_ids_[idx];
    }
    return payload;
  }
  return {{"done", true}, {"total", order.size()}};
}

nlohmann::json StudyService::submit(const std::string& rater_id,
                                    const std::string& item, StudyTask task,
                                    int value) {
  check_rater(rater_id);
  const auto it = opaque_to_item_.find(item);
  if (it == opaque_to_item_.end()) throw UnknownItem("unknown item '" + item + "'");
  if (task == StudyTask::kHelpfulness && !config_.items[it->second].overlay) {
    throw OutOfRangeValue("this item has no helpfulness task");
  }
  check_value(task, value);
  std::lock_guard<std::mutex> lock(mu_);
  StudyResponse r{rater_id, config_.clock(), config_.items[it->second].item_id,
                  task, value};
  record(std::move(r), true);
  return {{"ok", true}};
}

std::string StudyService::export_csv() const {
  std::lock_guard<std::mutex> lock(mu_);
  std::string out = "rater_id,timestamp,item_id,task,value,source\n";
  for (const auto& [key, r] : responses_) {
    const StudyItem& item = config_.items[item_index_.at(r.item_id)];
    out += csv_field(r.rater_id) + "," + csv_field(r.timestamp) + "," +
           csv_field(r.item_id) + "," + std::string(to_string(r.task)) + "," +
           std::to_string(r.value) + "," + item.source + "\n";
  }
  return out;
}

void StudyService::export_csv(const fs::path& path) const {
  write_file_atomic(path, export_csv());
}

std::size_t StudyService::response_count() const {
  std::lock_guard<std::mutex> lock(mu_);
  return responses_.size();
}

StudySummary StudyService::summarize() const {
  std::lock_guard<std::mutex> lock(mu_);
  StudySummary s;
  std::vector<double> realism_rates;
  std::vector<double> helpful_rates;
  for (const auto& rater : config_.raters) {
    RaterSummary rs;
    rs.rater_id = rater;
    double realism_sum = 0.0;
    double helpful_sum = 0.0;
    for (const auto& item : config_.items) {
      if (auto it = responses_.find(Key{rater, item.item_id, StudyTask::kRealism});
          it != responses_.end()) {
        ++rs.realism.count;
        realism_sum += binarize_realism(it->second.value);
      }
      if (auto it = responses_.find(Key{rater, item.item_id, StudyTask::kHelpfulness});
          it != responses_.end()) {
        ++rs.helpfulness.count;
        helpful_sum += it->second.value;
      }
    }
    if (rs.realism.count > 0) {
      rs.realism.rate = realism_sum / static_cast<double>(rs.realism.count);
      realism_rates.push_back(*rs.realism.rate);
    }
    if (rs.helpfulness.count > 0) {
      rs.helpfulness.rate = helpful_sum / static_cast<double>(rs.helpfulness.count);
      helpful_rates.push_back(*rs.helpfulness.rate);
    }
    s.raters.push_back(std::move(rs));
  }
  if (!realism_rates.empty()) s.mean_realism_rate = mean(realism_rates);
  if (!helpful_rates.empty()) s.mean_helpfulness_rate = mean(helpful_rates);

  // Complete grids only; a missing cell makes the statistic unavailable.
  auto grid = [&](StudyTask task) -> std::optional<RatingMatrix> {
    std::vector<std::vector<int>> rows;
    for (const auto& item : config_.items) {
      if (task == StudyTask::kHelpfulness && !item.overlay) continue;
      std::vector<int> row;
      for (const auto& rater : config_.raters) {
        const auto it = responses_.find(Key{rater, item.item_id, task});
        if (it == responses_.end()) return std::nullopt;
        row.push_back(it->second.value);
      }
      rows.push_back(std::move(row));
    }
    if (rows.empty() || config_.raters.size() < 2) return std::nullopt;
    return RatingMatrix(rows);
  };
  auto unavailable = [](std::string why) {
    AgreementEntry e;
    e.reason = std::move(why);
    return e;
  };
  auto kappa_entry = [](const RatingMatrix& m) {
    AgreementEntry e;
    try {
      const KappaResult k = fleiss_kappa(m, 2);
      e.available = true;
      e.value = k.kappa;
      e.intermediates = {{"p_bar", k.p_bar}, {"p_bar_e", k.p_bar_e}};
    } catch (const ValidationError& err) {
      e.reason = err.what();
    }
    return e;
  };

  const auto realism = grid(StudyTask::kRealism);
  if (!realism) {
    s.realism_icc = unavailable("realism grid incomplete");
    s.realism_kappa = unavailable("realism grid incomplete");
  } else {
    try {
      const IccResult icc = icc_2_1(*realism);
      s.realism_icc.available = true;
      s.realism_icc.value = icc.icc;
      s.realism_icc.intermediates = {
          {"ms_r", icc.ms_r}, {"ms_c", icc.ms_c}, {"ms_e", icc.ms_e}};
    } catch (const ValidationError& err) {
      s.realism_icc = unavailable(err.what());
    }
    s.realism_kappa = kappa_entry(binarize_realism(*realism));
  }
  const auto helpful = grid(StudyTask::kHelpfulness);
  s.helpfulness_kappa =
      helpful ? kappa_entry(*helpful) : unavailable("helpfulness grid incomplete");
  return s;
}

nlohmann::json StudyService::summary_json() const {
  const StudySummary s = summarize();
  auto opt = [](const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  auto entry = [](const AgreementEntry& e) {
    nlohmann::json j = {{"available", e.available}};
    if (e.available) {
      j["value"] = e.value;
      j["intermediates"] = e.intermediates;
    } else {
      j["reason"] = e.reason;
    }
    return j;
  };
  nlohmann::json raters = nlohmann::json::array();
  for (const auto& r : s.raters) {
    raters.push_back(
        {{"rater_id", r.rater_id},
         {"realism", {{"count", r.realism.count}, {"rate", opt(r.realism.rate)}}},
         {"helpfulness",
          {{"count", r.helpfulness.count}, {"rate", opt(r.helpfulness.rate)}}}});
  }
  return {{"raters", raters},
          {"mean", {{"realism", opt(s.mean_realism_rate)},
                    {"helpfulness", opt(s.mean_helpfulness_rate)}}},
          {"agreement",
           {{"realism_icc", entry(s.realism_icc)},
            {"realism_kappa", entry(s.realism_kappa)},
            {"helpfulness_kappa", entry(s.helpfulness_kappa)}}}};
}

std::optional<MediaRef> StudyService::media(const std::string& media_id) const {
  const auto it = media_.find(media_id);
  if (it == media_.end()) return std::nullopt;
  return it->second;
}

nlohmann::json StudyService::option_labels() {
  return {{"realism",
           {{{"value", 1}, {"label", "Definitely synthesized"}},
            {{"value", 2}, {"label", "Probably synthesized"}},
            {{"value", 3}, {"label", "Not sure"}},
            {{"value", 4}, {"label", "Probably real"}},
            {{"value", 5}, {"label", "Definitely real"}}}},
          {"helpfulness",
           {{{"value", 0}, {"label", "Not helpful"}},
            {{"value", 1}, {"label", "Helpful"}}}}};
}

}  // namespace aurad

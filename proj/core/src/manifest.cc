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

#include "aurad/manifest.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include "aurad/error.h"
#include "aurad/png_io.h"
#include "aurad/seed.h"

namespace fs = std::filesystem;

namespace aurad {
namespace {

using Outcome = std::variant<SampleRecord, RejectionRecord>;

nlohmann::json findings_json(std::span<const Finding> findings) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& f : findings) out.push_back(describe(f));
  return out;
}

nlohmann::json report_json(const MatchReport& r) {
  nlohmann::json mismatches = nlohmann::json::array();
  for (const auto& m : r.severity_mismatches) {
    mismatches.push_back(
        {{"requested", describe(m.requested)}, {"observed", describe(m.observed)}});
  }
  return {{"matched", r.matched},
          {"observed", findings_json(r.observed)},
          {"missing", findings_json(r.missing)},
          {"extra", findings_json(r.extra)},
          {"severity_mismatches", mismatches}};
}

nlohmann::json verdicts_json(std::span<const FilterVerdict> verdicts) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& v : verdicts) {
    out.push_back({{"filter", v.filter},
                   {"score", v.score},
                   {"threshold", v.threshold},
                   {"pass", v.pass}});
  }
  return out;
}

nlohmann::json rejection_details(const Rejection& r) {
  nlohmann::json s1 = nlohmann::json::array();
  for (const auto& rep : r.stage1_reports) s1.push_back(report_json(rep));
  nlohmann::json s2 = nlohmann::json::array();
  for (const auto& a : r.stage2_reports) {
    s2.push_back({{"attempt_index", a.attempt_index},
                  {"seed", a.seed},
                  {"passed", a.passed},
                  {"verdicts", verdicts_json(a.verdicts)}});
  }
  return {{"attempts", {{"stage1", r.stage1_attempts}, {"stage2", r.stage2_attempts}}},
          {"seeds", {{"stage1", r.seeds.stage1}, {"stage2", r.seeds.stage2}}},
          {"stage1_reports", s1},
          {"stage2_reports", s2}};
}

std::string portable(const fs::path& p) { return p.generic_string(); }

Outcome process_sample(std::size_t i, const PromptSpec& request,
                       std::span<const fs::path> organ_files,
                       TextToMaskBackend& text_to_mask,
                       MaskToImageBackend& mask_to_image,
                       std::span<QualityScorer* const> filters,
                       const BuildOptions& options) {
  const std::string id = sample_id_for(i);
  const std::uint64_t request_seed = derive_seed({options.seed, i});
  const fs::path& organ_file =
      organ_files[organ_index(options.seed, i, organ_files.size())];
  const fs::path sample_rel = fs::path("samples") / id;
  const fs::path sample_dir = options.out_dir / sample_rel;

  try {
    std::error_code ec;
    fs::remove_all(sample_dir, ec);

    const OrganMap organ = load_organ_map(organ_file);
    PipelineResult result =
        run_pipeline(request, organ, text_to_mask, mask_to_image, filters,
                     options.pipeline, request_seed, SampleKey{id, i});
    if (auto* rej = std::get_if<Rejection>(&result)) {
      return RejectionRecord{id, i, request.raw_text(), rej->stage, rej->reason,
                             rejection_details(*rej)};
    }
    Accepted& acc = std::get<Accepted>(result);

    // One file per class; repeated findings of a class share a raster.
    std::map<DiseaseClass, RasterMask> by_class;
    for (const auto& a : acc.masks.annotations) {
      auto it = by_class.find(a.disease);
      if (it == by_class.end()) {
        by_class.emplace(a.disease, a.mask);
      } else {
        it->second = unite(it->second, a.mask);
      }
    }

    fs::create_directories(sample_dir);
    SampleRecord rec;
    rec.sample_id = id;
    rec.request_index = i;
    rec.prompt = request;
    rec.organ_source = organ_file.filename().generic_string();
    rec.organ_path = portable(sample_rel / "organ.png");
    save_organ_map(sample_dir / "organ.png", organ);
    for (const auto& [disease, mask] : by_class) {
      const std::string name = pathology_file_name(id, disease);
      save_pathology_mask(sample_dir / name, mask);
      rec.pathology.push_back(PathologyFile{disease, portable(sample_rel / name)});
    }
    rec.image_path = portable(sample_rel / "image.png");
    save_image(sample_dir / "image.png", acc.image);
    rec.request_seed = request_seed;
    rec.stage_seeds = acc.seeds;
    rec.mask_seed = acc.masks.seed;
    rec.image_seed = acc.stage2_reports.back().seed;
    rec.stage1_attempts = acc.stage1_attempts;
    rec.stage2_attempts = acc.stage2_attempts;
    rec.verdicts = acc.stage2_reports.back().verdicts;
    return rec;
  } catch (const std::exception& e) {
    std::error_code ec;
    fs::remove_all(sample_dir, ec);
    return RejectionRecord{id, i, request.raw_text(), 0, e.what(),
                           nlohmann::json::object()};
  }
}

}  // namespace

std::vector<PromptSpec> load_requests(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw UnreadableFile(path.string());
  std::vector<PromptSpec> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      out.push_back(PromptSpec::from_text(line));
    } catch (const ParseError& e) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) + ": " +
                       e.what());
    } catch (const ValidationError& e) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) + ": " +
                       e.what());
    }
  }
  return out;
}

std::vector<fs::path> list_organ_files(const fs::path& source) {
  std::error_code ec;
  if (fs::is_regular_file(source, ec)) return {source};
  if (!fs::is_directory(source, ec)) throw UnreadableFile(source.string());
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(source)) {
    if (entry.is_regular_file() && entry.path().extension() == ".png") {
      out.push_back(entry.path());
    }
  }
  std::sort(out.begin(), out.end(), [](const fs::path& a, const fs::path& b) {
    return a.filename().generic_string() < b.filename().generic_string();
  });
  if (out.empty()) {
    throw UnreadableFile(source.string(), "no organ maps (*.png) found");
  }
  return out;
}

std::size_t organ_index(std::uint64_t seed, std::size_t request_index,
                        std::size_t organ_count) {
  return static_cast<std::size_t>(splitmix64(seed + request_index) %
                                  organ_count);
}

std::string sample_id_for(std::size_t request_index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "sample_%05zu", request_index);
  return buf;
}

BuildResult build_dataset(std::span<const PromptSpec> requests,
                          std::span<const fs::path> organ_files,
                          TextToMaskBackend& text_to_mask,
                          MaskToImageBackend& mask_to_image,
                          std::span<QualityScorer* const> filters,
                          const BuildOptions& options) {
  if (organ_files.empty()) throw ValidationError("no organ maps to sample from");
  if (options.pipeline.max_attempts_stage1 < 1 ||
      options.pipeline.max_attempts_stage2 < 1) {
    throw ValidationError("max_attempts must be at least 1 for each stage");
  }
  try {
    fs::create_directories(options.out_dir / "samples");
  } catch (const fs::filesystem_error& e) {
    throw IoError("cannot create output directory '" +
                  options.out_dir.string() + "': " + e.code().message());
  }

  std::vector<std::optional<Outcome>> outcomes(requests.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < requests.size(); i = next++) {
      outcomes[i] = process_sample(i, requests[i], organ_files, text_to_mask,
                                   mask_to_image, filters, options);
    }
  };
  unsigned threads = options.threads != 0
                         ? options.threads
                         : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, std::max<std::size_t>(1, requests.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }

  BuildResult result;
  for (auto& o : outcomes) {
    if (auto* rec = std::get_if<SampleRecord>(&*o)) {
      result.records.push_back(std::move(*rec));
    } else {
      result.rejections.push_back(std::get<RejectionRecord>(std::move(*o)));
    }
  }

  nlohmann::json filters_json = nlohmann::json::array();
  for (QualityScorer* f : filters) filters_json.push_back(f->name());
  nlohmann::json organs_json = nlohmann::json::array();
  for (const auto& p : organ_files) organs_json.push_back(p.filename().generic_string());
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : result.records) records.push_back(to_json(r));

  nlohmann::json& m = result.manifest;
  m["version"] = kManifestVersion;
  m["created"] = options.clock ? options.clock() : iso8601_now();
  m["policy"] = {
      {"severity", to_json(options.pipeline.severity)},
      {"match",
       {{"severity", std::string(to_string(options.pipeline.match.severity))},
        {"location", std::string(to_string(options.pipeline.match.location))}}},
      {"max_attempts",
       {{"stage1", options.pipeline.max_attempts_stage1},
        {"stage2", options.pipeline.max_attempts_stage2}}},
      {"seed", options.seed},
      {"backends",
       {{"text_to_mask", text_to_mask.name()},
        {"mask_to_image", mask_to_image.name()}}},
      {"filters", filters_json},
      {"organs", organs_json},
  };
  m["counts"] = {{"requested", requests.size()},
                 {"accepted", result.records.size()},
                 {"rejected", result.rejections.size()}};
  m["records"] = std::move(records);

  std::string log;
  for (const auto& r : result.rejections) log += to_json(r).dump() + "\n";

  result.manifest_path = options.out_dir / "manifest.json";
  result.rejection_log_path = options.out_dir / "rejections.ndjson";
  write_file_atomic(result.rejection_log_path, log);
  write_file_atomic(result.manifest_path, result.manifest.dump(2) + "\n");
  return result;
}

nlohmann::json to_json(const Finding& f) {
  if (f.is_no_finding()) return {{"class", std::string(to_token(f.disease))}};
  return {{"class", std::string(to_token(f.disease))},
          {"location", std::string(to_token(*f.location))},
          {"severity", std::string(to_token(*f.severity))}};
}

nlohmann::json to_json(const SampleRecord& r) {
  nlohmann::json findings = nlohmann::json::array();
  for (const auto& f : r.prompt.findings()) findings.push_back(to_json(f));
  nlohmann::json pathology = nlohmann::json::array();
  for (const auto& p : r.pathology) {
    pathology.push_back(
        {{"class", std::string(to_token(p.disease))}, {"path", p.path}});
  }
  return {{"sample_id", r.sample_id},
          {"request_index", r.request_index},
          {"prompt", r.prompt.raw_text()},
          {"findings", findings},
          {"organ_source", r.organ_source},
          {"organ_path", r.organ_path},
          {"pathology", pathology},
          {"image_path", r.image_path},
          {"seeds",
           {{"request", r.request_seed},
            {"stage1", r.stage_seeds.stage1},
            {"stage2", r.stage_seeds.stage2},
            {"mask", r.mask_seed},
            {"image", r.image_seed}}},
          {"attempts_used", {{"stage1", r.stage1_attempts}, {"stage2", r.stage2_attempts}}},
          {"filters", verdicts_json(r.verdicts)},
          {"provenance", r.provenance}};
}

nlohmann::json to_json(const RejectionRecord& r) {
  return {{"sample_id", r.sample_id},
          {"request_index", r.request_index},
          {"prompt", r.prompt},
          {"stage", r.stage},
          {"reason", r.reason},
          {"details", r.details}};
}

nlohmann::json to_json(const SeverityPolicy& p) {
  auto bands = [](const SeverityBands& b) {
    return nlohmann::json{{"mild_below", b.mild_below},
                          {"severe_above", b.severe_above}};
  };
  nlohmann::json per_class = nlohmann::json::object();
  for (const auto& [c, b] : p.per_class) per_class[class_file_token(c)] = bands(b);
  return {{"lung_epsilon", p.lung_epsilon},
          {"promotion_threshold", p.promotion_threshold},
          {"ctr", bands(p.ctr)},
          {"default", bands(p.default_bands)},
          {"per_class", per_class}};
}

std::string canonical_manifest(const nlohmann::json& manifest) {
  nlohmann::json copy = manifest;
  copy.erase("created");
  return copy.dump(2) + "\n";
}

nlohmann::json load_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw UnreadableFile(path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UnreadableFile(path.string(), e.what());
  }
}

void write_file_atomic(const fs::path& path, std::string_view content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("short write to '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot replace '" + path.string() + "'");
  }
}

std::string iso8601_now() {
  const std::time_t t =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace aurad

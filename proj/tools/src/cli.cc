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

#include "aurad_tools/cli.h"

#include <CLI11.hpp>
#include <httplib.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <unistd.h>
#include <vector>

#include "aurad/agreement.h"
#include "aurad/error.h"
#include "aurad/external_backend.h"
#include "aurad/frechet.h"
#include "aurad/manifest.h"
#include "aurad/ms_ssim.h"
#include "aurad/overlap_metrics.h"
#include "aurad/png_io.h"
#include "aurad/prompt_grammar.h"
#include "aurad/prompt_tool.h"
#include "aurad/self_assessment.h"
#include "aurad/severity_policy.h"
#include "aurad/stub_backends.h"
#include "aurad/study.h"
#include "aurad_tools/study_http.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace aurad::cli {
namespace {

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

bool want_json(const std::string& format) { return format == "json"; }

void add_format(CLI::App* cmd, std::string& format, const std::string& def) {
  format = def;
  cmd->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
}

// --policy wins over AURAD_POLICY; neither means the built-in defaults.
SeverityPolicy resolve_policy(const std::string& flag) {
  if (!flag.empty()) return load_severity_policy(flag);
  if (const char* env = std::getenv("AURAD_POLICY"); env != nullptr && *env != '\0') {
    return load_severity_policy(env);
  }
  return {};
}

json findings_json(std::span<const Finding> findings) {
  json arr = json::array();
  for (const auto& f : findings) arr.push_back(to_json(f));
  return arr;
}

std::string describe_all(std::span<const Finding> findings) {
  std::string s;
  for (const auto& f : findings) {
    if (!s.empty()) s += "; ";
    s += describe(f);
  }
  return s.empty() ? "-" : s;
}

// ---------------------------------------------------------------- caption

struct CaptionArgs {
  std::string organ;
  std::string masks_dir;
  std::string policy;
  std::string format;
};

int cmd_caption(const CaptionArgs& a, Streams io) {
  const SeverityPolicy policy = resolve_policy(a.policy);
  const OrganMap organ = load_organ_map(a.organ);
  const auto masks = load_pathology_dir(a.masks_dir, &organ);
  const std::vector<Finding> findings = caption(organ, masks, policy);
  if (want_json(a.format)) {
    io.out << json{{"findings", findings_json(findings)}, {"prompt", render(findings)}}.dump(2)
           << "\n";
  } else {
    io.out << render(findings) << "\n";
  }
  return kOk;
}

// --------------------------------------------------------------- validate

struct ValidateArgs {
  std::string prompt;
  std::string organ;
  std::string masks_dir;
  std::string policy;
  std::string severity_mode = "strict";
  std::string location_mode = "strict";
  std::string format;
};

int cmd_validate(const ValidateArgs& a, Streams io) {
  MatchPolicy match;
  match.severity = *severity_mode_from_string(a.severity_mode);
  match.location = *location_mode_from_string(a.location_mode);
  const PromptSpec prompt(parse(a.prompt));
  const SeverityPolicy policy = resolve_policy(a.policy);
  const OrganMap organ = load_organ_map(a.organ);
  const auto masks = load_pathology_dir(a.masks_dir, &organ);
  const MatchReport r = recaption_and_match(prompt, masks, organ, match, policy);
  if (want_json(a.format)) {
    json mismatches = json::array();
    for (const auto& m : r.severity_mismatches) {
      mismatches.push_back({{"requested", to_json(m.requested)}, {"observed", to_json(m.observed)}});
    }
    io.out << json{{"matched", r.matched},
                   {"observed", findings_json(r.observed)},
                   {"missing", findings_json(r.missing)},
                   {"extra", findings_json(r.extra)},
                   {"severity_mismatches", mismatches}}
                  .dump(2)
           << "\n";
  } else {
    io.out << (r.matched ? "match" : "mismatch") << "\n"
           << "observed: " << describe_all(r.observed) << "\n";
    if (!r.matched) {
      io.out << "missing: " << describe_all(r.missing) << "\n"
             << "extra: " << describe_all(r.extra) << "\n";
    }
  }
  return r.matched ? kOk : kValidationFailure;
}

// ---------------------------------------------------------------- metrics

struct MetricsArgs {
  std::string task;
  std::string a;
  std::string b;
  std::string ratings;
  std::string scale = "realism";
  std::string format;
};

std::vector<std::vector<int>> load_ratings(const std::string& path) {
  std::vector<std::vector<int>> rows;
  for (const auto& v : load_feature_file(path)) {
    std::vector<int> row;
    for (double x : v) {
      if (x != std::floor(x)) {
        throw ValidationError("rating " + std::to_string(x) + " is not an integer");
      }
      row.push_back(static_cast<int>(x));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// Per-rater positive rates over a binary grid.
json rater_rates(const RatingMatrix& binary) {
  json rates = json::array();
  std::vector<double> values;
  for (std::size_t j = 0; j < binary.raters(); ++j) {
    double sum = 0;
    for (std::size_t i = 0; i < binary.items(); ++i) sum += binary.at(i, j);
    values.push_back(sum / static_cast<double>(binary.items()));
    rates.push_back(values.back());
  }
  return {{"per_rater", rates}, {"mean", mean(values)}};
}

json agreement_json(const MetricsArgs& a) {
  const RatingMatrix raw(load_ratings(a.ratings));
  json out = {{"task", "agreement"}, {"scale", a.scale},
              {"items", raw.items()}, {"raters", raw.raters()}};
  auto kappa = [](const RatingMatrix& m) {
    const KappaResult k = fleiss_kappa(m, 2);
    return json{{"value", k.kappa}, {"p_bar", k.p_bar}, {"p_bar_e", k.p_bar_e}};
  };
  if (a.scale == "realism") {
    const IccResult icc = icc_2_1(raw);
    const RatingMatrix binary = binarize_realism(raw);
    out["icc"] = {{"value", icc.icc}, {"ms_r", icc.ms_r}, {"ms_c", icc.ms_c}, {"ms_e", icc.ms_e}};
    out["kappa"] = kappa(binary);
    out["rates"] = rater_rates(binary);
  } else {
    out["kappa"] = kappa(raw);
    out["rates"] = rater_rates(raw);
  }
  return out;
}

int cmd_metrics(const MetricsArgs& a, Streams io) {
  json out;
  if (a.task == "agreement") {
    if (a.ratings.empty()) throw CLI::RequiredError("--ratings");
    out = agreement_json(a);
  } else {
    if (a.a.empty() || a.b.empty()) throw CLI::RequiredError("--a and --b");
    double value = 0.0;
    if (a.task == "dice" || a.task == "iou") {
      const RasterMask x = load_pathology_mask(a.a, DiseaseClass::kMass).mask;
      const RasterMask y = load_pathology_mask(a.b, DiseaseClass::kMass).mask;
      value = a.task == "dice" ? dice(x, y) : iou(x, y);
    } else if (a.task == "msssim") {
      value = ms_ssim(load_image(a.a), load_image(a.b));
    } else {
      const auto fa = load_feature_file(a.a);
      const auto fb = load_feature_file(a.b);
      value = frechet_distance(gaussian_stats(fa), gaussian_stats(fb));
    }
    out = {{"task", a.task}, {"value", value}};
  }
  if (want_json(a.format)) {
    io.out << out.dump(2) << "\n";
  } else if (a.task == "agreement") {
    if (out.contains("icc")) io.out << "icc " << out["icc"]["value"].get<double>() << "\n";
    io.out << "kappa " << out["kappa"]["value"].get<double>() << "\n"
           << "mean_rate " << out["rates"]["mean"].get<double>() << "\n";
  } else {
    io.out << a.task << " " << out["value"].get<double>() << "\n";
  }
  return kOk;
}

// ------------------------------------------------------------------ build

struct BuildArgs {
  std::string requests;
  std::string organs;
  std::string backend = "stub";
  std::string backend_command;
  std::vector<std::string> filters;
  std::string out;
  std::uint64_t seed = 0;
  int max_attempts = 3;
  int max_attempts_stage2 = 0;  // 0: same as --max-attempts
  unsigned threads = 0;
  std::string policy;
  std::string severity_mode = "strict";
  std::string location_mode = "strict";
  std::string format;
};

int cmd_build(const BuildArgs& a, Streams io) {
  const SeverityPolicy policy = resolve_policy(a.policy);
  std::vector<std::unique_ptr<QualityScorer>> owned;
  std::vector<QualityScorer*> filters;
  for (const auto& spec : a.filters) {
    owned.push_back(make_scorer(spec));
    filters.push_back(owned.back().get());
  }
  const auto requests = load_requests(a.requests);
  const auto organs = list_organ_files(a.organs);

  BuildOptions opt;
  opt.out_dir = a.out;
  opt.seed = a.seed;
  opt.threads = a.threads;
  opt.pipeline.max_attempts_stage1 = a.max_attempts;
  opt.pipeline.max_attempts_stage2 = a.max_attempts_stage2 > 0 ? a.max_attempts_stage2
                                                               : a.max_attempts;
  opt.pipeline.severity = policy;
  opt.pipeline.match.severity = *severity_mode_from_string(a.severity_mode);
  opt.pipeline.match.location = *location_mode_from_string(a.location_mode);

  StubMaskToImage mask_to_image;
  std::unique_ptr<TextToMaskBackend> text_to_mask;
  fs::path scratch;
  if (a.backend == "external-command") {
    if (a.backend_command.empty()) {
      throw CLI::RequiredError("--backend-command (with --backend external-command)");
    }
    scratch = fs::temp_directory_path() / ("aurad-build-" + std::to_string(::getpid()));
    text_to_mask = std::make_unique<ExternalCommandTextToMask>(a.backend_command, scratch);
  } else {
    text_to_mask = std::make_unique<StubTextToMask>(policy);
  }

  BuildResult result;
  try {
    result = build_dataset(requests, organs, *text_to_mask, mask_to_image, filters, opt);
  } catch (...) {
    if (!scratch.empty()) fs::remove_all(scratch);
    throw;
  }
  if (!scratch.empty()) fs::remove_all(scratch);

  if (want_json(a.format)) {
    io.out << json{{"manifest", result.manifest_path.string()},
                   {"rejections", result.rejection_log_path.string()},
                   {"requested", requests.size()},
                   {"accepted", result.records.size()},
                   {"rejected", result.rejections.size()}}
                  .dump(2)
           << "\n";
  } else {
    io.out << result.manifest_path.string() << "\n";
    io.err << result.records.size() << " accepted, " << result.rejections.size()
           << " rejected\n";
  }
  return kOk;
}

// ------------------------------------------------------------------ study

struct StudyArgs {
  std::string items;
  std::optional<std::uint64_t> seed;
  std::string journal;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string out;
  std::string format;
};

StudyConfig study_config(const StudyArgs& a) {
  StudyConfig cfg = load_study_config(a.items);
  if (a.seed) cfg.seed = *a.seed;
  if (!a.journal.empty()) cfg.journal = a.journal;
  return cfg;
}

int cmd_study_serve(const StudyArgs& a, Streams io) {
  StudyService service(study_config(a));
  httplib::Server server;
  register_study_routes(server, service);
  const int port = a.port == 0 ? server.bind_to_any_port(a.host) : a.port;
  if (a.port != 0 && !server.bind_to_port(a.host, port)) {
    throw IoError("cannot listen on " + a.host + ":" + std::to_string(port));
  }
  if (want_json(a.format)) {
    io.out << json{{"host", a.host}, {"port", port}}.dump() << std::endl;
  } else {
    io.out << "serving study on http://" << a.host << ":" << port << std::endl;
  }
  server.listen_after_bind();
  return kOk;
}

int cmd_study_export(const StudyArgs& a, Streams io) {
  StudyService service(study_config(a));
  if (a.out.empty() || a.out == "-") {
    io.out << service.export_csv();
  } else {
    service.export_csv(a.out);
    if (want_json(a.format)) {
      io.out << json{{"csv", a.out}, {"rows", service.response_count()}}.dump(2) << "\n";
    } else {
      io.out << a.out << "\n";
    }
  }
  return kOk;
}

int cmd_study_summary(const StudyArgs& a, Streams io) {
  StudyService service(study_config(a));
  const json s = service.summary_json();
  if (want_json(a.format)) {
    io.out << s.dump(2) << "\n";
    return kOk;
  }
  for (const auto& r : s["raters"]) {
    io.out << r["rater_id"].get<std::string>() << " realism=" << r["realism"]["rate"].dump()
           << " helpfulness=" << r["helpfulness"]["rate"].dump() << "\n";
  }
  io.out << "mean realism=" << s["mean"]["realism"].dump()
         << " helpfulness=" << s["mean"]["helpfulness"].dump() << "\n";
  for (const auto& [name, e] : s["agreement"].items()) {
    io.out << name << " "
           << (e["available"].get<bool>() ? e["value"].dump() : "n/a (" +
                                                                   e["reason"].get<std::string>() +
                                                                   ")")
           << "\n";
  }
  return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Streams io{out, err};
  CLI::App app{"Anatomy-aware chest X-ray dataset tooling", "aurad"};
  app.require_subcommand(1);

  CaptionArgs caption_args;
  auto* caption_cmd = app.add_subcommand("caption", "Caption pathology masks as a prompt");
  caption_cmd->add_option("--organ", caption_args.organ, "Organ map PNG")->required();
  caption_cmd->add_option("--masks-dir", caption_args.masks_dir, "Directory of pathology masks")
      ->required();
  caption_cmd->add_option("--policy", caption_args.policy, "Severity policy file");
  add_format(caption_cmd, caption_args.format, "text");

  ValidateArgs validate_args;
  auto* validate_cmd =
      app.add_subcommand("validate", "Check that masks re-caption to a prompt");
  validate_cmd->add_option("--prompt", validate_args.prompt, "Prompt text")->required();
  validate_cmd->add_option("--organ", validate_args.organ, "Organ map PNG")->required();
  validate_cmd->add_option("--masks-dir", validate_args.masks_dir, "Directory of masks")
      ->required();
  validate_cmd->add_option("--policy", validate_args.policy, "Severity policy file");
  validate_cmd->add_option("--severity-mode", validate_args.severity_mode)
      ->check(CLI::IsMember({"strict", "off"}))
      ->capture_default_str();
  validate_cmd->add_option("--location-mode", validate_args.location_mode)
      ->check(CLI::IsMember({"strict", "major-region-equivalent"}))
      ->capture_default_str();
  add_format(validate_cmd, validate_args.format, "text");

  MetricsArgs metrics_args;
  auto* metrics_cmd = app.add_subcommand("metrics", "Compute quality metrics");
  metrics_cmd->add_option("--task", metrics_args.task, "Metric")
      ->required()
      ->check(CLI::IsMember({"dice", "iou", "msssim", "fid", "agreement"}));
  metrics_cmd->add_option("--a", metrics_args.a, "First mask, image or feature file");
  metrics_cmd->add_option("--b", metrics_args.b, "Second mask, image or feature file");
  metrics_cmd->add_option("--ratings", metrics_args.ratings,
                          "Ratings grid, one item per line, one column per rater");
  metrics_cmd->add_option("--scale", metrics_args.scale, "Rating scale of the grid")
      ->check(CLI::IsMember({"realism", "binary"}))
      ->capture_default_str();
  add_format(metrics_cmd, metrics_args.format, "json");

  BuildArgs build_args;
  auto* build_cmd = app.add_subcommand("build", "Synthesize a dataset from prompts");
  build_cmd->add_option("--requests", build_args.requests, "Prompt file, one per line")
      ->required();
  build_cmd->add_option("--organs", build_args.organs, "Organ map PNG or directory")
      ->required();
  build_cmd->add_option("--out", build_args.out, "Output directory")->required();
  build_cmd->add_option("--backend", build_args.backend, "Text-to-mask backend")
      ->check(CLI::IsMember({"stub", "external-command"}))
      ->capture_default_str();
  build_cmd->add_option("--backend-command", build_args.backend_command,
                        "Shell command for the external-command backend");
  build_cmd->add_option("--filters", build_args.filters, "Image filters")->delimiter(',');
  build_cmd->add_option("--seed", build_args.seed)->capture_default_str();
  build_cmd->add_option("--max-attempts", build_args.max_attempts, "Attempts per stage")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  build_cmd->add_option("--max-attempts-stage2", build_args.max_attempts_stage2,
                        "Image attempts, if different")
      ->check(CLI::PositiveNumber);
  build_cmd->add_option("--threads", build_args.threads, "Worker threads (0: all cores)");
  build_cmd->add_option("--policy", build_args.policy, "Severity policy file");
  build_cmd->add_option("--severity-mode", build_args.severity_mode)
      ->check(CLI::IsMember({"strict", "off"}))
      ->capture_default_str();
  build_cmd->add_option("--location-mode", build_args.location_mode)
      ->check(CLI::IsMember({"strict", "major-region-equivalent"}))
      ->capture_default_str();
  add_format(build_cmd, build_args.format, "text");

  StudyArgs study_args;
  auto* study_cmd = app.add_subcommand("study", "Run or export the reader study");
  study_cmd->require_subcommand(1);
  auto* serve_cmd = study_cmd->add_subcommand("serve", "Serve the study over HTTP");
  auto* export_cmd = study_cmd->add_subcommand("export", "Write responses as CSV");
  auto* summary_cmd = study_cmd->add_subcommand("summary", "Print rates and agreement");
  for (auto* cmd : {serve_cmd, export_cmd, summary_cmd}) {
    cmd->add_option("--items", study_args.items, "Study definition JSON")->required();
    cmd->add_option("--journal", study_args.journal, "Response journal (NDJSON)");
    cmd->add_option("--seed", study_args.seed, "Override the study seed");
    add_format(cmd, study_args.format, "text");
  }
  serve_cmd->add_option("--host", study_args.host)->capture_default_str();
  serve_cmd->add_option("--port", study_args.port, "0 picks a free port")
      ->capture_default_str();
  export_cmd->add_option("--out", study_args.out, "CSV path, or - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsageError;
  }

  try {
    if (*caption_cmd) return cmd_caption(caption_args, io);
    if (*validate_cmd) return cmd_validate(validate_args, io);
    if (*metrics_cmd) return cmd_metrics(metrics_args, io);
    if (*build_cmd) return cmd_build(build_args, io);
    if (*serve_cmd) return cmd_study_serve(study_args, io);
    if (*export_cmd) return cmd_study_export(study_args, io);
    if (*summary_cmd) return cmd_study_summary(study_args, io);
  } catch (const CLI::ParseError& e) {
    err << "error: missing " << e.what() << "\n";
    return kUsageError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }
  return kUsageError;
}

}  // namespace aurad::cli

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

#include "aurad/stub_backends.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <queue>
#include <tuple>

#include "aurad/error.h"
#include "aurad/prompt_tool.h"
#include "aurad/seed.h"
#include "aurad/zones.h"

namespace aurad {
namespace {

constexpr int kPlacementTries = 12;

struct Ellipse {
  double center_row;
  double center_col;
  double row_scale;
  double col_scale;

  double cost(int r, int c) const {
    const double dr = (r - center_row) / row_scale;
    const double dc = (c - center_col) / col_scale;
    return dr * dr + dc * dc;
  }
};

// Grows a 4-connected blob of `target` pixels inside `zone`, cheapest
// frontier pixel first. Returns fewer pixels if the seed's component is
// smaller than the target.
RasterMask grow_blob(const RasterMask& zone, const Ellipse& shape,
                     std::size_t target) {
  const int w = zone.width();
  const int h = zone.height();
  std::vector<std::uint8_t> bits(zone.size(), 0);
  if (target == 0) return RasterMask(w, h, std::move(bits));

  double best = 0.0;
  long seed_index = -1;
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (!zone.at(r, c)) continue;
      const double cost = shape.cost(r, c);
      if (seed_index < 0 || cost < best) {
        best = cost;
        seed_index = static_cast<long>(r) * w + c;
      }
    }
  }
  if (seed_index < 0) return RasterMask(w, h, std::move(bits));

  using Entry = std::pair<double, long>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;
  std::vector<std::uint8_t> queued(zone.size(), 0);
  frontier.push({best, seed_index});
  queued[static_cast<std::size_t>(seed_index)] = 1;
  std::size_t grown = 0;
  while (!frontier.empty() && grown < target) {
    const long idx = frontier.top().second;
    frontier.pop();
    bits[static_cast<std::size_t>(idx)] = 1;
    ++grown;
    const int r = static_cast<int>(idx / w);
    const int c = static_cast<int>(idx % w);
    constexpr int kDr[4] = {-1, 1, 0, 0};
    constexpr int kDc[4] = {0, 0, -1, 1};
    for (int k = 0; k < 4; ++k) {
      const int nr = r + kDr[k];
      const int nc = c + kDc[k];
      if (nr < 0 || nr >= h || nc < 0 || nc >= w || !zone.at(nr, nc)) continue;
      const long nidx = static_cast<long>(nr) * w + nc;
      if (queued[static_cast<std::size_t>(nidx)]) continue;
      queued[static_cast<std::size_t>(nidx)] = 1;
      frontier.push({shape.cost(nr, nc), nidx});
    }
  }
  return RasterMask(w, h, std::move(bits));
}

struct Centroid {
  double row;
  double col;
};

Centroid centroid(const RasterMask& m) {
  double sr = 0.0;
  double sc = 0.0;
  std::size_t n = 0;
  for (int r = 0; r < m.height(); ++r) {
    for (int c = 0; c < m.width(); ++c) {
      if (m.at(r, c)) {
        sr += r;
        sc += c;
        ++n;
      }
    }
  }
  return {sr / static_cast<double>(n), sc / static_cast<double>(n)};
}

// Overlap-fraction interval that grades to `sev`, clipped to (0, 1].
std::pair<double, double> fraction_range(const SeverityBands& bands,
                                         Severity sev) {
  switch (sev) {
    case Severity::kMild:
      return {0.0, bands.mild_below};
    case Severity::kModerate:
      return {bands.mild_below, bands.severe_above};
    case Severity::kSevere:
      return {bands.severe_above, 1.0};
  }
  return {0.0, 1.0};
}

std::size_t target_area(double fraction, std::size_t zone_area) {
  const auto a = static_cast<std::size_t>(
      std::llround(fraction * static_cast<double>(zone_area)));
  return std::clamp<std::size_t>(a, 1, zone_area);
}

// Compact blob for a sub-zone, the heart or the mediastinum.
RasterMask compact_blob(const RasterMask& zone, std::size_t target,
                        SeededRng& rng) {
  const BoundingBox box = *bounding_box(zone);
  const Centroid ctr = centroid(zone);
  const Ellipse shape{
      ctr.row + rng.uniform(-0.15, 0.15) * box.height(),
      ctr.col + rng.uniform(-0.15, 0.15) * box.width(),
      std::max(1.0, box.height() / 2.0), std::max(1.0, box.width() / 2.0)};
  return grow_blob(zone, shape, target);
}

// Tall, narrow blob centred on the lung's middle rows so that it reaches
// all three thirds.
RasterMask lung_strip(const RasterMask& lung, std::size_t target,
                      SeededRng& rng) {
  const BoundingBox box = *bounding_box(lung);
  const Centroid ctr = centroid(lung);
  const double mid = (box.min_row + box.max_row) / 2.0;
  const Ellipse shape{mid + rng.uniform(-0.04, 0.04) * box.height(),
                      ctr.col + rng.uniform(-0.1, 0.1) * box.width(),
                      std::max(1.0, box.height() / 2.0), 1.0};
  return grow_blob(lung, shape, target);
}

}  // namespace

StubTextToMask::StubTextToMask(SeverityPolicy policy)
    : policy_(std::move(policy)) {
  policy_.validate();
}

RasterMask StubTextToMask::place(const Finding& finding, const OrganMap& organ,
                                 std::uint64_t seed) const {
  if (!finding.well_formed() || finding.is_no_finding()) {
    throw InvalidFinding("cannot place '" + describe(finding) + "'");
  }
  const ZoneMap zones = define_organ_parts(organ);
  const Location loc = *finding.location;
  const Severity sev = *finding.severity;
  const std::string what = describe(finding);
  SeededRng rng(seed);

  auto verify = [&](const RasterMask& m) {
    const PathologyAnnotation a{finding.disease, m};
    const auto got =
        caption(organ, zones, std::span<const PathologyAnnotation>(&a, 1),
                policy_);
    return got.size() == 1 && got.front() == finding;
  };

  if (finding.disease == DiseaseClass::kCardiomegaly) {
    if (loc != Location::kHeart) {
      throw UnplaceableFinding("'" + what + "': cardiomegaly is only placed on heart");
    }
    const RasterMask& heart = zones.zone(Location::kHeart);
    const auto hb = bounding_box(heart);
    const auto tb = bounding_box(organ.lungs());
    if (!hb || !tb) {
      throw UnplaceableFinding("'" + what + "': heart or lungs are empty");
    }
    const double thorax = tb->width();
    std::vector<int> widths;
    for (int wdt = hb->width(); wdt <= organ.width(); ++wdt) {
      if (policy_.ctr.grade(wdt / thorax) == sev) widths.push_back(wdt);
    }
    if (widths.empty()) {
      throw UnplaceableFinding("'" + what +
                               "': no cardiac width reaches that CTR band");
    }
    // Stay away from the band edges when there is room.
    std::size_t lo = 0;
    std::size_t hi = widths.size();
    if (widths.size() >= 5) {
      lo = widths.size() / 5;
      hi = widths.size() - widths.size() / 5;
    }
    const int width = widths[lo + rng.below(hi - lo)];
    const int extra = width - hb->width();
    int left = extra / 2;
    int right = extra - left;
    if (hb->min_col - left < 0) {
      right += left - hb->min_col;
      left = hb->min_col;
    }
    if (hb->max_col + right > organ.width() - 1) {
      left += hb->max_col + right - (organ.width() - 1);
      right = organ.width() - 1 - hb->max_col;
    }
    std::vector<int> row_min(organ.height(), -1);
    std::vector<int> row_max(organ.height(), -1);
    for (int r = hb->min_row; r <= hb->max_row; ++r) {
      for (int c = 0; c < organ.width(); ++c) {
        if (!heart.at(r, c)) continue;
        if (row_min[r] < 0) row_min[r] = c;
        row_max[r] = c;
      }
    }
    RasterMask lesion = RasterMask::from_predicate(
        organ.width(), organ.height(), [&](int r, int c) {
          return row_min[r] >= 0 && c >= row_min[r] - left &&
                 c <= row_max[r] + right;
        });
    if (!verify(lesion)) {
      throw UnplaceableFinding("'" + what + "': widened heart did not grade as requested");
    }
    return lesion;
  }

  const SeverityBands& bands = policy_.bands_for(finding.disease);
  const auto [f_lo, f_hi] = fraction_range(bands, sev);

  for (int attempt = 0; attempt < kPlacementTries; ++attempt) {
    const double spread = attempt == 0 ? 0.3 : 0.45;
    const double fraction =
        f_lo + (f_hi - f_lo) * rng.uniform(0.5 - spread, 0.5 + spread);

    RasterMask blob(organ.width(), organ.height());
    if (loc == Location::kBilateralLung) {
      const RasterMask& l = zones.zone(Location::kLeftLung);
      const RasterMask& r = zones.zone(Location::kRightLung);
      if (area(l) == 0 || area(r) == 0) {
        throw UnplaceableFinding("'" + what + "': a lung is empty");
      }
      blob = unite(compact_blob(l, target_area(fraction, area(l)), rng),
                   compact_blob(r, target_area(fraction, area(r)), rng));
    } else {
      const RasterMask& zone = zones.zone(loc);
      const std::size_t za = area(zone);
      if (za == 0) {
        throw UnplaceableFinding("'" + what + "': zone is empty");
      }
      const std::size_t n = target_area(fraction, za);
      blob = loc == Location::kLeftLung || loc == Location::kRightLung
                 ? lung_strip(zone, n, rng)
                 : compact_blob(zone, n, rng);
    }
    if (verify(blob)) return blob;
  }
  throw UnplaceableFinding("'" + what + "': no blob in " +
                           std::to_string(kPlacementTries) +
                           " tries graded as requested");
}

std::vector<PathologyAnnotation> StubTextToMask::generate(
    const PromptSpec& prompt, const OrganMap& organ, std::uint64_t seed) {
  std::vector<PathologyAnnotation> out;
  const auto& findings = prompt.findings();
  for (std::size_t i = 0; i < findings.size(); ++i) {
    if (findings[i].is_no_finding()) continue;
    out.push_back({findings[i].disease,
                   place(findings[i], organ, derive_seed({seed, i}))});
  }
  return out;
}

GrayImage StubMaskToImage::generate(
    const PromptSpec& /*prompt*/, const OrganMap& organ,
    std::span<const PathologyAnnotation> pathology, std::uint64_t seed) {
  constexpr int kLevels[kMaxOrganLabel + 1] = {16, 70, 70, 165, 185};
  const int w = organ.width();
  const int h = organ.height();
  SeededRng rng(seed);
  std::vector<std::uint8_t> px(static_cast<std::size_t>(w) * h);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      const std::size_t i = static_cast<std::size_t>(r) * w + c;
      int v = kLevels[organ.labels()[i]] + (r * 20) / std::max(1, h);
      for (const auto& a : pathology) {
        if (a.mask.width() != w || a.mask.height() != h) {
          throw DimensionMismatch(a.mask.width(), a.mask.height(), w, h);
        }
        if (a.mask[i]) v += 55;
      }
      v += static_cast<int>(rng.below(17)) - 8;
      px[i] = static_cast<std::uint8_t>(std::clamp(v, 0, 255));
    }
  }
  return GrayImage(w, h, std::move(px));
}

ScheduleScorer::ScheduleScorer(std::string pattern)
    : pattern_(std::move(pattern)) {
  if (pattern_.empty() ||
      pattern_.find_first_not_of("PF") != std::string::npos) {
    throw ValidationError("schedule pattern must be a non-empty string of P and F");
  }
}

ScoreResult ScheduleScorer::score(const GrayImage&,
                                  const ScoreContext& context) {
  const std::size_t i = std::min<std::size_t>(
      static_cast<std::size_t>(std::max(0, context.attempt_index)),
      pattern_.size() - 1);
  const bool pass = pattern_[i] == 'P';
  return {pass ? 1.0 : 0.0, pass};
}

RejectEveryScorer::RejectEveryScorer(int n) : n_(n) {
  if (n_ < 1) throw ValidationError("reject-every needs n >= 1");
}

ScoreResult RejectEveryScorer::score(const GrayImage&,
                                     const ScoreContext& context) {
  const auto n = static_cast<std::size_t>(n_);
  const bool pass = context.request_index % n != n - 1;
  return {pass ? 1.0 : 0.0, pass};
}

ContrastScorer::ContrastScorer(double min_std) : min_std_(min_std) {
  if (!(min_std_ >= 0.0)) throw ValidationError("contrast threshold must be >= 0");
}

ScoreResult ContrastScorer::score(const GrayImage& image, const ScoreContext&) {
  double sum = 0.0;
  double sq = 0.0;
  for (std::uint8_t p : image.pixels()) {
    sum += p;
    sq += static_cast<double>(p) * p;
  }
  const double n = static_cast<double>(image.size());
  const double m = sum / n;
  const double sd = std::sqrt(std::max(0.0, sq / n - m * m));
  return {sd, sd >= min_std_};
}

std::string ContrastScorer::name() const {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), min_std_);
  return "contrast:" + std::string(buf, res.ptr);
}

std::unique_ptr<QualityScorer> make_scorer(std::string_view spec) {
  const std::size_t colon = spec.find(':');
  const std::string_view kind = spec.substr(0, colon);
  const std::string_view arg =
      colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  auto number = [&](auto& out) {
    const auto res = std::from_chars(arg.data(), arg.data() + arg.size(), out);
    if (arg.empty() || res.ec != std::errc() ||
        res.ptr != arg.data() + arg.size()) {
      throw ValidationError("bad argument in filter spec '" + std::string(spec) + "'");
    }
  };
  if (kind == "pass-all" && arg.empty()) return std::make_unique<PassAllScorer>();
  if (kind == "reject-all" && arg.empty()) return std::make_unique<RejectAllScorer>();
  if (kind == "schedule") return std::make_unique<ScheduleScorer>(std::string(arg));
  if (kind == "reject-every") {
    int n = 0;
    number(n);
    return std::make_unique<RejectEveryScorer>(n);
  }
  if (kind == "contrast") {
    double d = 0.0;
    number(d);
    return std::make_unique<ContrastScorer>(d);
  }
  throw ValidationError("unknown filter spec '" + std::string(spec) + "'");
}

}  // namespace aurad

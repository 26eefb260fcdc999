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

#include "aurad/prompt_tool.h"

#include <algorithm>
#include <array>
#include <map>

#include "aurad/error.h"

namespace aurad {
namespace {

constexpr std::array<Location, 3> kLeftThirds = {
    Location::kLeftUpperLung, Location::kLeftMiddleLung,
    Location::kLeftLowerLung};
constexpr std::array<Location, 3> kRightThirds = {
    Location::kRightUpperLung, Location::kRightMiddleLung,
    Location::kRightLowerLung};

// Candidates for the plain argmax, in canonical order.
constexpr std::array<Location, 8> kArgmaxZones = {
    Location::kLeftUpperLung,  Location::kLeftMiddleLung,
    Location::kLeftLowerLung,  Location::kRightUpperLung,
    Location::kRightMiddleLung, Location::kRightLowerLung,
    Location::kMediastinum,    Location::kHeart};

bool holds_lesion_share(std::size_t overlap, const OverlapReport& report,
                        const SeverityPolicy& policy) {
  return overlap > 0 && static_cast<double>(overlap) >=
                            policy.lung_epsilon *
                                static_cast<double>(report.lesion_area);
}

bool qualifies_as_lung(const OverlapReport& report, Location lung,
                       const std::array<Location, 3>& thirds,
                       const SeverityPolicy& policy) {
  const ZoneOverlap& e = report.at(lung);
  if (e.overlap_area == 0) return false;
  if (e.zone_area > 0 &&
      static_cast<double>(e.overlap_area) >=
          policy.promotion_threshold * static_cast<double>(e.zone_area)) {
    return true;
  }
  return std::all_of(thirds.begin(), thirds.end(), [&](Location t) {
    return holds_lesion_share(report.at(t).overlap_area, report, policy);
  });
}

void check_shape(const RasterMask& mask, const OrganMap& organ) {
  if (mask.width() != organ.width() || mask.height() != organ.height()) {
    throw DimensionMismatch(mask.width(), mask.height(), organ.width(),
                            organ.height());
  }
}

}  // namespace

bool OverlapReport::any_overlap() const {
  return std::any_of(entries.begin(), entries.end(),
                     [](const ZoneOverlap& e) { return e.overlap_area > 0; });
}

OverlapReport compute_overlap_report(const RasterMask& lesion,
                                     const ZoneMap& zones) {
  OverlapReport report;
  report.lesion_area = area(lesion);
  report.entries.reserve(kLocations.size());
  for (Location loc : kLocations) {
    const RasterMask& z = zones.zone(loc);
    report.entries.push_back(
        ZoneOverlap{loc, intersection_area(lesion, z), area(z)});
  }
  return report;
}

double cardiothoracic_ratio(const OrganMap& organ) {
  return cardiothoracic_ratio(organ.part(OrganLabel::kHeart), organ);
}

double cardiothoracic_ratio(const RasterMask& heart, const OrganMap& organ) {
  check_shape(heart, organ);
  const auto heart_box = bounding_box(heart);
  if (!heart_box) throw MissingAnatomy("heart is empty");
  const auto thorax_box = bounding_box(organ.lungs());
  if (!thorax_box) throw MissingAnatomy("lungs are empty");
  return static_cast<double>(heart_box->width()) /
         static_cast<double>(thorax_box->width());
}

bool involves_both_lungs(const OverlapReport& report,
                         const SeverityPolicy& policy) {
  return holds_lesion_share(report.at(Location::kLeftLung).overlap_area,
                            report, policy) &&
         holds_lesion_share(report.at(Location::kRightLung).overlap_area,
                            report, policy);
}

Location select_location(const OverlapReport& report,
                         const SeverityPolicy& policy) {
  if (!report.any_overlap()) throw NoOverlap("lesion overlaps no zone");
  if (involves_both_lungs(report, policy)) return Location::kBilateralLung;

  const bool left = qualifies_as_lung(report, Location::kLeftLung, kLeftThirds,
                                      policy);
  const bool right = qualifies_as_lung(report, Location::kRightLung,
                                       kRightThirds, policy);
  if (left && right) {
    return report.at(Location::kLeftLung).overlap_area >=
                   report.at(Location::kRightLung).overlap_area
               ? Location::kLeftLung
               : Location::kRightLung;
  }
  if (left) return Location::kLeftLung;
  if (right) return Location::kRightLung;

  Location best = kArgmaxZones.front();
  std::size_t best_area = 0;
  for (Location loc : kArgmaxZones) {
    if (report.at(loc).overlap_area > best_area) {
      best = loc;
      best_area = report.at(loc).overlap_area;
    }
  }
  return best;
}

Severity grade_severity(DiseaseClass disease, const OverlapReport& report,
                        Location selected, std::optional<double> ctr,
                        const SeverityPolicy& policy) {
  if (disease == DiseaseClass::kCardiomegaly) {
    if (!ctr) throw MissingCtr("cardiomegaly needs a cardiothoracic ratio");
    return policy.ctr.grade(*ctr);
  }
  const ZoneOverlap& e = report.at(selected);
  if (e.zone_area == 0) {
    throw NoOverlap(std::string("zone '") + std::string(to_token(selected)) +
                    "' is empty");
  }
  const double fraction = static_cast<double>(e.overlap_area) /
                          static_cast<double>(e.zone_area);
  return policy.bands_for(disease).grade(fraction);
}

std::vector<Finding> caption(const OrganMap& organ,
                             std::span<const PathologyAnnotation> annotations,
                             const SeverityPolicy& policy) {
  return caption(organ, define_organ_parts(organ), annotations, policy);
}

std::vector<Finding> caption(const OrganMap& organ, const ZoneMap& zones,
                             std::span<const PathologyAnnotation> annotations,
                             const SeverityPolicy& policy) {
  // Union per class so the result does not depend on annotation order.
  std::map<DiseaseClass, RasterMask> by_class;
  for (const auto& a : annotations) {
    check_shape(a.mask, organ);
    if (a.disease == DiseaseClass::kNoFinding) continue;
    auto it = by_class.find(a.disease);
    if (it == by_class.end()) {
      by_class.emplace(a.disease, a.mask);
    } else {
      it->second = unite(it->second, a.mask);
    }
  }

  std::vector<Finding> findings;
  for (const auto& [disease, mask] : by_class) {
    if (disease == DiseaseClass::kCardiomegaly) {
      const RasterMask& heart = zones.zone(Location::kHeart);
      if (intersection_area(mask, heart) == 0) continue;
      const double ctr = cardiothoracic_ratio(unite(heart, mask), organ);
      findings.push_back(Finding::of(policy.ctr.grade(ctr), disease,
                                     Location::kHeart));
      continue;
    }

    const OverlapReport whole = compute_overlap_report(mask, zones);
    if (!whole.any_overlap()) continue;
    if (involves_both_lungs(whole, policy)) {
      findings.push_back(Finding::of(
          grade_severity(disease, whole, Location::kBilateralLung, std::nullopt,
                         policy),
          disease, Location::kBilateralLung));
      continue;
    }
    for (const RasterMask& component : connected_components(mask)) {
      const OverlapReport report = compute_overlap_report(component, zones);
      if (!report.any_overlap()) continue;
      const Location loc = select_location(report, policy);
      findings.push_back(Finding::of(
          grade_severity(disease, report, loc, std::nullopt, policy), disease,
          loc));
    }
  }

  std::sort(findings.begin(), findings.end());
  findings.erase(std::unique(findings.begin(), findings.end()), findings.end());
  if (findings.empty()) findings.push_back(Finding::no_finding());
  return findings;
}

std::string describe(const Finding& f) {
  if (f.is_no_finding() || !f.severity || !f.location) {
    return std::string(to_token(f.disease));
  }
  return std::string(to_token(*f.severity)) + " " +
         std::string(to_token(f.disease)) + " on " +
         std::string(to_token(*f.location));
}

}  // namespace aurad

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

// Rule-based captioning of pathology masks against an organ map.
//
// For each disease class the lesion is overlaid on the eleven anatomical
// zones. Cardiomegaly is always placed on the heart and graded by the
// cardiothoracic ratio. Any other class that reaches both lungs (each lung
// holding at least `lung_epsilon` of the class mask) becomes one
// `bilateral lung` finding; otherwise each 8-connected component is placed
// with select_location() and graded by how much of the chosen zone it
// covers. Identical findings are merged and the result is sorted by class,
// location and severity.

#ifndef AURAD_PROMPT_TOOL_H_
#define AURAD_PROMPT_TOOL_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "aurad/finding.h"
#include "aurad/mask.h"
#include "aurad/severity_policy.h"
#include "aurad/zones.h"

namespace aurad {

struct ZoneOverlap {
  Location location;
  std::size_t overlap_area;
  std::size_t zone_area;

  friend bool operator==(const ZoneOverlap&, const ZoneOverlap&) = default;
};

struct OverlapReport {
  std::size_t lesion_area = 0;
  std::vector<ZoneOverlap> entries;  // one per Location, canonical order

  const ZoneOverlap& at(Location loc) const {
    return entries[static_cast<std::size_t>(loc)];
  }
  bool any_overlap() const;

  friend bool operator==(const OverlapReport&, const OverlapReport&) = default;
};

OverlapReport compute_overlap_report(const RasterMask& lesion,
                                     const ZoneMap& zones);

// Width of the heart bounding box over the width of the combined lung
// bounding box. The second form measures the cardiac extent from `heart`
// instead of the organ map's heart label. Throws MissingAnatomy.
double cardiothoracic_ratio(const OrganMap& organ);
double cardiothoracic_ratio(const RasterMask& heart, const OrganMap& organ);

// True when the lesion overlaps both lungs with at least
// `lung_epsilon * lesion_area` pixels in each.
bool involves_both_lungs(const OverlapReport& report,
                         const SeverityPolicy& policy);

// Bilateral if both lungs are involved; otherwise a whole lung if the lesion
// covers at least `promotion_threshold` of it or reaches all three of its
// thirds (each with at least `lung_epsilon` of the lesion); otherwise the
// sub-zone, heart or mediastinum with the largest overlap, ties going to the
// earlier Location. Throws NoOverlap if nothing overlaps.
Location select_location(const OverlapReport& report,
                         const SeverityPolicy& policy);

// Cardiomegaly is graded from `ctr` (MissingCtr if absent); any other class
// from overlap(selected) / zone_area(selected).
Severity grade_severity(DiseaseClass disease, const OverlapReport& report,
                        Location selected, std::optional<double> ctr,
                        const SeverityPolicy& policy);

std::vector<Finding> caption(const OrganMap& organ,
                             std::span<const PathologyAnnotation> annotations,
                             const SeverityPolicy& policy);

// Same, reusing zones already derived from `organ`.
std::vector<Finding> caption(const OrganMap& organ, const ZoneMap& zones,
                             std::span<const PathologyAnnotation> annotations,
                             const SeverityPolicy& policy);

}  // namespace aurad

#endif  // AURAD_PROMPT_TOOL_H_

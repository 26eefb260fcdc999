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

// Thresholds used to grade severity and to pick major lung regions.
//
// Policy files are plain `key = value` lines; `#` starts a comment.
//
//   lung_epsilon              = 0.05   # min share of the lesion per lung
//   promotion_threshold       = 0.50   # lung coverage that selects the lung
//   ctr.mild_below            = 0.50   # cardiothoracic ratio bands
//   ctr.severe_above          = 0.55
//   default.mild_below        = 0.10   # overlap fraction bands
//   default.severe_above      = 0.30
//   Pleural_Thickening.mild_below = 0.05   # per-class override
//
// Class keys use the file-name token (spaces as underscores) and match
// case-insensitively. A per-class override inherits whichever bound it does
// not set from the `default.*` bounds.

#ifndef AURAD_SEVERITY_POLICY_H_
#define AURAD_SEVERITY_POLICY_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "aurad/vocabulary.h"

namespace aurad {

// value < mild_below is mild, value > severe_above is severe, and the closed
// interval between them is moderate.
struct SeverityBands {
  double mild_below;
  double severe_above;

  Severity grade(double value) const {
    if (value < mild_below) return Severity::kMild;
    if (value > severe_above) return Severity::kSevere;
    return Severity::kModerate;
  }

  friend bool operator==(const SeverityBands&, const SeverityBands&) = default;
};

struct SeverityPolicy {
  SeverityBands default_bands{0.10, 0.30};
  std::map<DiseaseClass, SeverityBands> per_class;
  SeverityBands ctr{0.50, 0.55};
  double lung_epsilon = 0.05;
  double promotion_threshold = 0.50;

  const SeverityBands& bands_for(DiseaseClass c) const;

  // Throws InvalidPolicy unless 0 < mild_below <= severe_above < 1 for every
  // band set and both ratios lie in [0, 1].
  void validate() const;

  friend bool operator==(const SeverityPolicy&, const SeverityPolicy&) = default;
};

SeverityPolicy parse_severity_policy(std::string_view text);
SeverityPolicy load_severity_policy(const std::filesystem::path& path);

// Canonical `key = value` form; parse_severity_policy round-trips it.
std::string format_severity_policy(const SeverityPolicy& policy);

}  // namespace aurad

#endif  // AURAD_SEVERITY_POLICY_H_

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

#ifndef AURAD_FINDING_H_
#define AURAD_FINDING_H_

#include <compare>
#include <optional>
#include <string>

#include "aurad/vocabulary.h"

namespace aurad {

// One (class, severity, location) triple. The NoFinding class carries neither
// severity nor location; every other class carries both.
//
// Ordering is by class, then location, then severity, which is the order
// findings appear in a rendered prompt.
struct Finding {
  DiseaseClass disease = DiseaseClass::kNoFinding;
  std::optional<Location> location;
  std::optional<Severity> severity;

  static Finding of(Severity s, DiseaseClass c, Location loc) {
    return Finding{c, loc, s};
  }
  static Finding no_finding() { return Finding{}; }

  bool is_no_finding() const { return disease == DiseaseClass::kNoFinding; }
  bool well_formed() const {
    return is_no_finding() ? (!location && !severity) : (location && severity);
  }

  friend auto operator<=>(const Finding&, const Finding&) = default;
  friend bool operator==(const Finding&, const Finding&) = default;
};

// "moderate Cardiomegaly on heart" / "No Finding".
std::string describe(const Finding& f);

}  // namespace aurad

#endif  // AURAD_FINDING_H_

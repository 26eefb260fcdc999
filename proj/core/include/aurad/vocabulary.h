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

// Closed vocabularies shared by the prompt tool, the grammar and the CLI.
// Enumerator order is canonical: it drives argmax tie-breaks and the order in
// which findings are rendered.

#ifndef AURAD_VOCABULARY_H_
#define AURAD_VOCABULARY_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace aurad {

enum class DiseaseClass {
  kAtelectasis,
  kCalcification,
  kCardiomegaly,
  kConsolidation,
  kDiffuseNodule,
  kEffusion,
  kEmphysema,
  kFibrosis,
  kFracture,
  kMass,
  kNodule,
  kPleuralThickening,
  kPneumothorax,
  kNoFinding,
};

inline constexpr std::array<DiseaseClass, 13> kPathologyClasses = {
    DiseaseClass::kAtelectasis,   DiseaseClass::kCalcification,
    DiseaseClass::kCardiomegaly,  DiseaseClass::kConsolidation,
    DiseaseClass::kDiffuseNodule, DiseaseClass::kEffusion,
    DiseaseClass::kEmphysema,     DiseaseClass::kFibrosis,
    DiseaseClass::kFracture,      DiseaseClass::kMass,
    DiseaseClass::kNodule,        DiseaseClass::kPleuralThickening,
    DiseaseClass::kPneumothorax,
};

enum class Location {
  kLeftUpperLung,
  kLeftMiddleLung,
  kLeftLowerLung,
  kRightUpperLung,
  kRightMiddleLung,
  kRightLowerLung,
  kMediastinum,
  kHeart,
  kLeftLung,
  kRightLung,
  kBilateralLung,
};

inline constexpr std::array<Location, 11> kLocations = {
    Location::kLeftUpperLung,  Location::kLeftMiddleLung,
    Location::kLeftLowerLung,  Location::kRightUpperLung,
    Location::kRightMiddleLung, Location::kRightLowerLung,
    Location::kMediastinum,    Location::kHeart,
    Location::kLeftLung,       Location::kRightLung,
    Location::kBilateralLung,
};

enum class Severity { kMild, kModerate, kSevere };

inline constexpr std::array<Severity, 3> kSeverities = {
    Severity::kMild, Severity::kModerate, Severity::kSevere};

// Canonical spellings, e.g. "Pleural Thickening", "right lower lung", "mild".
std::string_view to_token(DiseaseClass c);
std::string_view to_token(Location loc);
std::string_view to_token(Severity s);

// Case-insensitive lookups; internal whitespace runs are collapsed first.
std::optional<DiseaseClass> class_from_token(std::string_view token);
std::optional<Location> location_from_token(std::string_view token);
std::optional<Severity> severity_from_token(std::string_view token);

// File-name form of a class token: spaces replaced with underscores.
std::string class_file_token(DiseaseClass c);
std::optional<DiseaseClass> class_from_file_token(std::string_view token);

bool is_lung_subzone(Location loc);
bool is_left_lung_zone(Location loc);
bool is_right_lung_zone(Location loc);

// The major lung region that contains `loc`, or nullopt for heart and
// mediastinum. `left lung` maps to itself.
std::optional<Location> containing_lung(Location loc);

// True when `inner` equals `outer` or lies inside it (sub-zone within its
// lung, any lung zone within `bilateral lung`).
bool location_within(Location inner, Location outer);

}  // namespace aurad

#endif  // AURAD_VOCABULARY_H_

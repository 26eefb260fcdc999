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

#include "aurad/vocabulary.h"

#include <algorithm>
#include <cctype>

namespace aurad {
namespace {

std::string normalize(std::string_view token) {
  std::string out;
  out.reserve(token.size());
  bool pending_space = false;
  for (char ch : token) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(
        static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }
  return out;
}

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(const std::array<Enum, N>& values,
                           std::string_view token) {
  const std::string key = normalize(token);
  for (Enum v : values) {
    if (normalize(to_token(v)) == key) return v;
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_token(DiseaseClass c) {
  switch (c) {
    case DiseaseClass::kAtelectasis:
      return "Atelectasis";
    case DiseaseClass::kCalcification:
      return "Calcification";
    case DiseaseClass::kCardiomegaly:
      return "Cardiomegaly";
    case DiseaseClass::kConsolidation:
      return "Consolidation";
    case DiseaseClass::kDiffuseNodule:
      return "Diffuse Nodule";
    case DiseaseClass::kEffusion:
      return "Effusion";
    case DiseaseClass::kEmphysema:
      return "Emphysema";
    case DiseaseClass::kFibrosis:
      return "Fibrosis";
    case DiseaseClass::kFracture:
      return "Fracture";
    case DiseaseClass::kMass:
      return "Mass";
    case DiseaseClass::kNodule:
      return "Nodule";
    case DiseaseClass::kPleuralThickening:
      return "Pleural Thickening";
    case DiseaseClass::kPneumothorax:
      return "Pneumothorax";
    case DiseaseClass::kNoFinding:
      return "No Finding";
  }
  return "";
}

std::string_view to_token(Location loc) {
  switch (loc) {
    case Location::kLeftUpperLung:
      return "left upper lung";
    case Location::kLeftMiddleLung:
      return "left middle lung";
    case Location::kLeftLowerLung:
      return "left lower lung";
    case Location::kRightUpperLung:
      return "right upper lung";
    case Location::kRightMiddleLung:
      return "right middle lung";
    case Location::kRightLowerLung:
      return "right lower lung";
    case Location::kMediastinum:
      return "mediastinum";
    case Location::kHeart:
      return "heart";
    case Location::kLeftLung:
      return "left lung";
    case Location::kRightLung:
      return "right lung";
    case Location::kBilateralLung:
      return "bilateral lung";
  }
  return "";
}

std::string_view to_token(Severity s) {
  switch (s) {
    case Severity::kMild:
      return "mild";
    case Severity::kModerate:
      return "moderate";
    case Severity::kSevere:
      return "severe";
  }
  return "";
}

std::optional<DiseaseClass> class_from_token(std::string_view token) {
  return lookup(kPathologyClasses, token);
}

std::optional<Location> location_from_token(std::string_view token) {
  return lookup(kLocations, token);
}

std::optional<Severity> severity_from_token(std::string_view token) {
  return lookup(kSeverities, token);
}

std::string class_file_token(DiseaseClass c) {
  std::string token(to_token(c));
  std::replace(token.begin(), token.end(), ' ', '_');
  return token;
}

std::optional<DiseaseClass> class_from_file_token(std::string_view token) {
  for (DiseaseClass c : kPathologyClasses) {
    if (class_file_token(c) == token) return c;
  }
  return std::nullopt;
}

bool is_lung_subzone(Location loc) {
  return loc <= Location::kRightLowerLung;
}

bool is_left_lung_zone(Location loc) {
  return loc == Location::kLeftUpperLung || loc == Location::kLeftMiddleLung ||
         loc == Location::kLeftLowerLung || loc == Location::kLeftLung;
}

bool is_right_lung_zone(Location loc) {
  return loc == Location::kRightUpperLung ||
         loc == Location::kRightMiddleLung ||
         loc == Location::kRightLowerLung || loc == Location::kRightLung;
}

std::optional<Location> containing_lung(Location loc) {
  if (is_left_lung_zone(loc)) return Location::kLeftLung;
  if (is_right_lung_zone(loc)) return Location::kRightLung;
  if (loc == Location::kBilateralLung) return Location::kBilateralLung;
  return std::nullopt;
}

bool location_within(Location inner, Location outer) {
  if (inner == outer) return true;
  if (outer == Location::kBilateralLung) {
    return is_left_lung_zone(inner) || is_right_lung_zone(inner);
  }
  if (outer == Location::kLeftLung) return is_left_lung_zone(inner);
  if (outer == Location::kRightLung) return is_right_lung_zone(inner);
  return false;
}

}  // namespace aurad

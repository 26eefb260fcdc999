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

#include <gtest/gtest.h>

#include <set>
#include <string>

namespace aurad {
namespace {

TEST(VocabularyTest, ThirteenDistinctPathologyClasses) {
  std::set<std::string> tokens;
  for (DiseaseClass c : kPathologyClasses) tokens.emplace(to_token(c));
  EXPECT_EQ(tokens.size(), 13u);
  EXPECT_FALSE(tokens.count("No Finding"));
}

TEST(VocabularyTest, TokensRoundTrip) {
  for (DiseaseClass c : kPathologyClasses) {
    EXPECT_EQ(class_from_token(to_token(c)), c);
    EXPECT_EQ(class_from_file_token(class_file_token(c)), c);
  }
  for (Location l : kLocations) EXPECT_EQ(location_from_token(to_token(l)), l);
  for (Severity s : kSeverities) EXPECT_EQ(severity_from_token(to_token(s)), s);
}

TEST(VocabularyTest, LookupIgnoresCaseAndSpacing) {
  EXPECT_EQ(class_from_token("  pleural   THICKENING "),
            DiseaseClass::kPleuralThickening);
  EXPECT_EQ(location_from_token("Right  Lower Lung"), Location::kRightLowerLung);
  EXPECT_EQ(severity_from_token("MILD"), Severity::kMild);
}

TEST(VocabularyTest, UnknownTokensRejected) {
  EXPECT_FALSE(class_from_token("Pneumonia"));
  EXPECT_FALSE(class_from_token("No Finding"));
  EXPECT_FALSE(location_from_token("left lobe"));
  EXPECT_FALSE(severity_from_token("huge"));
}

TEST(VocabularyTest, FileTokensUseUnderscores) {
  EXPECT_EQ(class_file_token(DiseaseClass::kDiffuseNodule), "Diffuse_Nodule");
  EXPECT_FALSE(class_from_file_token("Diffuse Nodule"));
}

TEST(VocabularyTest, ContainmentRelation) {
  EXPECT_TRUE(location_within(Location::kLeftUpperLung, Location::kLeftLung));
  EXPECT_TRUE(location_within(Location::kRightLowerLung, Location::kBilateralLung));
  EXPECT_TRUE(location_within(Location::kLeftLung, Location::kBilateralLung));
  EXPECT_FALSE(location_within(Location::kLeftUpperLung, Location::kRightLung));
  EXPECT_FALSE(location_within(Location::kHeart, Location::kBilateralLung));
  EXPECT_FALSE(location_within(Location::kLeftLung, Location::kLeftUpperLung));
  EXPECT_EQ(containing_lung(Location::kRightMiddleLung), Location::kRightLung);
  EXPECT_FALSE(containing_lung(Location::kMediastinum));
}

}  // namespace
}  // namespace aurad

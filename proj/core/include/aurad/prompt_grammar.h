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

// Structured prompt grammar.
//
//   prompt  := prefix ws clause ("," ws? clause)*  |  prefix ws "No Finding"
//   prefix  := "A photo of a Chest X-ray with" | "A Chest x-ray photo with"
//   clause  := severity ws class ws "on" ws location
//
// render() always emits the first prefix. parse() matches either prefix
// case-insensitively, tolerates extra whitespace, and rejects any token
// outside the closed vocabularies.

#ifndef AURAD_PROMPT_GRAMMAR_H_
#define AURAD_PROMPT_GRAMMAR_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aurad/finding.h"

namespace aurad {

inline constexpr std::string_view kCanonicalPrefix =
    "A photo of a Chest X-ray with";
inline constexpr std::string_view kAlternatePrefix = "A Chest x-ray photo with";
inline constexpr std::string_view kNoFindingPhrase = "No Finding";

// Throws EmptyFindingList for an empty list and InvalidFinding for a
// malformed finding or a NoFinding mixed with real findings.
std::string render(std::span<const Finding> findings);

std::vector<Finding> parse(std::string_view text);

// A findings list together with its canonical rendering.
class PromptSpec {
 public:
  explicit PromptSpec(std::vector<Finding> findings);

  static PromptSpec from_text(std::string_view text) {
    return PromptSpec(parse(text));
  }

  const std::vector<Finding>& findings() const { return findings_; }
  const std::string& raw_text() const { return raw_text_; }

  friend bool operator==(const PromptSpec&, const PromptSpec&) = default;

 private:
  std::vector<Finding> findings_;
  std::string raw_text_;
};

}  // namespace aurad

#endif  // AURAD_PROMPT_GRAMMAR_H_

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

#include "aurad/prompt_grammar.h"

#include <cctype>

#include "aurad/error.h"

namespace aurad {
namespace {

// Collapses whitespace runs to one space and trims both ends.
std::string squeeze(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending = false;
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      pending = !out.empty();
      continue;
    }
    if (pending) out.push_back(' ');
    pending = false;
    out.push_back(ch);
  }
  return out;
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

bool istarts_with(std::string_view text, std::string_view prefix) {
  return text.size() >= prefix.size() &&
         iequals(text.substr(0, prefix.size()), prefix);
}

// Positions of every case-insensitive occurrence of `needle`.
std::vector<std::size_t> ifind_all(std::string_view hay,
                                   std::string_view needle) {
  std::vector<std::size_t> hits;
  for (std::size_t i = 0; i + needle.size() <= hay.size(); ++i) {
    if (iequals(hay.substr(i, needle.size()), needle)) hits.push_back(i);
  }
  return hits;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

Finding parse_clause(std::string_view clause, std::size_t index) {
  const auto space = clause.find(' ');
  if (space == std::string_view::npos) {
    throw MalformedClause("clause " + std::to_string(index) + " '" +
                          std::string(clause) +
                          "' is not '<severity> <class> on <location>'");
  }
  const std::string_view sev_token = clause.substr(0, space);
  const std::string_view rest = clause.substr(space + 1);

  const auto severity = severity_from_token(sev_token);
  if (!severity) {
    throw UnknownToken(UnknownToken::Kind::kSeverity, std::string(sev_token),
                       index);
  }
  const auto hits = ifind_all(rest, " on ");
  if (hits.size() != 1) {
    throw MalformedClause("clause " + std::to_string(index) + " '" +
                          std::string(clause) +
                          "' needs exactly one ' on ' separator");
  }
  const std::string_view class_token = trim(rest.substr(0, hits[0]));
  const std::string_view loc_token = trim(rest.substr(hits[0] + 4));

  const auto disease = class_from_token(class_token);
  if (!disease) {
    throw UnknownToken(UnknownToken::Kind::kClass, std::string(class_token),
                       index);
  }
  const auto location = location_from_token(loc_token);
  if (!location) {
    throw UnknownToken(UnknownToken::Kind::kLocation, std::string(loc_token),
                       index);
  }
  return Finding::of(*severity, *disease, *location);
}

}  // namespace

std::string render(std::span<const Finding> findings) {
  if (findings.empty()) throw EmptyFindingList("nothing to render");
  std::string out(kCanonicalPrefix);
  out.push_back(' ');
  for (std::size_t i = 0; i < findings.size(); ++i) {
    const Finding& f = findings[i];
    if (!f.well_formed()) {
      throw InvalidFinding("finding " + std::to_string(i) + " is malformed");
    }
    if (f.is_no_finding()) {
      if (findings.size() != 1) {
        throw InvalidFinding("No Finding cannot be combined with findings");
      }
      out += kNoFindingPhrase;
      return out;
    }
    if (i > 0) out += ", ";
    out += to_token(*f.severity);
    out.push_back(' ');
    out += to_token(f.disease);
    out += " on ";
    out += to_token(*f.location);
  }
  return out;
}

std::vector<Finding> parse(std::string_view text) {
  const std::string squeezed = squeeze(text);
  std::string_view body;
  for (std::string_view prefix : {kCanonicalPrefix, kAlternatePrefix}) {
    if (istarts_with(squeezed, prefix)) {
      body = std::string_view(squeezed).substr(prefix.size());
      break;
    }
  }
  if (body.data() == nullptr) {
    throw UnrecognizedPrefix("prompt does not start with '" +
                             std::string(kCanonicalPrefix) + "' or '" +
                             std::string(kAlternatePrefix) + "'");
  }
  if (body.empty() || body.front() != ' ') {
    throw MalformedClause("no findings after the prefix");
  }
  body = trim(body);
  if (iequals(body, kNoFindingPhrase)) return {Finding::no_finding()};

  std::vector<Finding> out;
  std::size_t index = 0;
  while (true) {
    const auto comma = body.find(',');
    const std::string_view clause = trim(body.substr(0, comma));
    if (clause.empty()) {
      throw MalformedClause("clause " + std::to_string(index) + " is empty");
    }
    out.push_back(parse_clause(clause, index));
    if (comma == std::string_view::npos) break;
    body = body.substr(comma + 1);
    ++index;
  }
  return out;
}

PromptSpec::PromptSpec(std::vector<Finding> findings)
    : findings_(std::move(findings)), raw_text_(render(findings_)) {}

}  // namespace aurad

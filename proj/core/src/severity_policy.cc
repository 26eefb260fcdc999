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

#include "aurad/severity_policy.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "aurad/error.h"

namespace aurad {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) {
    ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }
  return out;
}

double parse_number(std::string_view text, int line) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw InvalidPolicy("line " + std::to_string(line) + ": '" +
                        std::string(text) + "' is not a number");
  }
  return value;
}

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

struct PartialBands {
  std::optional<double> mild_below;
  std::optional<double> severe_above;
};

void check_bands(const SeverityBands& b, const std::string& what) {
  if (!(b.mild_below > 0.0 && b.mild_below <= b.severe_above &&
        b.severe_above < 1.0)) {
    throw InvalidPolicy(what + ": need 0 < mild_below <= severe_above < 1, got " +
                        format_number(b.mild_below) + " / " +
                        format_number(b.severe_above));
  }
}

}  // namespace

const SeverityBands& SeverityPolicy::bands_for(DiseaseClass c) const {
  auto it = per_class.find(c);
  return it == per_class.end() ? default_bands : it->second;
}

void SeverityPolicy::validate() const {
  check_bands(default_bands, "default bands");
  check_bands(ctr, "ctr bands");
  for (const auto& [c, b] : per_class) {
    check_bands(b, std::string(to_token(c)) + " bands");
  }
  if (!(lung_epsilon >= 0.0 && lung_epsilon <= 1.0)) {
    throw InvalidPolicy("lung_epsilon must lie in [0, 1]");
  }
  if (!(promotion_threshold >= 0.0 && promotion_threshold <= 1.0)) {
    throw InvalidPolicy("promotion_threshold must lie in [0, 1]");
  }
}

SeverityPolicy parse_severity_policy(std::string_view text) {
  SeverityPolicy policy;
  PartialBands defaults;
  std::map<DiseaseClass, PartialBands> overrides;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidPolicy("line " + std::to_string(line_no) +
                          ": expected 'key = value'");
    }
    const std::string key = lower(trim(line.substr(0, eq)));
    const double value = parse_number(trim(line.substr(eq + 1)), line_no);

    if (key == "lung_epsilon") {
      policy.lung_epsilon = value;
      continue;
    }
    if (key == "promotion_threshold") {
      policy.promotion_threshold = value;
      continue;
    }
    const auto dot = key.rfind('.');
    if (dot == std::string::npos) {
      throw InvalidPolicy("line " + std::to_string(line_no) + ": unknown key '" +
                          key + "'");
    }
    const std::string scope = key.substr(0, dot);
    const std::string field = key.substr(dot + 1);
    if (field != "mild_below" && field != "severe_above") {
      throw InvalidPolicy("line " + std::to_string(line_no) +
                          ": unknown field '" + field + "'");
    }
    const bool is_mild = field == "mild_below";

    if (scope == "ctr") {
      (is_mild ? policy.ctr.mild_below : policy.ctr.severe_above) = value;
    } else if (scope == "default") {
      (is_mild ? defaults.mild_below : defaults.severe_above) = value;
    } else {
      std::string spaced = scope;
      std::replace(spaced.begin(), spaced.end(), '_', ' ');
      const auto disease = class_from_token(spaced);
      if (!disease) {
        throw InvalidPolicy("line " + std::to_string(line_no) +
                            ": unknown class '" + scope + "'");
      }
      auto& o = overrides[*disease];
      (is_mild ? o.mild_below : o.severe_above) = value;
    }
  }

  if (defaults.mild_below) policy.default_bands.mild_below = *defaults.mild_below;
  if (defaults.severe_above) {
    policy.default_bands.severe_above = *defaults.severe_above;
  }
  for (const auto& [c, o] : overrides) {
    policy.per_class[c] = SeverityBands{
        o.mild_below.value_or(policy.default_bands.mild_below),
        o.severe_above.value_or(policy.default_bands.severe_above)};
  }
  policy.validate();
  return policy;
}

SeverityPolicy load_severity_policy(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UnreadableFile(path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_severity_policy(buf.str());
}

std::string format_severity_policy(const SeverityPolicy& policy) {
  std::ostringstream out;
  out << "lung_epsilon = " << format_number(policy.lung_epsilon) << "\n"
      << "promotion_threshold = " << format_number(policy.promotion_threshold)
      << "\n"
      << "ctr.mild_below = " << format_number(policy.ctr.mild_below) << "\n"
      << "ctr.severe_above = " << format_number(policy.ctr.severe_above) << "\n"
      << "default.mild_below = "
      << format_number(policy.default_bands.mild_below) << "\n"
      << "default.severe_above = "
      << format_number(policy.default_bands.severe_above) << "\n";
  for (const auto& [c, b] : policy.per_class) {
    const std::string token = class_file_token(c);
    out << token << ".mild_below = " << format_number(b.mild_below) << "\n"
        << token << ".severe_above = " << format_number(b.severe_above) << "\n";
  }
  return out.str();
}

}  // namespace aurad

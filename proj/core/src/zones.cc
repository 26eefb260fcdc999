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

#include "aurad/zones.h"

#include <array>

#include "aurad/error.h"

namespace aurad {
namespace {

// Returns the three band masks of `lung`, all empty if the lung is empty.
std::array<RasterMask, 3> split_lung(const RasterMask& lung) {
  const int w = lung.width();
  const int h = lung.height();
  const auto box = bounding_box(lung);
  if (!box) return {RasterMask(w, h), RasterMask(w, h), RasterMask(w, h)};
  const auto bands = split_into_thirds(box->min_row, box->max_row);
  auto band_mask = [&](const Band& b) {
    return RasterMask::from_predicate(w, h, [&](int r, int c) {
      return r >= b.first && r <= b.last && lung.at(r, c);
    });
  };
  return {band_mask(bands[0]), band_mask(bands[1]), band_mask(bands[2])};
}

}  // namespace

ZoneMap::ZoneMap(std::vector<RasterMask> zones) : zones_(std::move(zones)) {
  if (zones_.size() != kLocations.size()) {
    throw DegenerateInput("zone map needs one mask per location");
  }
  for (const auto& z : zones_) {
    if (!z.same_shape(zones_.front())) {
      throw DimensionMismatch(z.width(), z.height(), zones_.front().width(),
                              zones_.front().height());
    }
  }
}

std::vector<Band> split_into_thirds(int top, int bottom) {
  const int height = bottom - top + 1;
  const int base = height / 3;
  const int rem = height % 3;
  const int upper = base + (rem >= 1 ? 1 : 0);
  const int middle = base + (rem >= 2 ? 1 : 0);
  return {
      Band{top, top + upper - 1},
      Band{top + upper, top + upper + middle - 1},
      Band{top + upper + middle, bottom},
  };
}

ZoneMap define_organ_parts(const OrganMap& organ) {
  const RasterMask left = organ.part(OrganLabel::kLeftLung);
  const RasterMask right = organ.part(OrganLabel::kRightLung);
  auto left_bands = split_lung(left);
  auto right_bands = split_lung(right);

  std::vector<RasterMask> zones;
  zones.reserve(kLocations.size());
  for (auto& m : left_bands) zones.push_back(std::move(m));
  for (auto& m : right_bands) zones.push_back(std::move(m));
  zones.push_back(organ.part(OrganLabel::kMediastinum));
  zones.push_back(organ.part(OrganLabel::kHeart));
  zones.push_back(left);
  zones.push_back(right);
  zones.push_back(unite(left, right));
  return ZoneMap(std::move(zones));
}

}  // namespace aurad

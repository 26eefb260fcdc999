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

#ifndef AURAD_ZONES_H_
#define AURAD_ZONES_H_

#include <vector>

#include "aurad/mask.h"
#include "aurad/vocabulary.h"

namespace aurad {

// The eleven anatomical locations of an organ map: six lung thirds, heart,
// mediastinum, and the left / right / bilateral lung regions.
class ZoneMap {
 public:
  explicit ZoneMap(std::vector<RasterMask> zones);

  const RasterMask& zone(Location loc) const {
    return zones_[static_cast<std::size_t>(loc)];
  }
  int width() const { return zones_.front().width(); }
  int height() const { return zones_.front().height(); }

 private:
  std::vector<RasterMask> zones_;  // indexed by Location
};

// Row span [first, last] of each third of a lung whose bounding box covers
// rows [top, bottom]. Remainder rows go to the upper band first, then the
// middle band.
struct Band {
  int first;
  int last;
};
std::vector<Band> split_into_thirds(int top, int bottom);

// Splits each lung into upper / middle / lower bands of (near) equal height
// over that lung's own vertical extent. Empty lungs produce empty zones.
ZoneMap define_organ_parts(const OrganMap& organ);

}  // namespace aurad

#endif  // AURAD_ZONES_H_

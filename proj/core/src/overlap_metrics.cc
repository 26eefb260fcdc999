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

#include "aurad/overlap_metrics.h"

namespace aurad {

double dice(const RasterMask& a, const RasterMask& b) {
  const std::size_t inter = intersection_area(a, b);
  const std::size_t total = area(a) + area(b);
  if (total == 0) return 1.0;
  return 2.0 * static_cast<double>(inter) / static_cast<double>(total);
}

double iou(const RasterMask& a, const RasterMask& b) {
  const std::size_t inter = intersection_area(a, b);
  const std::size_t uni = area(a) + area(b) - inter;
  if (uni == 0) return 1.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace aurad

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

#ifndef AURAD_OVERLAP_METRICS_H_
#define AURAD_OVERLAP_METRICS_H_

#include "aurad/mask.h"

namespace aurad {

// 2|A n B| / (|A| + |B|). Two empty masks agree perfectly: 1.0.
double dice(const RasterMask& a, const RasterMask& b);

// |A n B| / |A u B|. Two empty masks agree perfectly: 1.0.
double iou(const RasterMask& a, const RasterMask& b);

}  // namespace aurad

#endif  // AURAD_OVERLAP_METRICS_H_

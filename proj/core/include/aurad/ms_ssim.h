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

// Multi-scale structural similarity.
//
// Each scale filters with a normalized Gaussian window over the "valid"
// region only (no padding). Scales are produced by 2x2 mean pooling; odd
// trailing rows/columns are dropped. The first scales - 1 levels contribute
// their mean contrast-structure term, the last level the full SSIM, each
// raised to its weight. Negative terms keep their sign (|v|^w * sign(v)) so
// the result stays in [-1, 1].

#ifndef AURAD_MS_SSIM_H_
#define AURAD_MS_SSIM_H_

#include <vector>

#include "aurad/mask.h"

namespace aurad {

struct MsSsimConfig {
  int scales = 5;
  std::vector<double> weights = {0.0448, 0.2856, 0.3001, 0.2363, 0.1333};
  int window = 11;
  double sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 255.0;
};

// Mean luminance and contrast-structure terms of single-scale SSIM.
struct SsimTerms {
  double ssim;  // mean of l * cs
  double cs;    // mean of cs
};

// Throws TooSmallForScales when the coarsest level is smaller than the
// window, DimensionMismatch on unequal inputs, and ValidationError when the
// weights do not match the scale count.
double ms_ssim(const GrayImage& x, const GrayImage& y,
               const MsSsimConfig& config = {});

SsimTerms ssim_terms(const GrayImage& x, const GrayImage& y,
                     const MsSsimConfig& config = {});

}  // namespace aurad

#endif  // AURAD_MS_SSIM_H_

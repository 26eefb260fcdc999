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

// Slow, direct re-implementations used as test oracles. None of these call
// into the library's geometry or statistics code; they work on raw pixel
// loops and textbook formulas so a shared bug cannot hide.

#ifndef AURAD_TESTS_SUPPORT_ORACLES_H_
#define AURAD_TESTS_SUPPORT_ORACLES_H_

#include <array>
#include <cstddef>
#include <vector>

#include "aurad/finding.h"
#include "aurad/mask.h"
#include "aurad/severity_policy.h"

namespace aurad::testing {

// Zone index per pixel for the lung thirds (0..5 in Location order, -1 for
// none), computed from row arithmetic alone.
std::vector<int> oracle_lung_thirds(const OrganMap& organ);

// Per-Location pixel tallies of `lesion` (11 entries, Location order).
std::array<std::size_t, 11> oracle_tally(const OrganMap& organ,
                                         const std::vector<std::uint8_t>& lesion);

// Full caption re-derived from pixels.
std::vector<Finding> oracle_caption(
    const OrganMap& organ, const std::vector<PathologyAnnotation>& annotations,
    const SeverityPolicy& policy);

// Single-scale and multi-scale SSIM with a direct 2-D window sum.
struct OracleSsim {
  double ssim;
  double cs;
};
OracleSsim oracle_ssim(const std::vector<double>& x, const std::vector<double>& y,
                       int width, int height);
double oracle_ms_ssim(const GrayImage& x, const GrayImage& y);

using Matrix = std::vector<std::vector<double>>;

// Principal square root by the Denman-Beavers iteration.
Matrix denman_beavers_sqrt(const Matrix& a);
double oracle_frechet(const std::vector<double>& mu1, const Matrix& s1,
                      const std::vector<double>& mu2, const Matrix& s2);

// Two-pass sample covariance (n - 1 denominator).
void oracle_gaussian(const std::vector<std::vector<double>>& x,
                     std::vector<double>& mean, Matrix& cov);

// Sums of squares the spreadsheet way: SSE = SST - SSR - SSC.
struct OracleIcc {
  double icc;
  double ms_r;
  double ms_c;
  double ms_e;
};
OracleIcc oracle_icc(const std::vector<std::vector<int>>& rows);

// Category tallies per item, then the textbook agreement formulas.
struct OracleKappa {
  double kappa;
  double p_bar;
  double p_bar_e;
};
OracleKappa oracle_kappa(const std::vector<std::vector<int>>& rows,
                         int categories);

}  // namespace aurad::testing

#endif  // AURAD_TESTS_SUPPORT_ORACLES_H_

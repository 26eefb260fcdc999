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

// Synthetic anatomy and lesion fixtures shared by the test suites.

#ifndef AURAD_TESTS_SUPPORT_SCENES_H_
#define AURAD_TESTS_SUPPORT_SCENES_H_

#include <filesystem>
#include <string>
#include <vector>

#include "aurad/mask.h"
#include "aurad/seed.h"

namespace aurad::testing {

// Filled axis-aligned ellipse.
RasterMask ellipse(int width, int height, double center_row, double center_col,
                   double semi_rows, double semi_cols);

RasterMask rectangle(int width, int height, int row0, int col0, int row1,
                     int col1);

// Frontal chest layout: patient-left lung on the image right (radiological
// convention), heart low and central, mediastinum above it. Scales with
// the requested size; 128x128 is the reference fixture.
OrganMap chest_organ(int width = 128, int height = 128);

// Widened heart plus a small fibrotic patch in the right middle third of
// chest_organ(); captions to moderate Cardiomegaly and mild Fibrosis.
std::vector<PathologyAnnotation> structured_example_masks();

// Organ map whose cardiothoracic ratio is exactly heart_width / thorax_width.
// Lungs span columns [0, thorax_width) in rows [0, 10); the heart occupies
// rows [12, 18) from column 0.
OrganMap ctr_organ(int heart_width, int thorax_width);

// Random 64x64-style scene for oracle comparisons. Lungs are always present;
// heart and mediastinum usually are.
OrganMap random_organ(SeededRng& rng, int width, int height);
std::vector<PathologyAnnotation> random_annotations(SeededRng& rng, int width,
                                                    int height);

RasterMask random_mask(SeededRng& rng, int width, int height, double density);
GrayImage random_image(SeededRng& rng, int width, int height);

// Scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "aurad");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

// Indexed PNG with a 16-entry palette and arbitrary indices, for feeding
// the organ-map reader values it must reject.
void write_indexed_png(const std::filesystem::path& path, int width, int height,
                       const std::vector<std::uint8_t>& indices);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace aurad::testing

#endif  // AURAD_TESTS_SUPPORT_SCENES_H_

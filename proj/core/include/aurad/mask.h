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

// Raster types and the primitive geometry every other module is built on.
//
// All rasters are row-major with `index = row * width + col`. Values are
// immutable once constructed; operations return new rasters.

#ifndef AURAD_MASK_H_
#define AURAD_MASK_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "aurad/vocabulary.h"

namespace aurad {

class RasterMask {
 public:
  // Empty (all background) mask. Throws DegenerateInput for non-positive
  // dimensions.
  RasterMask(int width, int height);
  // Any nonzero byte is foreground; stored bits are normalized to 0/1.
  RasterMask(int width, int height, std::vector<std::uint8_t> bits);

  static RasterMask full(int width, int height);

  template <typename Pred>
  static RasterMask from_predicate(int width, int height, Pred&& pred) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(width) *
                                   static_cast<std::size_t>(height > 0 ? height : 0));
    for (int r = 0; r < height; ++r) {
      for (int c = 0; c < width; ++c) {
        bits[static_cast<std::size_t>(r) * width + c] = pred(r, c) ? 1 : 0;
      }
    }
    return RasterMask(width, height, std::move(bits));
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return bits_.size(); }

  bool at(int row, int col) const {
    return bits_[static_cast<std::size_t>(row) * width_ + col] != 0;
  }
  bool operator[](std::size_t index) const { return bits_[index] != 0; }
  std::span<const std::uint8_t> bits() const { return bits_; }

  bool same_shape(const RasterMask& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const RasterMask&, const RasterMask&) = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> bits_;
};

// Inclusive pixel bounds.
struct BoundingBox {
  int min_row;
  int max_row;
  int min_col;
  int max_col;

  int height() const { return max_row - min_row + 1; }
  int width() const { return max_col - min_col + 1; }

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

enum class OrganLabel : std::uint8_t {
  kBackground = 0,
  kLeftLung = 1,
  kRightLung = 2,
  kHeart = 3,
  kMediastinum = 4,
};

inline constexpr int kMaxOrganLabel = 4;

class OrganMap {
 public:
  // Throws IllegalLabelValue for the first pixel outside the 0-4 palette.
  OrganMap(int width, int height, std::vector<std::uint8_t> labels);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return labels_.size(); }

  OrganLabel at(int row, int col) const {
    return static_cast<OrganLabel>(
        labels_[static_cast<std::size_t>(row) * width_ + col]);
  }
  std::span<const std::uint8_t> labels() const { return labels_; }

  RasterMask part(OrganLabel label) const;
  RasterMask lungs() const;

  friend bool operator==(const OrganMap&, const OrganMap&) = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> labels_;
};

// 8-bit grayscale image.
class GrayImage {
 public:
  GrayImage(int width, int height, std::vector<std::uint8_t> pixels);
  GrayImage(int width, int height, std::uint8_t fill);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return pixels_.size(); }

  std::uint8_t at(int row, int col) const {
    return pixels_[static_cast<std::size_t>(row) * width_ + col];
  }
  std::span<const std::uint8_t> pixels() const { return pixels_; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> pixels_;
};

struct PathologyAnnotation {
  DiseaseClass disease;
  RasterMask mask;

  friend bool operator==(const PathologyAnnotation&,
                         const PathologyAnnotation&) = default;
};

std::size_t area(const RasterMask& mask);

// Pixel-wise AND / OR / AND-NOT. All throw DimensionMismatch on unequal
// shapes.
RasterMask intersect(const RasterMask& a, const RasterMask& b);
RasterMask unite(const RasterMask& a, const RasterMask& b);
RasterMask subtract(const RasterMask& a, const RasterMask& b);

// Size of a AND b without materializing the result.
std::size_t intersection_area(const RasterMask& a, const RasterMask& b);

std::optional<BoundingBox> bounding_box(const RasterMask& mask);

// 8-connected components ordered by their first pixel in raster order.
std::vector<RasterMask> connected_components(const RasterMask& mask);

// Rescales so the shortest edge equals `target` and center-crops to
// target x target. Label rasters use nearest-neighbour sampling, images use
// area averaging. Output sizes round half up; the crop offset is
// floor((size - target) / 2). Throws DegenerateInput when target <= 0.
RasterMask normalize_geometry(const RasterMask& mask, int target);
OrganMap normalize_geometry(const OrganMap& organ, int target);
GrayImage normalize_geometry(const GrayImage& image, int target);

// Integer upsampling by replication; used for scale-invariance checks.
RasterMask upsample(const RasterMask& mask, int factor);
OrganMap upsample(const OrganMap& organ, int factor);

}  // namespace aurad

#endif  // AURAD_MASK_H_

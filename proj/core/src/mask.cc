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

#include "aurad/mask.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "aurad/error.h"

namespace aurad {
namespace {

void check_dimensions(int width, int height) {
  if (width <= 0 || height <= 0) {
    throw DegenerateInput("raster dimensions must be positive, got " +
                          std::to_string(width) + "x" +
                          std::to_string(height));
  }
}

std::size_t pixel_count(int width, int height) {
  return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
}

void check_same_shape(const RasterMask& a, const RasterMask& b) {
  if (!a.same_shape(b)) {
    throw DimensionMismatch(a.width(), a.height(), b.width(), b.height());
  }
}

template <typename Op>
RasterMask combine(const RasterMask& a, const RasterMask& b, Op op) {
  check_same_shape(a, b);
  std::vector<std::uint8_t> out(a.size());
  auto lhs = a.bits();
  auto rhs = b.bits();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = op(lhs[i] != 0, rhs[i] != 0) ? 1 : 0;
  }
  return RasterMask(a.width(), a.height(), std::move(out));
}

// Round-half-up of size * target / shortest, in integers.
int scaled_extent(int size, int target, int shortest) {
  const long long num = 2LL * size * target + shortest;
  return static_cast<int>(num / (2LL * shortest));
}

struct Plan {
  int scaled_width;
  int scaled_height;
  int crop_col;
  int crop_row;
};

Plan plan_geometry(int width, int height, int target) {
  if (target <= 0) {
    throw DegenerateInput("normalization target must be positive");
  }
  check_dimensions(width, height);
  const int shortest = std::min(width, height);
  Plan p{};
  p.scaled_width = width == shortest ? target
                                     : scaled_extent(width, target, shortest);
  p.scaled_height = height == shortest
                        ? target
                        : scaled_extent(height, target, shortest);
  p.crop_col = (p.scaled_width - target) / 2;
  p.crop_row = (p.scaled_height - target) / 2;
  return p;
}

// Source index whose center is nearest to the center of output index `i`
// when `src` samples are stretched over `dst` samples; halves round up.
int nearest_source(int i, int src, int dst) {
  const long long s = ((2LL * i + 1) * src) / (2LL * dst);
  return static_cast<int>(std::min<long long>(s, src - 1));
}

std::vector<std::uint8_t> resample_nearest(std::span<const std::uint8_t> in,
                                           int width, int height,
                                           int target) {
  const Plan p = plan_geometry(width, height, target);
  std::vector<std::uint8_t> out(pixel_count(target, target));
  for (int r = 0; r < target; ++r) {
    const int sr = nearest_source(r + p.crop_row, height, p.scaled_height);
    for (int c = 0; c < target; ++c) {
      const int sc = nearest_source(c + p.crop_col, width, p.scaled_width);
      out[static_cast<std::size_t>(r) * target + c] =
          in[static_cast<std::size_t>(sr) * width + sc];
    }
  }
  return out;
}

// Box-filter weights for resampling `src` samples onto `dst` samples.
struct Tap {
  int index;
  double weight;
};

std::vector<std::vector<Tap>> area_taps(int src, int dst) {
  std::vector<std::vector<Tap>> taps(dst);
  const double scale = static_cast<double>(src) / dst;
  for (int i = 0; i < dst; ++i) {
    const double lo = i * scale;
    const double hi = (i + 1) * scale;
    const int first = static_cast<int>(std::floor(lo));
    const int last = std::min(src - 1, static_cast<int>(std::ceil(hi)) - 1);
    for (int k = first; k <= last; ++k) {
      const double w = std::min(hi, k + 1.0) - std::max(lo, static_cast<double>(k));
      if (w > 0) taps[i].push_back({k, w / scale});
    }
  }
  return taps;
}

}  // namespace

RasterMask::RasterMask(int width, int height) : width_(width), height_(height) {
  check_dimensions(width, height);
  bits_.assign(pixel_count(width, height), 0);
}

RasterMask::RasterMask(int width, int height, std::vector<std::uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
  check_dimensions(width, height);
  if (bits_.size() != pixel_count(width, height)) {
    throw DegenerateInput("mask has " + std::to_string(bits_.size()) +
                          " bits, expected " +
                          std::to_string(pixel_count(width, height)));
  }
  for (auto& b : bits_) b = b != 0 ? 1 : 0;
}

RasterMask RasterMask::full(int width, int height) {
  check_dimensions(width, height);
  return RasterMask(width, height,
                    std::vector<std::uint8_t>(pixel_count(width, height), 1));
}

OrganMap::OrganMap(int width, int height, std::vector<std::uint8_t> labels)
    : width_(width), height_(height), labels_(std::move(labels)) {
  check_dimensions(width, height);
  if (labels_.size() != pixel_count(width, height)) {
    throw DegenerateInput("organ map has " + std::to_string(labels_.size()) +
                          " labels, expected " +
                          std::to_string(pixel_count(width, height)));
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] > kMaxOrganLabel) throw IllegalLabelValue(labels_[i], i);
  }
}

RasterMask OrganMap::part(OrganLabel label) const {
  std::vector<std::uint8_t> bits(labels_.size());
  const auto want = static_cast<std::uint8_t>(label);
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    bits[i] = labels_[i] == want ? 1 : 0;
  }
  return RasterMask(width_, height_, std::move(bits));
}

RasterMask OrganMap::lungs() const {
  return unite(part(OrganLabel::kLeftLung), part(OrganLabel::kRightLung));
}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  check_dimensions(width, height);
  if (pixels_.size() != pixel_count(width, height)) {
    throw DegenerateInput("image has " + std::to_string(pixels_.size()) +
                          " pixels, expected " +
                          std::to_string(pixel_count(width, height)));
  }
}

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
  check_dimensions(width, height);
  pixels_.assign(pixel_count(width, height), fill);
}

std::size_t area(const RasterMask& mask) {
  std::size_t n = 0;
  for (auto b : mask.bits()) n += b;
  return n;
}

RasterMask intersect(const RasterMask& a, const RasterMask& b) {
  return combine(a, b, [](bool x, bool y) { return x && y; });
}

RasterMask unite(const RasterMask& a, const RasterMask& b) {
  return combine(a, b, [](bool x, bool y) { return x || y; });
}

RasterMask subtract(const RasterMask& a, const RasterMask& b) {
  return combine(a, b, [](bool x, bool y) { return x && !y; });
}

std::size_t intersection_area(const RasterMask& a, const RasterMask& b) {
  check_same_shape(a, b);
  auto lhs = a.bits();
  auto rhs = b.bits();
  std::size_t n = 0;
  for (std::size_t i = 0; i < lhs.size(); ++i) n += lhs[i] & rhs[i];
  return n;
}

std::optional<BoundingBox> bounding_box(const RasterMask& mask) {
  std::optional<BoundingBox> box;
  for (int r = 0; r < mask.height(); ++r) {
    for (int c = 0; c < mask.width(); ++c) {
      if (!mask.at(r, c)) continue;
      if (!box) {
        box = BoundingBox{r, r, c, c};
      } else {
        box->max_row = r;
        box->min_col = std::min(box->min_col, c);
        box->max_col = std::max(box->max_col, c);
      }
    }
  }
  return box;
}

std::vector<RasterMask> connected_components(const RasterMask& mask) {
  const int w = mask.width();
  const int h = mask.height();
  std::vector<int> label(mask.size(), -1);
  std::vector<std::vector<std::uint8_t>> parts;
  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < mask.size(); ++start) {
    if (!mask[start] || label[start] >= 0) continue;
    const int id = static_cast<int>(parts.size());
    parts.emplace_back(mask.size(), 0);
    auto& bits = parts.back();
    label[start] = id;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t idx = stack.back();
      stack.pop_back();
      bits[idx] = 1;
      const int r = static_cast<int>(idx / w);
      const int c = static_cast<int>(idx % w);
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          const int nr = r + dr;
          const int nc = c + dc;
          if (nr < 0 || nr >= h || nc < 0 || nc >= w) continue;
          const std::size_t n = static_cast<std::size_t>(nr) * w + nc;
          if (mask[n] && label[n] < 0) {
            label[n] = id;
            stack.push_back(n);
          }
        }
      }
    }
  }
  std::vector<RasterMask> out;
  out.reserve(parts.size());
  for (auto& bits : parts) out.emplace_back(w, h, std::move(bits));
  return out;
}

RasterMask normalize_geometry(const RasterMask& mask, int target) {
  return RasterMask(target, target,
                    resample_nearest(mask.bits(), mask.width(), mask.height(),
                                     target));
}

OrganMap normalize_geometry(const OrganMap& organ, int target) {
  return OrganMap(target, target,
                  resample_nearest(organ.labels(), organ.width(),
                                   organ.height(), target));
}

GrayImage normalize_geometry(const GrayImage& image, int target) {
  const Plan p = plan_geometry(image.width(), image.height(), target);
  const int w = image.width();
  const int h = image.height();
  const auto col_taps = area_taps(w, p.scaled_width);
  const auto row_taps = area_taps(h, p.scaled_height);
  auto src = image.pixels();

  // Horizontal pass restricted to the cropped columns.
  std::vector<double> tmp(static_cast<std::size_t>(h) * target);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < target; ++c) {
      double acc = 0.0;
      for (const Tap& t : col_taps[c + p.crop_col]) {
        acc += t.weight * src[static_cast<std::size_t>(r) * w + t.index];
      }
      tmp[static_cast<std::size_t>(r) * target + c] = acc;
    }
  }
  std::vector<std::uint8_t> out(pixel_count(target, target));
  for (int r = 0; r < target; ++r) {
    for (int c = 0; c < target; ++c) {
      double acc = 0.0;
      for (const Tap& t : row_taps[r + p.crop_row]) {
        acc += t.weight * tmp[static_cast<std::size_t>(t.index) * target + c];
      }
      out[static_cast<std::size_t>(r) * target + c] = static_cast<std::uint8_t>(
          std::clamp(std::floor(acc + 0.5), 0.0, 255.0));
    }
  }
  return GrayImage(target, target, std::move(out));
}

RasterMask upsample(const RasterMask& mask, int factor) {
  if (factor <= 0) throw DegenerateInput("upsample factor must be positive");
  return RasterMask::from_predicate(
      mask.width() * factor, mask.height() * factor,
      [&](int r, int c) { return mask.at(r / factor, c / factor); });
}

OrganMap upsample(const OrganMap& organ, int factor) {
  if (factor <= 0) throw DegenerateInput("upsample factor must be positive");
  const int w = organ.width() * factor;
  const int h = organ.height() * factor;
  std::vector<std::uint8_t> labels(pixel_count(w, h));
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      labels[static_cast<std::size_t>(r) * w + c] =
          static_cast<std::uint8_t>(organ.at(r / factor, c / factor));
    }
  }
  return OrganMap(w, h, std::move(labels));
}

}  // namespace aurad

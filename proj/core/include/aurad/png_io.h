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

// On-disk raster formats.
//
//   organ map        8-bit indexed PNG, palette indices 0..4
//   pathology mask   8-bit grayscale PNG, value > 127 is foreground,
//                    named <sample_id>__<ClassToken>.png
//   image            8-bit grayscale PNG
//
// Writers emit exactly what the readers accept, so save/load is bit-exact.

#ifndef AURAD_PNG_IO_H_
#define AURAD_PNG_IO_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "aurad/mask.h"

namespace aurad {

OrganMap load_organ_map(const std::filesystem::path& path);
void save_organ_map(const std::filesystem::path& path, const OrganMap& organ);

// When `expected` is given, throws DimensionMismatch unless the mask matches
// its dimensions.
PathologyAnnotation load_pathology_mask(
    const std::filesystem::path& path, DiseaseClass disease,
    const OrganMap* expected = nullptr);
void save_pathology_mask(const std::filesystem::path& path,
                         const RasterMask& mask);

GrayImage load_image(const std::filesystem::path& path);
void save_image(const std::filesystem::path& path, const GrayImage& image);

// "<sample_id>__<ClassToken>.png"
std::string pathology_file_name(const std::string& sample_id,
                                DiseaseClass disease);
// Class encoded in a pathology file name, or nullopt if the name does not
// follow the convention.
std::optional<DiseaseClass> class_from_file_name(const std::string& file_name);

// Every "*__*.png" in `dir`, sorted by file name. Throws ValidationError for
// files whose class token is not in the vocabulary.
std::vector<PathologyAnnotation> load_pathology_dir(
    const std::filesystem::path& dir, const OrganMap* expected = nullptr);

}  // namespace aurad

#endif  // AURAD_PNG_IO_H_

// Copyright 2026 The scanbim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "scanbim/model.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace scanbim {

enum class CloudFormat { Ply, XyzLabel };

/// "ply" or "xyz" / "xyz-label". Throws UnsupportedFormat.
CloudFormat parse_cloud_format(std::string_view name);
/// From the file extension: .ply is PLY, anything else xyz-label.
CloudFormat cloud_format_from_path(const std::filesystem::path& path);

/// Integer label -> class. The default table is 0 wall, 1 door, 2 column,
/// 3 floor, 4 ceiling, 5 clutter. Integers missing from the table become
/// clutter and are counted.
struct LabelMap {
  std::map<std::int64_t, Label> table;

  static LabelMap standard();
  /// Standard table with overrides from "7=wall,8=door" style text.
  /// Throws InvalidConfig.
  static LabelMap with_overrides(std::string_view spec);
};

struct CloudReadResult {
  LabeledPointCloud cloud;
  std::size_t unknown_labels = 0;
};

/// Parses ASCII or binary little-endian PLY. The vertex element needs x, y, z
/// and a `label` (or `class`) property; red/green/blue are optional. Other
/// properties and elements are skipped. Throws ParseError (with line or byte
/// offset) or UnsupportedFormat.
CloudReadResult parse_ply(std::string_view data, const LabelMap& labels = LabelMap::standard());

/// Parses "x y z label" lines; '#' starts a comment. Throws ParseError with
/// the line number.
CloudReadResult parse_xyz_label(std::string_view data, const LabelMap& labels = LabelMap::standard());

CloudReadResult read_point_cloud(const std::filesystem::path& path, CloudFormat format,
                                 const LabelMap& labels = LabelMap::standard());

struct PlyWriteOptions {
  bool binary = true;
  /// float64 coordinates; float32 otherwise.
  bool double_precision = true;
};

std::string serialize_ply(const LabeledPointCloud& cloud, const PlyWriteOptions& options = {});
std::string serialize_xyz_label(const LabeledPointCloud& cloud);

void write_point_cloud(const std::filesystem::path& path, const LabeledPointCloud& cloud, CloudFormat format,
                       const PlyWriteOptions& options = {});

}  // namespace scanbim

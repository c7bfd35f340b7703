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
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace scanbim {

struct IfcExportOptions {
  std::string project_name = "scanbim project";
  /// FILE_NAME time stamp; fixed so exports are reproducible.
  std::string timestamp = "1970-01-01T00:00:00";
  /// GlobalId RNG seed; the model seed when unset.
  std::optional<std::uint64_t> seed;
};

/// 22-character IFC GlobalId (IFC base-64 alphabet) from 128 random bits.
std::string ifc_global_id(std::mt19937_64& rng);

/// Formats a real the way SPF requires: always a '.', exponent as 'E'.
std::string spf_real(double v);

/// IFC4 STEP physical file text for the model.
std::string model_to_ifc(const BimModel& model, const IfcExportOptions& options = {});

/// Throws IoError.
void export_ifc(const BimModel& model, const std::filesystem::path& path, const IfcExportOptions& options = {});

/// One "#id=TYPE(args);" instance of a STEP physical file.
struct SpfEntity {
  int id = 0;
  std::string type;
  std::vector<std::string> args;  // top-level arguments, verbatim
};

struct SpfFile {
  std::vector<std::string> header;  // header section statements
  std::map<int, SpfEntity> entities;

  std::size_t count(const std::string& type) const;
  std::vector<const SpfEntity*> of_type(const std::string& type) const;
  const SpfEntity* find(int id) const;
  /// Referenced ids that have no instance.
  std::vector<int> dangling_references() const;
};

/// Line-level parser for files with one instance per line, as model_to_ifc
/// writes them. Throws ParseError.
SpfFile parse_spf(const std::string& text);

/// All "#N" references inside an argument.
std::vector<int> spf_references(const std::string& arg);

/// Project -> site -> building -> storeys as recovered from IFCRELAGGREGATES.
struct IfcSpatialTree {
  int project = 0;
  int site = 0;
  int building = 0;
  std::vector<int> storeys;  // in aggregation order
  /// Elements contained in each storey.
  std::map<int, std::vector<int>> contained;
};

/// Throws ParseError when the hierarchy is incomplete or not a chain.
IfcSpatialTree recover_spatial_tree(const SpfFile& file);

}  // namespace scanbim

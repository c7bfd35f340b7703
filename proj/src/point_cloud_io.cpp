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

#include "scanbim/point_cloud_io.hpp"

#include "scanbim/error.hpp"
#include "scanbim/fileio.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <optional>
#include <sstream>
#include <vector>

static_assert(std::endian::native == std::endian::little, "binary PLY support assumes a little-endian host");

namespace scanbim {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

bool parse_double(std::string_view tok, double& out) {
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size() && std::isfinite(out);
}

bool parse_int(std::string_view tok, std::int64_t& out) {
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

Label map_label(const LabelMap& labels, std::int64_t value, std::size_t& unknown) {
  const auto it = labels.table.find(value);
  if (it != labels.table.end()) return it->second;
  ++unknown;
  return Label::Clutter;
}

std::optional<Label> label_from_name(std::string_view name) {
  for (int i = 0; i < kLabelCount; ++i) {
    if (name == to_string(static_cast<Label>(i))) return static_cast<Label>(i);
  }
  return std::nullopt;
}

enum class ScalarType { I8, U8, I16, U16, I32, U32, F32, F64 };

std::optional<ScalarType> scalar_type(std::string_view name) {
  if (name == "char" || name == "int8") return ScalarType::I8;
  if (name == "uchar" || name == "uint8") return ScalarType::U8;
  if (name == "short" || name == "int16") return ScalarType::I16;
  if (name == "ushort" || name == "uint16") return ScalarType::U16;
  if (name == "int" || name == "int32") return ScalarType::I32;
  if (name == "uint" || name == "uint32") return ScalarType::U32;
  if (name == "float" || name == "float32") return ScalarType::F32;
  if (name == "double" || name == "float64") return ScalarType::F64;
  return std::nullopt;
}

std::size_t scalar_size(ScalarType t) {
  switch (t) {
    case ScalarType::I8:
    case ScalarType::U8: return 1;
    case ScalarType::I16:
    case ScalarType::U16: return 2;
    case ScalarType::I32:
    case ScalarType::U32:
    case ScalarType::F32: return 4;
    case ScalarType::F64: return 8;
  }
  return 0;
}

template <typename T>
T load(const char* p) {
  T v;
  std::memcpy(&v, p, sizeof v);
  return v;
}

double load_scalar(ScalarType t, const char* p) {
  switch (t) {
    case ScalarType::I8: return load<std::int8_t>(p);
    case ScalarType::U8: return load<std::uint8_t>(p);
    case ScalarType::I16: return load<std::int16_t>(p);
    case ScalarType::U16: return load<std::uint16_t>(p);
    case ScalarType::I32: return load<std::int32_t>(p);
    case ScalarType::U32: return load<std::uint32_t>(p);
    case ScalarType::F32: return load<float>(p);
    case ScalarType::F64: return load<double>(p);
  }
  return 0.0;
}

struct PlyProperty {
  std::string name;
  ScalarType type = ScalarType::F32;
  bool is_list = false;
  ScalarType count_type = ScalarType::U8;
};

struct PlyElement {
  std::string name;
  std::size_t count = 0;
  std::vector<PlyProperty> properties;
};

struct VertexLayout {
  int x = -1, y = -1, z = -1, label = -1, red = -1, green = -1, blue = -1;
};

VertexLayout vertex_layout(const PlyElement& e) {
  VertexLayout l;
  for (int i = 0; i < static_cast<int>(e.properties.size()); ++i) {
    const auto& p = e.properties[i];
    if (p.is_list) continue;
    if (p.name == "x") l.x = i;
    else if (p.name == "y") l.y = i;
    else if (p.name == "z") l.z = i;
    else if (p.name == "label" || (p.name == "class" && l.label < 0)) l.label = i;
    else if (p.name == "red") l.red = i;
    else if (p.name == "green") l.green = i;
    else if (p.name == "blue") l.blue = i;
  }
  return l;
}

[[noreturn]] void ply_error(const std::string& what) { throw Error(ErrorKind::ParseError, "PLY: " + what); }

}  // namespace

CloudFormat parse_cloud_format(std::string_view name) {
  const std::string n = lower(name);
  if (n == "ply") return CloudFormat::Ply;
  if (n == "xyz" || n == "xyz-label" || n == "xyzl") return CloudFormat::XyzLabel;
  throw Error(ErrorKind::UnsupportedFormat, "unknown point cloud format: " + std::string(name));
}

CloudFormat cloud_format_from_path(const std::filesystem::path& path) {
  return lower(path.extension().string()) == ".ply" ? CloudFormat::Ply : CloudFormat::XyzLabel;
}

LabelMap LabelMap::standard() {
  LabelMap m;
  for (int i = 0; i < kLabelCount; ++i) m.table[i] = static_cast<Label>(i);
  return m;
}

LabelMap LabelMap::with_overrides(std::string_view spec) {
  LabelMap m = standard();
  std::size_t pos = 0;
  while (pos < spec.size()) {
    std::size_t end = spec.find(',', pos);
    if (end == std::string_view::npos) end = spec.size();
    const std::string_view item = spec.substr(pos, end - pos);
    pos = end + 1;
    if (split_ws(item).empty()) continue;
    const std::size_t eq = item.find('=');
    std::int64_t key = 0;
    const auto key_tok = split_ws(item.substr(0, eq));
    const auto val_tok = eq == std::string_view::npos ? std::vector<std::string_view>{} : split_ws(item.substr(eq + 1));
    if (key_tok.size() != 1 || val_tok.size() != 1 || !parse_int(key_tok[0], key)) {
      throw Error(ErrorKind::InvalidConfig, "bad label remap entry: " + std::string(item));
    }
    const auto label = label_from_name(lower(val_tok[0]));
    if (!label) throw Error(ErrorKind::InvalidConfig, "unknown class name: " + std::string(val_tok[0]));
    m.table[key] = *label;
  }
  return m;
}

CloudReadResult parse_xyz_label(std::string_view data, const LabelMap& labels) {
  CloudReadResult res;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < data.size()) {
    std::size_t end = data.find('\n', pos);
    if (end == std::string_view::npos) end = data.size();
    std::string_view line = data.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tok = split_ws(line);
    if (tok.empty()) continue;
    if (tok.size() != 4) {
      throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected 4 fields, got " +
                                             std::to_string(tok.size()));
    }
    Point3 p;
    std::int64_t label = 0;
    if (!parse_double(tok[0], p.x()) || !parse_double(tok[1], p.y()) || !parse_double(tok[2], p.z()) ||
        !parse_int(tok[3], label)) {
      throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": malformed value");
    }
    res.cloud.points.push_back(p);
    res.cloud.labels.push_back(map_label(labels, label, res.unknown_labels));
  }
  return res;
}

CloudReadResult parse_ply(std::string_view data, const LabelMap& labels) {
  // Header.
  std::size_t pos = 0;
  std::size_t line_no = 0;
  auto next_line = [&]() -> std::string_view {
    if (pos >= data.size()) ply_error("unexpected end of header");
    std::size_t end = data.find('\n', pos);
    if (end == std::string_view::npos) end = data.size();
    std::string_view line = data.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
  };
  auto at_line = [&](const std::string& what) { ply_error("line " + std::to_string(line_no) + ": " + what); };

  if (next_line() != "ply") ply_error("missing magic");
  bool binary = false;
  bool have_format = false;
  std::vector<PlyElement> elements;
  for (;;) {
    const std::string_view line = next_line();
    const auto tok = split_ws(line);
    if (tok.empty()) continue;
    if (tok[0] == "end_header") break;
    if (tok[0] == "comment" || tok[0] == "obj_info") continue;
    if (tok[0] == "format") {
      if (tok.size() != 3) at_line("bad format line");
      if (tok[1] == "ascii") binary = false;
      else if (tok[1] == "binary_little_endian") binary = true;
      else if (tok[1] == "binary_big_endian")
        throw Error(ErrorKind::UnsupportedFormat, "PLY: big-endian encoding is not supported");
      else at_line("unknown format " + std::string(tok[1]));
      have_format = true;
    } else if (tok[0] == "element") {
      std::int64_t count = 0;
      if (tok.size() != 3 || !parse_int(tok[2], count) || count < 0) at_line("bad element line");
      elements.push_back({std::string(tok[1]), static_cast<std::size_t>(count), {}});
    } else if (tok[0] == "property") {
      if (elements.empty()) at_line("property before element");
      PlyProperty prop;
      if (tok.size() == 5 && tok[1] == "list") {
        const auto ct = scalar_type(tok[2]);
        const auto it = scalar_type(tok[3]);
        if (!ct || !it) at_line("unknown list type");
        prop = {std::string(tok[4]), *it, true, *ct};
      } else if (tok.size() == 3) {
        const auto t = scalar_type(tok[1]);
        if (!t) at_line("unknown property type " + std::string(tok[1]));
        prop = {std::string(tok[2]), *t, false, ScalarType::U8};
      } else {
        at_line("bad property line");
      }
      elements.back().properties.push_back(prop);
    } else {
      at_line("unexpected header keyword " + std::string(tok[0]));
    }
  }
  if (!have_format) ply_error("missing format line");

  const PlyElement* vertex = nullptr;
  for (const auto& e : elements) {
    if (e.name == "vertex") vertex = &e;
  }
  if (!vertex) ply_error("no vertex element");
  const VertexLayout layout = vertex_layout(*vertex);
  if (layout.x < 0 || layout.y < 0 || layout.z < 0) ply_error("vertex element lacks x/y/z");
  if (layout.label < 0) ply_error("vertex element lacks a label property");
  const bool colors = layout.red >= 0 && layout.green >= 0 && layout.blue >= 0;

  CloudReadResult res;
  auto& cloud = res.cloud;
  cloud.points.reserve(vertex->count);
  cloud.labels.reserve(vertex->count);
  if (colors) cloud.colors.reserve(vertex->count);
  std::vector<double> values;

  auto store_vertex = [&](const std::vector<double>& v) {
    cloud.points.emplace_back(v[layout.x], v[layout.y], v[layout.z]);
    if (!cloud.points.back().allFinite()) ply_error("non-finite coordinate in vertex " + std::to_string(cloud.size() - 1));
    const double lv = v[layout.label];
    const std::int64_t li = static_cast<std::int64_t>(lv);
    cloud.labels.push_back(static_cast<double>(li) == lv ? map_label(labels, li, res.unknown_labels)
                                                         : map_label(labels, -1, res.unknown_labels));
    if (colors) {
      auto byte = [](double c) { return static_cast<std::uint8_t>(std::clamp(c, 0.0, 255.0)); };
      cloud.colors.push_back({byte(v[layout.red]), byte(v[layout.green]), byte(v[layout.blue])});
    }
  };

  if (binary) {
    for (const auto& e : elements) {
      const bool is_vertex = &e == vertex;
      bool fixed = true;
      std::size_t stride = 0;
      for (const auto& p : e.properties) {
        fixed = fixed && !p.is_list;
        stride += scalar_size(p.type);
      }
      if (fixed) {
        if (stride * e.count > data.size() - std::min(pos, data.size())) {
          ply_error("byte " + std::to_string(data.size()) + ": truncated " + e.name + " data");
        }
        if (is_vertex) {
          values.assign(e.properties.size(), 0.0);
          std::vector<std::size_t> offsets;
          std::size_t off = 0;
          for (const auto& p : e.properties) {
            offsets.push_back(off);
            off += scalar_size(p.type);
          }
          for (std::size_t r = 0; r < e.count; ++r) {
            const char* row = data.data() + pos + r * stride;
            for (std::size_t k = 0; k < e.properties.size(); ++k) values[k] = load_scalar(e.properties[k].type, row + offsets[k]);
            store_vertex(values);
          }
        }
        pos += stride * e.count;
        continue;
      }
      for (std::size_t r = 0; r < e.count; ++r) {
        values.assign(e.properties.size(), 0.0);
        for (std::size_t k = 0; k < e.properties.size(); ++k) {
          const auto& p = e.properties[k];
          if (!p.is_list) {
            if (pos + scalar_size(p.type) > data.size()) ply_error("byte " + std::to_string(pos) + ": truncated data");
            values[k] = load_scalar(p.type, data.data() + pos);
            pos += scalar_size(p.type);
            continue;
          }
          if (pos + scalar_size(p.count_type) > data.size()) ply_error("byte " + std::to_string(pos) + ": truncated list");
          const double n = load_scalar(p.count_type, data.data() + pos);
          pos += scalar_size(p.count_type);
          if (n < 0) ply_error("byte " + std::to_string(pos) + ": negative list length");
          const std::size_t bytes = static_cast<std::size_t>(n) * scalar_size(p.type);
          if (pos + bytes > data.size()) ply_error("byte " + std::to_string(pos) + ": truncated list");
          pos += bytes;
        }
        if (is_vertex) store_vertex(values);
      }
    }
    return res;
  }

  for (const auto& e : elements) {
    const bool is_vertex = &e == vertex;
    for (std::size_t r = 0; r < e.count; ++r) {
      std::string_view line;
      std::vector<std::string_view> tok;
      do {
        if (pos >= data.size()) ply_error("line " + std::to_string(line_no + 1) + ": truncated " + e.name + " data");
        line = next_line();
        tok = split_ws(line);
      } while (tok.empty());
      values.assign(e.properties.size(), 0.0);
      std::size_t t = 0;
      for (std::size_t k = 0; k < e.properties.size(); ++k) {
        const auto& p = e.properties[k];
        double v = 0.0;
        if (t >= tok.size() || !parse_double(tok[t], v)) at_line("malformed " + e.name + " row");
        ++t;
        if (p.is_list) {
          if (v < 0) at_line("negative list length");
          t += static_cast<std::size_t>(v);
          if (t > tok.size()) at_line("short list");
        } else {
          values[k] = v;
        }
      }
      if (t != tok.size()) at_line("extra values in " + e.name + " row");
      if (is_vertex) store_vertex(values);
    }
  }
  return res;
}

CloudReadResult read_point_cloud(const std::filesystem::path& path, CloudFormat format, const LabelMap& labels) {
  const std::string data = read_file(path);
  return format == CloudFormat::Ply ? parse_ply(data, labels) : parse_xyz_label(data, labels);
}

std::string serialize_ply(const LabeledPointCloud& cloud, const PlyWriteOptions& options) {
  const char* coord = options.double_precision ? "double" : "float";
  std::ostringstream out;
  out << "ply\nformat " << (options.binary ? "binary_little_endian" : "ascii") << " 1.0\n";
  out << "element vertex " << cloud.size() << "\n";
  out << "property " << coord << " x\nproperty " << coord << " y\nproperty " << coord << " z\n";
  out << "property uchar label\n";
  if (cloud.has_colors()) out << "property uchar red\nproperty uchar green\nproperty uchar blue\n";
  out << "end_header\n";
  std::string s = std::move(out).str();
  if (options.binary) {
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      for (int d = 0; d < 3; ++d) {
        if (options.double_precision) {
          const double v = cloud.points[i][d];
          s.append(reinterpret_cast<const char*>(&v), sizeof v);
        } else {
          const float v = static_cast<float>(cloud.points[i][d]);
          s.append(reinterpret_cast<const char*>(&v), sizeof v);
        }
      }
      s.push_back(static_cast<char>(cloud.labels[i]));
      if (cloud.has_colors()) s.append(reinterpret_cast<const char*>(cloud.colors[i].data()), 3);
    }
    return s;
  }
  char buf[128];
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    for (int d = 0; d < 3; ++d) {
      const auto r = options.double_precision
                         ? std::to_chars(buf, buf + sizeof buf, cloud.points[i][d])
                         : std::to_chars(buf, buf + sizeof buf, static_cast<float>(cloud.points[i][d]));
      s.append(buf, r.ptr);
      s.push_back(' ');
    }
    s += std::to_string(static_cast<int>(cloud.labels[i]));
    if (cloud.has_colors()) {
      for (auto c : cloud.colors[i]) s += " " + std::to_string(static_cast<int>(c));
    }
    s.push_back('\n');
  }
  return s;
}

std::string serialize_xyz_label(const LabeledPointCloud& cloud) {
  std::string s;
  char buf[64];
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    for (int d = 0; d < 3; ++d) {
      const auto r = std::to_chars(buf, buf + sizeof buf, cloud.points[i][d]);
      s.append(buf, r.ptr);
      s.push_back(' ');
    }
    s += std::to_string(static_cast<int>(cloud.labels[i]));
    s.push_back('\n');
  }
  return s;
}

void write_point_cloud(const std::filesystem::path& path, const LabeledPointCloud& cloud, CloudFormat format,
                       const PlyWriteOptions& options) {
  write_file_atomic(path, format == CloudFormat::Ply ? serialize_ply(cloud, options) : serialize_xyz_label(cloud));
}

}  // namespace scanbim

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

#include "scanbim/ifc_export.hpp"

#include "scanbim/error.hpp"
#include "scanbim/fileio.hpp"

#include <charconv>
#include <set>
#include <sstream>

namespace scanbim {

namespace {

constexpr char kIfcBase64[] = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz_$";

std::string quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "''";
    else if (c == '\\') out += "\\\\";
    else out += c;
  }
  return out + "'";
}

std::string ref(int id) { return "#" + std::to_string(id); }

std::string ref_list(const std::vector<int>& ids) {
  std::string out = "(";
  for (std::size_t i = 0; i < ids.size(); ++i) out += (i ? "," : "") + ref(ids[i]);
  return out + ")";
}

class SpfWriter {
 public:
  int add(const std::string& type, const std::string& args) {
    const int id = next_++;
    body_ += "#" + std::to_string(id) + "=" + type + "(" + args + ");\n";
    return id;
  }
  const std::string& body() const { return body_; }

 private:
  int next_ = 1;
  std::string body_;
};

std::string point3(double x, double y, double z) {
  return "(" + spf_real(x) + "," + spf_real(y) + "," + spf_real(z) + ")";
}

}  // namespace

std::string ifc_global_id(std::mt19937_64& rng) {
  const std::uint64_t hi = rng();
  const std::uint64_t lo = rng();
  std::string out(22, '0');
  // 2 bits in the first character, then 21 six-bit groups.
  out[0] = kIfcBase64[hi >> 62];
  for (int k = 0; k < 21; ++k) {
    const int bit = 120 - 6 * k;  // lowest bit of group k, bit 0 being the LSB of lo
    std::uint64_t v = 0;
    for (int b = 0; b < 6; ++b) {
      const int pos = bit + b;
      const std::uint64_t word = pos >= 64 ? hi : lo;
      v |= ((word >> (pos % 64)) & 1u) << b;
    }
    out[1 + k] = kIfcBase64[v];
  }
  return out;
}

std::string spf_real(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, r.ptr);
  const std::size_t e = s.find('e');
  std::string mant = e == std::string::npos ? s : s.substr(0, e);
  std::string exp = e == std::string::npos ? "" : "E" + s.substr(e + 1);
  if (mant.find('.') == std::string::npos) mant += ".";
  return mant + exp;
}

std::string model_to_ifc(const BimModel& model, const IfcExportOptions& options) {
  std::mt19937_64 rng(options.seed.value_or(model.seed));
  auto gid = [&] { return quote(ifc_global_id(rng)); };
  SpfWriter w;

  const int person = w.add("IFCPERSON", "$,$,'scanbim',$,$,$,$,$");
  const int org = w.add("IFCORGANIZATION", "$,'scanbim',$,$,$");
  const int person_org = w.add("IFCPERSONANDORGANIZATION", ref(person) + "," + ref(org) + ",$");
  const int app = w.add("IFCAPPLICATION", ref(org) + ",'1.0','scanbim','scanbim'");
  const int owner = w.add("IFCOWNERHISTORY", ref(person_org) + "," + ref(app) + ",$,.ADDED.,$,$,$,0");
  const std::string oh = ref(owner);
  const int metre = w.add("IFCSIUNIT", "*,.LENGTHUNIT.,$,.METRE.");
  const int radian = w.add("IFCSIUNIT", "*,.PLANEANGLEUNIT.,$,.RADIAN.");
  const int units = w.add("IFCUNITASSIGNMENT", ref_list({metre, radian}));
  const int origin = w.add("IFCCARTESIANPOINT", point3(0, 0, 0));
  const int z_dir = w.add("IFCDIRECTION", point3(0, 0, 1));
  const int x_dir = w.add("IFCDIRECTION", point3(1, 0, 0));
  const int world = w.add("IFCAXIS2PLACEMENT3D", ref(origin) + "," + ref(z_dir) + "," + ref(x_dir));
  const int context = w.add("IFCGEOMETRICREPRESENTATIONCONTEXT", "$,'Model',3," + spf_real(1e-5) + "," + ref(world) + ",$");
  const int origin2d = w.add("IFCCARTESIANPOINT", "(" + spf_real(0) + "," + spf_real(0) + ")");
  const int profile_pos = w.add("IFCAXIS2PLACEMENT2D", ref(origin2d) + ",$");

  const int project = w.add("IFCPROJECT", gid() + "," + oh + "," + quote(options.project_name) + ",$,$,$,$,(" +
                                              ref(context) + ")," + ref(units));
  const int site_place = w.add("IFCLOCALPLACEMENT", "$," + ref(world));
  const int site = w.add("IFCSITE", gid() + "," + oh + ",'Site',$,$," + ref(site_place) + ",$,$,.ELEMENT.,$,$,$,$,$");
  const int building_place = w.add("IFCLOCALPLACEMENT", ref(site_place) + "," + ref(world));
  const int building =
      w.add("IFCBUILDING", gid() + "," + oh + ",'Building',$,$," + ref(building_place) + ",$,$,.ELEMENT.,$,$,$");

  std::vector<int> storey_ids, storey_places;
  for (const auto& s : model.storeys) {
    const int pt = w.add("IFCCARTESIANPOINT", point3(0, 0, s.floor_z));
    const int axis = w.add("IFCAXIS2PLACEMENT3D", ref(pt) + "," + ref(z_dir) + "," + ref(x_dir));
    const int place = w.add("IFCLOCALPLACEMENT", ref(building_place) + "," + ref(axis));
    storey_places.push_back(place);
    storey_ids.push_back(w.add("IFCBUILDINGSTOREY", gid() + "," + oh + "," + quote("Storey " + std::to_string(s.index)) +
                                                        ",$,$," + ref(place) + ",$,$,.ELEMENT.," + spf_real(s.floor_z)));
  }
  w.add("IFCRELAGGREGATES", gid() + "," + oh + ",$,$," + ref(project) + "," + ref_list({site}));
  w.add("IFCRELAGGREGATES", gid() + "," + oh + ",$,$," + ref(site) + "," + ref_list({building}));
  if (!storey_ids.empty()) w.add("IFCRELAGGREGATES", gid() + "," + oh + ",$,$," + ref(building) + "," + ref_list(storey_ids));

  std::vector<std::vector<int>> contained(model.storeys.size());

  // Placement at (x, y, z) relative to the storey with the given yaw, and a
  // body extruded upward from it.
  auto placement = [&](int storey, double x, double y, double z, double yaw) {
    const int pt = w.add("IFCCARTESIANPOINT", point3(x, y, z - model.storeys[storey].floor_z));
    const int dir = w.add("IFCDIRECTION", point3(std::cos(yaw), std::sin(yaw), 0.0));
    const int axis = w.add("IFCAXIS2PLACEMENT3D", ref(pt) + "," + ref(z_dir) + "," + ref(dir));
    return w.add("IFCLOCALPLACEMENT", ref(storey_places[storey]) + "," + ref(axis));
  };
  auto body = [&](int profile, double height) {
    const int solid = w.add("IFCEXTRUDEDAREASOLID", ref(profile) + "," + ref(world) + "," + ref(z_dir) + "," + spf_real(height));
    const int rep = w.add("IFCSHAPEREPRESENTATION", ref(context) + ",'Body','SweptSolid'," + ref_list({solid}));
    return w.add("IFCPRODUCTDEFINITIONSHAPE", "$,$," + ref_list({rep}));
  };
  auto box_shape = [&](const Hobb& b) {
    return body(w.add("IFCRECTANGLEPROFILEDEF", ".AREA.,$," + ref(profile_pos) + "," + spf_real(b.length) + "," + spf_real(b.width)),
                b.height);
  };

  for (const auto& wall : model.walls) {
    const Hobb& b = wall.box;
    const int place = placement(wall.storey, b.center.x(), b.center.y(), b.z_min(), b.yaw);
    const int shape = box_shape(b);
    contained[wall.storey].push_back(w.add("IFCWALL", gid() + "," + oh + "," + quote("Wall " + std::to_string(wall.id)) +
                                                          ",$,$," + ref(place) + "," + ref(shape) + "," +
                                                          quote(std::to_string(wall.id)) + ",.NOTDEFINED."));
  }
  for (const auto& door : model.doors) {
    const int storey = model.storey_of_door(door);
    const Hobb& b = door.box;
    const int place = placement(storey, b.center.x(), b.center.y(), b.z_min(), b.yaw);
    const int shape = box_shape(b);
    contained[storey].push_back(w.add("IFCDOOR", gid() + "," + oh + "," + quote("Door " + std::to_string(door.id)) +
                                                     ",$,$," + ref(place) + "," + ref(shape) + "," +
                                                     quote(std::to_string(door.id)) + "," + spf_real(b.height) + "," +
                                                     spf_real(b.length) + ",.DOOR.,.NOTDEFINED.,$"));
  }
  for (const auto& col : model.columns) {
    int place = 0, shape = 0;
    if (const auto* c = std::get_if<Cylinder>(&col.geometry)) {
      place = placement(col.storey, c->base_center.x(), c->base_center.y(), c->base_center.z(), 0.0);
      shape = body(w.add("IFCCIRCLEPROFILEDEF", ".AREA.,$," + ref(profile_pos) + "," + spf_real(c->radius)), c->height);
    } else {
      const Hobb& b = std::get<Hobb>(col.geometry);
      place = placement(col.storey, b.center.x(), b.center.y(), b.z_min(), b.yaw);
      shape = box_shape(b);
    }
    contained[col.storey].push_back(w.add("IFCCOLUMN", gid() + "," + oh + "," + quote("Column " + std::to_string(col.id)) +
                                                           ",$,$," + ref(place) + "," + ref(shape) + "," +
                                                           quote(std::to_string(col.id)) + ",.COLUMN."));
  }
  for (std::size_t s = 0; s < contained.size(); ++s) {
    if (contained[s].empty()) continue;
    w.add("IFCRELCONTAINEDINSPATIALSTRUCTURE",
          gid() + "," + oh + ",$,$," + ref_list(contained[s]) + "," + ref(storey_ids[s]));
  }

  std::string out = "ISO-10303-21;\nHEADER;\n";
  out += "FILE_DESCRIPTION(('ViewDefinition [ReferenceView]'),'2;1');\n";
  out += "FILE_NAME(" + quote("model.ifc") + "," + quote(options.timestamp) + ",(''),(''),'scanbim','scanbim','');\n";
  out += "FILE_SCHEMA(('IFC4'));\nENDSEC;\nDATA;\n";
  out += w.body();
  out += "ENDSEC;\nEND-ISO-10303-21;\n";
  return out;
}

void export_ifc(const BimModel& model, const std::filesystem::path& path, const IfcExportOptions& options) {
  write_file_atomic(path, model_to_ifc(model, options));
}

std::vector<int> spf_references(const std::string& arg) {
  std::vector<int> out;
  bool in_string = false;
  for (std::size_t i = 0; i < arg.size(); ++i) {
    if (arg[i] == '\'') in_string = !in_string;
    if (in_string || arg[i] != '#') continue;
    std::size_t j = i + 1;
    while (j < arg.size() && std::isdigit(static_cast<unsigned char>(arg[j]))) ++j;
    if (j > i + 1) out.push_back(std::stoi(arg.substr(i + 1, j - i - 1)));
    i = j - 1;
  }
  return out;
}

namespace {

std::vector<std::string> split_args(const std::string& s, int line_no) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  bool in_string = false;
  for (char c : s) {
    if (in_string) {
      cur += c;
      if (c == '\'') in_string = false;  // a doubled quote re-enters on the next char
      continue;
    }
    if (c == '\'') {
      in_string = true;
    } else if (c == '(') {
      ++depth;
    } else if (c == ')') {
      if (--depth < 0) throw Error(ErrorKind::ParseError, "SPF line " + std::to_string(line_no) + ": unbalanced ')'");
    } else if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
      continue;
    }
    cur += c;
  }
  if (depth != 0 || in_string) throw Error(ErrorKind::ParseError, "SPF line " + std::to_string(line_no) + ": unbalanced");
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

}  // namespace

SpfFile parse_spf(const std::string& text) {
  SpfFile file;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  enum { Start, Header, BetweenSections, Data, Done } state = Start;
  auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::ParseError, "SPF line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    switch (state) {
      case Start:
        if (line != "ISO-10303-21;") fail("missing ISO-10303-21 magic");
        state = BetweenSections;
        break;
      case BetweenSections:
        if (line == "HEADER;") state = Header;
        else if (line == "DATA;") state = Data;
        else if (line == "END-ISO-10303-21;") state = Done;
        else fail("unexpected line outside sections");
        break;
      case Header:
        if (line == "ENDSEC;") state = BetweenSections;
        else file.header.push_back(line);
        break;
      case Data: {
        if (line == "ENDSEC;") {
          state = BetweenSections;
          break;
        }
        if (line[0] != '#') fail("expected an instance");
        const std::size_t eq = line.find('=');
        const std::size_t open = line.find('(');
        if (eq == std::string::npos || open == std::string::npos || open < eq || line.size() < 3 ||
            line.substr(line.size() - 2) != ");") {
          fail("malformed instance");
        }
        SpfEntity e;
        try {
          e.id = std::stoi(line.substr(1, eq - 1));
        } catch (const std::exception&) {
          fail("bad instance id");
        }
        std::size_t t0 = eq + 1;
        while (t0 < open && line[t0] == ' ') ++t0;
        e.type = line.substr(t0, open - t0);
        e.args = split_args(line.substr(open + 1, line.size() - open - 3), line_no);
        if (!file.entities.emplace(e.id, std::move(e)).second) fail("duplicate instance id");
        break;
      }
      case Done:
        fail("content after END-ISO-10303-21");
    }
  }
  if (state != Done) throw Error(ErrorKind::ParseError, "SPF: missing END-ISO-10303-21");
  return file;
}

std::size_t SpfFile::count(const std::string& type) const {
  std::size_t n = 0;
  for (const auto& [id, e] : entities) n += e.type == type ? 1 : 0;
  return n;
}

std::vector<const SpfEntity*> SpfFile::of_type(const std::string& type) const {
  std::vector<const SpfEntity*> out;
  for (const auto& [id, e] : entities) {
    if (e.type == type) out.push_back(&e);
  }
  return out;
}

const SpfEntity* SpfFile::find(int id) const {
  const auto it = entities.find(id);
  return it == entities.end() ? nullptr : &it->second;
}

std::vector<int> SpfFile::dangling_references() const {
  std::set<int> missing;
  for (const auto& [id, e] : entities) {
    for (const auto& a : e.args) {
      for (int r : spf_references(a)) {
        if (!entities.count(r)) missing.insert(r);
      }
    }
  }
  return {missing.begin(), missing.end()};
}

IfcSpatialTree recover_spatial_tree(const SpfFile& file) {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::ParseError, "IFC hierarchy: " + what); };
  auto single = [&](const char* type) {
    const auto list = file.of_type(type);
    if (list.size() != 1) fail(std::string("expected exactly one ") + type);
    return list.front()->id;
  };
  IfcSpatialTree tree;
  tree.project = single("IFCPROJECT");
  tree.site = single("IFCSITE");
  tree.building = single("IFCBUILDING");

  std::map<int, std::vector<int>> children;
  for (const auto* rel : file.of_type("IFCRELAGGREGATES")) {
    if (rel->args.size() != 6) fail("IFCRELAGGREGATES needs 6 arguments");
    const auto parent = spf_references(rel->args[4]);
    if (parent.size() != 1) fail("bad relating object");
    auto& c = children[parent.front()];
    for (int id : spf_references(rel->args[5])) c.push_back(id);
  }
  auto expect_child = [&](int parent, int child, const char* what) {
    const auto& c = children[parent];
    if (c.size() != 1 || c.front() != child) fail(what);
  };
  expect_child(tree.project, tree.site, "project must aggregate the site");
  expect_child(tree.site, tree.building, "site must aggregate the building");
  for (int id : children[tree.building]) {
    const SpfEntity* e = file.find(id);
    if (!e || e->type != "IFCBUILDINGSTOREY") fail("building aggregates a non-storey");
    tree.storeys.push_back(id);
  }
  if (tree.storeys.size() != file.count("IFCBUILDINGSTOREY")) fail("storey not aggregated by the building");
  for (const auto* rel : file.of_type("IFCRELCONTAINEDINSPATIALSTRUCTURE")) {
    if (rel->args.size() != 6) fail("IFCRELCONTAINEDINSPATIALSTRUCTURE needs 6 arguments");
    const auto structure = spf_references(rel->args[5]);
    if (structure.size() != 1) fail("bad relating structure");
    auto& list = tree.contained[structure.front()];
    for (int id : spf_references(rel->args[4])) list.push_back(id);
  }
  return tree;
}

}  // namespace scanbim

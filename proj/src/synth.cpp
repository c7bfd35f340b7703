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

#include "scanbim/synth.hpp"

#include "scanbim/error.hpp"
#include "scanbim/fileio.hpp"
#include "scanbim/kdtree.hpp"

#include <Eigen/Geometry>
#include <nlohmann/json.hpp>

#include <random>

namespace scanbim {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::InvalidSpec, what); }

double wall_height(const SceneSpec& spec, const SynthWall& w) { return w.height > 0.0 ? w.height : spec.storey_height; }

Hobb wall_box(const SceneSpec& spec, const SynthWall& w) {
  const Vec2 d = w.end - w.start;
  const Vec2 mid = 0.5 * (w.start + w.end);
  const double h = wall_height(spec, w);
  Hobb b;
  b.length = d.norm();
  b.width = w.width;
  b.height = h;
  b.yaw = wrap_angle(std::atan2(d.y(), d.x()), 2.0 * kPi);
  b.center = Point3(mid.x(), mid.y(), spec.storey_floor(w.storey) + 0.5 * h);
  return b;
}

// Door box in the wall frame: along-wall extent is the door width.
Hobb door_box(const SceneSpec& spec, const SynthDoor& d) {
  const Hobb wall = wall_box(spec, spec.walls[d.wall]);
  const double along = -0.5 * wall.length + d.offset + 0.5 * d.width;
  const Vec2 c = wall.center.head<2>() + along * wall.direction();
  Hobb b;
  b.length = d.width;
  b.width = wall.width;
  b.height = d.height;
  b.yaw = wall.yaw;
  b.center = Point3(c.x(), c.y(), wall.z_min() + 0.5 * d.height);
  return b;
}

double column_height(const SceneSpec& spec, const SynthColumn& c) { return c.height > 0.0 ? c.height : spec.storey_height; }

std::variant<Cylinder, Hobb> column_geometry(const SceneSpec& spec, const SynthColumn& c) {
  const double z0 = spec.storey_floor(c.storey);
  const double h = column_height(spec, c);
  if (c.shape == ColumnShape::Round) return Cylinder{Point3(c.center.x(), c.center.y(), z0), c.radius, h};
  Hobb b;
  b.length = c.size.x();
  b.width = c.size.y();
  b.height = h;
  b.yaw = wrap_angle(deg_to_rad(c.yaw_deg), 2.0 * kPi);
  b.center = Point3(c.center.x(), c.center.y(), z0 + 0.5 * h);
  return b;
}

Hobb as_gt_box(Hobb b) {
  // Ground-truth boxes follow the fitted-box convention: yaw in [0, pi).
  b.yaw = wrap_angle(b.yaw, kPi);
  return b;
}

class Sampler {
 public:
  Sampler(const SceneSpec& spec, SynthScene& out) : spec_(spec), out_(out), rng_(spec.seed) {}

  template <typename Reject>
  void rect(const Point3& origin, const Point3& u, double a, const Point3& v, double b, const Point3& normal,
            Label label, std::int64_t element, Reject&& reject) {
    const auto n = static_cast<std::size_t>(std::llround(a * b * spec_.density));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double s = unit(rng_);
      const double t = unit(rng_);
      const Point3 p = origin + s * a * u + t * b * v;
      const double e = noise();
      if (reject(p)) continue;
      emit(p + e * normal, label, element);
    }
  }

  template <typename Reject>
  void cylinder(const Cylinder& c, std::int64_t element, Reject&& reject) {
    const auto n = static_cast<std::size_t>(std::llround(2.0 * kPi * c.radius * c.height * spec_.density));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double th = 2.0 * kPi * unit(rng_);
      const double z = c.height * unit(rng_);
      const Point3 normal(std::cos(th), std::sin(th), 0.0);
      const Point3 p = c.base_center + c.radius * normal + Point3(0, 0, z);
      const double e = noise();
      if (reject(p)) continue;
      emit(p + e * normal, Label::Column, element);
    }
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  double noise() { return spec_.noise_sigma > 0.0 ? gauss_(rng_) * spec_.noise_sigma : 0.0; }

  void emit(const Point3& p, Label label, std::int64_t element) {
    out_.cloud.points.push_back(p);
    out_.cloud.labels.push_back(label);
    out_.provenance.push_back(element);
  }

  const SceneSpec& spec_;
  SynthScene& out_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> gauss_{0.0, 1.0};
};

Point3 up() { return Point3::UnitZ(); }
Point3 lift(const Vec2& v) { return Point3(v.x(), v.y(), 0.0); }

}  // namespace

void SceneSpec::validate() const {
  if (storey_count < 1) invalid("storey_count must be at least 1");
  if (!(storey_height > 0.0)) invalid("storey_height must be positive");
  if (!(slab_thickness >= 0.0)) invalid("slab_thickness must be non-negative");
  if (!(density > 0.0)) invalid("density must be positive");
  if (!(noise_sigma >= 0.0)) invalid("noise_sigma must be non-negative");
  for (double f : {dropout_fraction, clutter_fraction}) {
    if (!(f >= 0.0 && f < 1.0)) invalid("fractions must lie in [0, 1)");
  }
  if (!(dropout_radius > 0.0)) invalid("dropout_radius must be positive");
  for (std::size_t i = 0; i < walls.size(); ++i) {
    const auto& w = walls[i];
    const std::string tag = "wall " + std::to_string(i);
    if (w.storey < 0 || w.storey >= storey_count) invalid(tag + ": storey out of range");
    if (!((w.end - w.start).norm() > 0.0)) invalid(tag + ": zero length");
    if (!(w.width > 0.0)) invalid(tag + ": width must be positive");
    if (!(w.height >= 0.0 && w.height <= storey_height)) invalid(tag + ": height outside (0, storey_height]");
  }
  for (std::size_t i = 0; i < doors.size(); ++i) {
    const auto& d = doors[i];
    const std::string tag = "door " + std::to_string(i);
    if (d.wall >= walls.size()) invalid(tag + ": unknown wall");
    const auto& w = walls[d.wall];
    const double len = (w.end - w.start).norm();
    if (!(d.width > 0.0) || !(d.height > 0.0)) invalid(tag + ": size must be positive");
    if (d.width > len) invalid(tag + ": wider than its wall");
    if (d.offset < 0.0 || d.offset + d.width > len) invalid(tag + ": extends past its wall");
    if (d.height > wall_height(*this, w)) invalid(tag + ": taller than its wall");
    if (!(d.open_angle_deg >= 0.0 && d.open_angle_deg <= 180.0)) invalid(tag + ": open angle outside [0, 180]");
  }
  for (std::size_t i = 0; i < columns.size(); ++i) {
    const auto& c = columns[i];
    const std::string tag = "column " + std::to_string(i);
    if (c.storey < 0 || c.storey >= storey_count) invalid(tag + ": storey out of range");
    if (!(c.height >= 0.0 && c.height <= storey_height)) invalid(tag + ": height outside (0, storey_height]");
    if (c.shape == ColumnShape::Round && !(c.radius > 0.0 && c.radius <= 2.0)) invalid(tag + ": radius outside (0, 2]");
    if (c.shape == ColumnShape::Rectangular && !(c.size.x() > 0.0 && c.size.y() > 0.0)) invalid(tag + ": size must be positive");
  }
}

SynthScene generate(const SceneSpec& spec) {
  spec.validate();
  SynthScene out;
  BimModel& gt = out.ground_truth;
  gt.seed = spec.seed;
  for (int s = 0; s < spec.storey_count; ++s) {
    gt.storeys.push_back({spec.storey_floor(s), spec.storey_floor(s) + spec.storey_height, s});
  }

  const auto n_walls = static_cast<ElementId>(spec.walls.size());
  const auto n_doors = static_cast<ElementId>(spec.doors.size());
  std::vector<Hobb> walls;
  for (std::size_t i = 0; i < spec.walls.size(); ++i) walls.push_back(wall_box(spec, spec.walls[i]));
  std::vector<Hobb> doors;
  for (const auto& d : spec.doors) doors.push_back(door_box(spec, d));
  std::vector<std::variant<Cylinder, Hobb>> columns;
  for (const auto& c : spec.columns) columns.push_back(column_geometry(spec, c));

  for (std::size_t i = 0; i < walls.size(); ++i) {
    gt.walls.push_back({static_cast<ElementId>(i), spec.walls[i].storey, as_gt_box(walls[i]), {}});
  }
  for (std::size_t i = 0; i < doors.size(); ++i) {
    gt.doors.push_back({n_walls + static_cast<ElementId>(i), static_cast<ElementId>(spec.doors[i].wall), as_gt_box(doors[i])});
  }
  for (std::size_t i = 0; i < columns.size(); ++i) {
    ColumnInstance c;
    c.id = n_walls + n_doors + static_cast<ElementId>(i);
    c.storey = spec.columns[i].storey;
    c.geometry = columns[i];
    if (auto* b = std::get_if<Hobb>(&c.geometry)) *b = as_gt_box(*b);
    gt.columns.push_back(c);
  }

  auto in_solid = [&](const Point3& p, std::size_t skip_wall, std::size_t skip_column, double tol) {
    for (std::size_t i = 0; i < walls.size(); ++i) {
      if (i != skip_wall && walls[i].contains(p, tol)) return true;
    }
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i != skip_column && std::visit([&](const auto& g) { return g.contains(p, tol); }, columns[i])) return true;
    }
    return false;
  };
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  constexpr double kStrict = -1e-9;  // interior only
  constexpr double kClosed = 1e-9;   // boundary counts as inside

  Sampler sampler(spec, out);

  // Walls: both faces and end caps, minus door openings and other solids.
  for (std::size_t i = 0; i < walls.size(); ++i) {
    const Hobb& b = walls[i];
    const Point3 d = lift(b.direction());
    const Point3 l = lift(b.lateral());
    const Point3 start = Point3(b.center.x(), b.center.y(), b.z_min()) - 0.5 * b.length * d;
    auto in_opening = [&](const Point3& p) {
      for (std::size_t k = 0; k < doors.size(); ++k) {
        if (spec.doors[k].wall != i) continue;
        const Point3 local = doors[k].to_local(p);
        if (std::abs(local.x()) < 0.5 * doors[k].length && local.z() < 0.5 * doors[k].height) return true;
      }
      return false;
    };
    for (double side : {-1.0, 1.0}) {
      sampler.rect(start + side * 0.5 * b.width * l, d, b.length, up(), b.height, side * l, Label::Wall,
                   static_cast<std::int64_t>(i),
                   [&](const Point3& p) { return in_opening(p) || in_solid(p, i, kNone, kStrict); });
    }
    for (double end : {0.0, 1.0}) {
      const double sign = end == 0.0 ? -1.0 : 1.0;
      sampler.rect(start + end * b.length * d - 0.5 * b.width * l, l, b.width, up(), b.height, sign * d, Label::Wall,
                   static_cast<std::int64_t>(i), [&](const Point3& p) { return in_solid(p, i, kNone, kClosed); });
    }
  }

  // Doors: reveals and head of the opening, and the leaf.
  for (std::size_t k = 0; k < doors.size(); ++k) {
    const Hobb& db = doors[k];
    const SynthDoor& sd = spec.doors[k];
    const auto id = static_cast<std::int64_t>(n_walls + k);
    const Point3 d = lift(db.direction());
    const Point3 l = lift(db.lateral());
    const Point3 base = Point3(db.center.x(), db.center.y(), db.z_min());
    auto none = [&](const Point3& p) { return in_solid(p, sd.wall, kNone, kStrict); };
    for (double e : {-1.0, 1.0}) {
      sampler.rect(base + e * 0.5 * db.length * d - 0.5 * db.width * l, l, db.width, up(), db.height, -e * d, Label::Door,
                   id, none);
    }
    sampler.rect(base - 0.5 * db.length * d - 0.5 * db.width * l + db.height * up(), d, db.length, l, db.width, -up(),
                 Label::Door, id, none);
    const double a = deg_to_rad(sd.open_angle_deg);
    const Point3 hinge = base - 0.5 * db.length * d + 0.5 * db.width * l;
    const Point3 leaf_dir = std::cos(a) * d + std::sin(a) * l;
    const Point3 leaf_normal = -std::sin(a) * d + std::cos(a) * l;
    sampler.rect(hinge, leaf_dir, db.length, up(), db.height, leaf_normal, Label::Door, id,
                 [&](const Point3& p) { return in_solid(p, kNone, kNone, kStrict); });
  }

  // Columns: side shells.
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const auto id = static_cast<std::int64_t>(n_walls + n_doors + c);
    auto reject = [&](const Point3& p) { return in_solid(p, kNone, c, kStrict); };
    if (const auto* cyl = std::get_if<Cylinder>(&columns[c])) {
      sampler.cylinder(*cyl, id, reject);
      continue;
    }
    const Hobb& b = std::get<Hobb>(columns[c]);
    const auto corners = b.corners();
    for (int e = 0; e < 4; ++e) {
      const Point3 p0 = corners[e];
      const Point3 p1 = corners[(e + 1) % 4];
      const Point3 edge = p1 - p0;
      const double len = edge.norm();
      const Point3 u = edge / len;
      const Point3 n(u.y(), -u.x(), 0.0);  // outward for a CCW ring
      sampler.rect(p0, u, len, up(), b.height, n, Label::Column, id, reject);
    }
  }

  // Floor and ceiling over each storey's wall footprint.
  for (int s = 0; s < spec.storey_count; ++s) {
    Vec2 lo = Vec2::Constant(std::numeric_limits<double>::infinity());
    Vec2 hi = -lo;
    for (std::size_t i = 0; i < walls.size(); ++i) {
      if (spec.walls[i].storey != s) continue;
      for (const auto& c : walls[i].corners()) {
        lo = lo.cwiseMin(c.head<2>());
        hi = hi.cwiseMax(c.head<2>());
      }
    }
    if (!(hi.x() > lo.x() && hi.y() > lo.y())) continue;
    const double zf = spec.storey_floor(s);
    const double zc = zf + spec.storey_height;
    auto under_solid = [&](const Point3& p) {
      for (const auto& w : walls) {
        if (w.contains(Point3(p.x(), p.y(), w.center.z()), kClosed)) return true;
      }
      for (const auto& c : columns) {
        const bool hit = std::visit(
            [&](const auto& g) {
              if constexpr (std::is_same_v<std::decay_t<decltype(g)>, Cylinder>) {
                return std::hypot(p.x() - g.base_center.x(), p.y() - g.base_center.y()) <= g.radius;
              } else {
                return g.contains(Point3(p.x(), p.y(), g.center.z()), kClosed);
              }
            },
            c);
        if (hit) return true;
      }
      return false;
    };
    const Vec2 ext = hi - lo;
    sampler.rect(Point3(lo.x(), lo.y(), zf), Point3::UnitX(), ext.x(), Point3::UnitY(), ext.y(), up(), Label::Floor,
                 kNoElement, under_solid);
    sampler.rect(Point3(lo.x(), lo.y(), zc), Point3::UnitX(), ext.x(), Point3::UnitY(), ext.y(), -up(), Label::Ceiling,
                 kNoElement, under_solid);
  }

  auto& cloud = out.cloud;
  auto& rng = sampler.rng();

  // Occlusion: remove spherical patches around random surviving points.
  if (spec.dropout_fraction > 0.0 && cloud.size() > 0) {
    const KdTree tree(cloud.points);
    std::vector<char> removed(cloud.size(), 0);
    const auto target = static_cast<std::size_t>(spec.dropout_fraction * static_cast<double>(cloud.size()));
    std::uniform_int_distribution<std::size_t> pick(0, cloud.size() - 1);
    std::size_t count = 0;
    for (std::size_t tries = 0; count < target && tries < 100 * cloud.size(); ++tries) {
      const std::size_t c = pick(rng);
      if (removed[c]) continue;
      for (Index j : tree.radius(cloud.points[c], spec.dropout_radius)) {
        if (!removed[j]) {
          removed[j] = 1;
          ++count;
        }
      }
    }
    std::size_t w = 0;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      if (removed[i]) continue;
      cloud.points[w] = cloud.points[i];
      cloud.labels[w] = cloud.labels[i];
      out.provenance[w] = out.provenance[i];
      ++w;
    }
    cloud.points.resize(w);
    cloud.labels.resize(w);
    out.provenance.resize(w);
  }

  // Clutter: uniform points inside random storeys' bounding volumes.
  if (spec.clutter_fraction > 0.0 && cloud.size() > 0) {
    Point3 lo = Point3::Constant(std::numeric_limits<double>::infinity());
    Point3 hi = -lo;
    for (const auto& w : walls) {
      for (const auto& c : w.corners()) {
        lo = lo.cwiseMin(c);
        hi = hi.cwiseMax(c);
      }
    }
    const auto n = static_cast<std::size_t>(
        std::llround(spec.clutter_fraction / (1.0 - spec.clutter_fraction) * static_cast<double>(cloud.size())));
    std::uniform_real_distribution<double> ux(lo.x(), hi.x()), uy(lo.y(), hi.y());
    std::uniform_real_distribution<double> uz(0.0, spec.storey_height);
    std::uniform_int_distribution<int> us(0, spec.storey_count - 1);
    for (std::size_t i = 0; i < n && hi.x() > lo.x(); ++i) {
      const double x = ux(rng);
      const double y = uy(rng);
      const double z = spec.storey_floor(us(rng)) + uz(rng);
      cloud.points.emplace_back(x, y, z);
      cloud.labels.push_back(Label::Clutter);
      out.provenance.push_back(kNoElement);
    }
  }
  return out;
}

// JSON.

using nlohmann::json;

namespace {

Vec2 read_vec2(const json& j) {
  if (!j.is_array() || j.size() != 2) invalid("expected a 2-vector");
  return {j[0].get<double>(), j[1].get<double>()};
}

json vec2(const Vec2& v) { return json::array({v.x(), v.y()}); }

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) invalid(where + " must be an object");
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) invalid("unknown key '" + k + "' in " + where);
  }
}

template <typename T>
void read_opt(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

SceneSpec scene_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("scene: ") + e.what());
  }
  SceneSpec spec;
  try {
    check_keys(j,
               {"seed", "density", "noise_sigma", "dropout_fraction", "dropout_radius", "clutter_fraction",
                "storey_count", "storey_height", "slab_thickness", "walls", "doors", "columns"},
               "scene");
    read_opt(j, "seed", spec.seed);
    read_opt(j, "density", spec.density);
    read_opt(j, "noise_sigma", spec.noise_sigma);
    read_opt(j, "dropout_fraction", spec.dropout_fraction);
    read_opt(j, "dropout_radius", spec.dropout_radius);
    read_opt(j, "clutter_fraction", spec.clutter_fraction);
    read_opt(j, "storey_count", spec.storey_count);
    read_opt(j, "storey_height", spec.storey_height);
    read_opt(j, "slab_thickness", spec.slab_thickness);
    for (const auto& w : j.value("walls", json::array())) {
      check_keys(w, {"storey", "start", "end", "width", "height"}, "wall");
      SynthWall wall;
      read_opt(w, "storey", wall.storey);
      wall.start = read_vec2(w.at("start"));
      wall.end = read_vec2(w.at("end"));
      read_opt(w, "width", wall.width);
      read_opt(w, "height", wall.height);
      spec.walls.push_back(wall);
    }
    for (const auto& d : j.value("doors", json::array())) {
      check_keys(d, {"wall", "offset", "width", "height", "open_angle_deg"}, "door");
      SynthDoor door;
      door.wall = d.at("wall").get<std::size_t>();
      door.offset = d.at("offset").get<double>();
      read_opt(d, "width", door.width);
      read_opt(d, "height", door.height);
      read_opt(d, "open_angle_deg", door.open_angle_deg);
      spec.doors.push_back(door);
    }
    for (const auto& c : j.value("columns", json::array())) {
      check_keys(c, {"storey", "shape", "center", "radius", "size", "yaw_deg", "height"}, "column");
      SynthColumn col;
      read_opt(c, "storey", col.storey);
      const std::string shape = c.at("shape").get<std::string>();
      if (shape == "round") col.shape = ColumnShape::Round;
      else if (shape == "rectangular") col.shape = ColumnShape::Rectangular;
      else invalid("unknown column shape " + shape);
      col.center = read_vec2(c.at("center"));
      read_opt(c, "radius", col.radius);
      if (c.contains("size")) col.size = read_vec2(c.at("size"));
      read_opt(c, "yaw_deg", col.yaw_deg);
      read_opt(c, "height", col.height);
      spec.columns.push_back(col);
    }
  } catch (const json::exception& e) {
    invalid(std::string("scene: ") + e.what());
  }
  spec.validate();
  return spec;
}

std::string scene_to_json(const SceneSpec& spec) {
  json j;
  j["seed"] = spec.seed;
  j["density"] = spec.density;
  j["noise_sigma"] = spec.noise_sigma;
  j["dropout_fraction"] = spec.dropout_fraction;
  j["dropout_radius"] = spec.dropout_radius;
  j["clutter_fraction"] = spec.clutter_fraction;
  j["storey_count"] = spec.storey_count;
  j["storey_height"] = spec.storey_height;
  j["slab_thickness"] = spec.slab_thickness;
  j["walls"] = json::array();
  for (const auto& w : spec.walls) {
    j["walls"].push_back(
        {{"storey", w.storey}, {"start", vec2(w.start)}, {"end", vec2(w.end)}, {"width", w.width}, {"height", w.height}});
  }
  j["doors"] = json::array();
  for (const auto& d : spec.doors) {
    j["doors"].push_back({{"wall", d.wall},
                          {"offset", d.offset},
                          {"width", d.width},
                          {"height", d.height},
                          {"open_angle_deg", d.open_angle_deg}});
  }
  j["columns"] = json::array();
  for (const auto& c : spec.columns) {
    json cj = {{"storey", c.storey}, {"center", vec2(c.center)}, {"height", c.height}};
    if (c.shape == ColumnShape::Round) {
      cj["shape"] = "round";
      cj["radius"] = c.radius;
    } else {
      cj["shape"] = "rectangular";
      cj["size"] = vec2(c.size);
      cj["yaw_deg"] = c.yaw_deg;
    }
    j["columns"].push_back(std::move(cj));
  }
  return j.dump(2) + "\n";
}

SceneSpec load_scene(const std::filesystem::path& path) { return scene_from_json(read_file(path)); }

// Layouts.

SceneSpec grid_layout(const std::vector<double>& xs, const std::vector<double>& ys, int storeys, double wall_width,
                      double storey_height) {
  if (xs.size() < 2 || ys.size() < 2) invalid("grid needs at least two lines per axis");
  SceneSpec spec;
  spec.storey_count = storeys;
  spec.storey_height = storey_height;
  const double e = 0.5 * wall_width;
  for (int s = 0; s < storeys; ++s) {
    for (double y : ys) spec.walls.push_back({s, Vec2(xs.front() - e, y), Vec2(xs.back() + e, y), wall_width, 0.0});
    for (double x : xs) spec.walls.push_back({s, Vec2(x, ys.front() - e), Vec2(x, ys.back() + e), wall_width, 0.0});
  }
  return spec;
}

SceneSpec room_layout(double length_x, double length_y, double wall_width, double storey_height) {
  return grid_layout({0.0, length_x}, {0.0, length_y}, 1, wall_width, storey_height);
}

void add_door_at(SceneSpec& spec, std::size_t wall, double along, double width, double height, double open_angle_deg) {
  spec.doors.push_back({wall, along - 0.5 * width, width, height, open_angle_deg});
}

void rotate_scene(SceneSpec& spec, double yaw, const Vec2& pivot) {
  const Eigen::Rotation2Dd rot(yaw);
  for (auto& w : spec.walls) {
    w.start = pivot + rot * (w.start - pivot);
    w.end = pivot + rot * (w.end - pivot);
  }
  for (auto& c : spec.columns) {
    c.center = pivot + rot * (c.center - pivot);
    c.yaw_deg += rad_to_deg(yaw);
  }
}

SceneSpec random_multi_room(std::uint64_t seed, int storeys) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> nx_dist(2, 3), ny_dist(1, 2);
  std::uniform_real_distribution<double> size(3.0, 5.0);
  const int nx = nx_dist(rng);
  const int ny = ny_dist(rng);
  std::vector<double> xs{0.0}, ys{0.0};
  for (int i = 0; i < nx; ++i) xs.push_back(xs.back() + size(rng));
  for (int j = 0; j < ny; ++j) ys.push_back(ys.back() + size(rng));
  const double width = std::uniform_real_distribution<double>(0.15, 0.3)(rng);
  SceneSpec spec = grid_layout(xs, ys, storeys, width, 3.0);
  spec.seed = seed;

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double door_w = 0.9;
  const double clear = 0.5 * width + 0.5 * door_w + 0.3;
  auto door_in_span = [&](std::size_t wall, double wall_start, double a, double b) {
    const double along = a + clear + unit(rng) * std::max(0.0, (b - a) - 2.0 * clear);
    add_door_at(spec, wall, along - wall_start, door_w, 2.1, 90.0 * unit(rng));
  };
  const std::size_t per_storey = xs.size() + ys.size();
  for (int s = 0; s < storeys; ++s) {
    const std::size_t base = static_cast<std::size_t>(s) * per_storey;
    const double x_start = xs.front() - 0.5 * width;
    const double y_start = ys.front() - 0.5 * width;
    // Interior horizontal lines: one door per room they bound.
    for (std::size_t j = 1; j + 1 < ys.size(); ++j) {
      for (std::size_t i = 0; i + 1 < xs.size(); ++i) door_in_span(base + j, x_start, xs[i], xs[i + 1]);
    }
    // Interior vertical lines: one door per room row.
    for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
      for (std::size_t j = 0; j + 1 < ys.size(); ++j) door_in_span(base + ys.size() + i, y_start, ys[j], ys[j + 1]);
    }
    door_in_span(base, x_start, xs[0], xs[1]);  // exterior entrance on the first line
  }
  rotate_scene(spec, unit(rng) * 0.5 * kPi, Vec2::Zero());
  return spec;
}

SceneSpec two_storey_building() {
  SceneSpec spec = grid_layout({0.0, 4.0, 8.0, 12.0}, {0.0, 6.0}, 2, 0.2, 3.0);
  spec.density = 500.0;
  spec.noise_sigma = 0.005;
  spec.seed = 7;
  // Wall order per storey: y=0, y=6, x=0, x=4, x=8, x=12.
  for (int s = 0; s < 2; ++s) {
    const std::size_t base = static_cast<std::size_t>(s) * 6;
    add_door_at(spec, base + 0, 0.1 + 2.0, 0.9, 2.1, s == 0 ? 0.0 : 30.0);
    add_door_at(spec, base + 3, 0.1 + 3.0, 0.9, 2.1, 90.0);
    add_door_at(spec, base + 4, 0.1 + 2.0, 0.9, 2.1, s == 0 ? 45.0 : 0.0);
    spec.columns.push_back({s, ColumnShape::Round, Vec2(2.0, 3.5), 0.25, Vec2(0.4, 0.4), 0.0, 0.0});
    spec.columns.push_back({s, ColumnShape::Rectangular, Vec2(10.0, 3.0), 0.25, Vec2(0.5, 0.4), 0.0, 0.0});
  }
  return spec;
}

}  // namespace scanbim

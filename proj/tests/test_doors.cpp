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

#include "scanbim/doors.hpp"
#include "scanbim/error.hpp"
#include "scanbim/synth.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace scanbim;
using testutil::make_wall;
using testutil::span_along;

namespace {

struct DoorScene {
  std::vector<Point3> door_points;
  std::vector<std::int64_t> provenance;
  std::vector<WallInstance> walls;
};

DoorScene door_scene(const SceneSpec& spec) {
  const auto scene = generate(spec);
  DoorScene out;
  for (std::size_t i = 0; i < scene.cloud.size(); ++i) {
    if (scene.cloud.labels[i] != Label::Door) continue;
    out.door_points.push_back(scene.cloud.points[i]);
    out.provenance.push_back(scene.provenance[i]);
  }
  out.walls = scene.ground_truth.walls;
  return out;
}

}  // namespace

TEST_CASE("closed door points go to their wall") {
  SceneSpec spec = room_layout(6, 4, 0.2, 2.7);
  add_door_at(spec, 0, 3.0, 0.9, 2.1, 0.0);
  const auto ds = door_scene(spec);
  REQUIRE(!ds.door_points.empty());
  const auto cand = find_door_candidates(ds.door_points, ds.walls, 0.05);
  REQUIRE(cand.assigned.size() == 1);
  CHECK(cand.assigned.begin()->first == ds.walls[0].id);
  CHECK(cand.assigned.begin()->second.size() == ds.door_points.size());
  CHECK(cand.unassigned.empty());
}

TEST_CASE("door points far from walls are not assigned") {
  const std::vector<WallInstance> walls{make_wall(0, Vec2(0, 0), Vec2(5, 0))};
  const std::vector<Point3> pts{{2, 1.2, 1}, {3, -1.5, 1}};
  const auto cand = find_door_candidates(pts, walls, 0.05);
  CHECK(cand.assigned.empty());
  CHECK(cand.unassigned.size() == 2);
}

TEST_CASE("door next to a perpendicular wall goes to the smaller wall") {
  SceneSpec spec;
  spec.walls.push_back({0, Vec2(-0.1, 0), Vec2(3, 0), 0.2, 0});  // A
  spec.walls.push_back({0, Vec2(0, -3), Vec2(0, 3), 0.2, 0});    // B
  spec.doors.push_back({0, 0.15, 0.9, 2.1, 0.0});
  const auto ds = door_scene(spec);
  const auto cand = find_door_candidates(ds.door_points, ds.walls, 0.05);
  REQUIRE(cand.assigned.count(ds.walls[0].id) == 1);
  CHECK(cand.assigned.count(ds.walls[1].id) == 0);
  CHECK(cand.assigned.at(ds.walls[0].id).size() == ds.door_points.size());
}

TEST_CASE("an open leaf joins its frame cluster") {
  SceneSpec spec = room_layout(6, 4, 0.2, 2.7);
  add_door_at(spec, 0, 3.0, 0.8, 2.1, 90.0);
  const auto ds = door_scene(spec);
  const auto cand = find_door_candidates(ds.door_points, ds.walls, 0.05);
  REQUIRE(!cand.unassigned.empty());
  // Leaf points outside the wall.
  std::size_t outside = 0;
  for (const auto& p : ds.door_points) outside += !ds.walls[0].box.contains(p, 0.05);
  CHECK(outside > 0);
  const auto clusters = expand_door_cluster(ds.door_points, cand, 1.0, 0.15);
  REQUIRE(clusters.size() == 1);
  CHECK(clusters.begin()->second.size() == ds.door_points.size());
}

TEST_CASE("a distant blob stays out of every door cluster") {
  SceneSpec spec = room_layout(6, 4, 0.2, 2.7);
  add_door_at(spec, 0, 3.0, 0.9, 2.1, 0.0);
  auto ds = door_scene(spec);
  const std::size_t real = ds.door_points.size();
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g(0, 0.1);
  for (int i = 0; i < 200; ++i) ds.door_points.emplace_back(3 + g(rng), 5 + g(rng), 1 + g(rng));
  const auto cand = find_door_candidates(ds.door_points, ds.walls, 0.05);
  const auto clusters = expand_door_cluster(ds.door_points, cand, 1.0, 0.15);
  for (const auto& [wall, members] : clusters)
    for (auto i : members) CHECK(i < real);
  DoorParams params;
  CHECK(reconstruct_doors(ds.door_points, ds.walls, params).size() == 1);
}

TEST_CASE("two doors in one wall stay separate") {
  SceneSpec spec = room_layout(8, 4, 0.2, 2.7);
  add_door_at(spec, 0, 2.0, 0.9, 2.1, 0.0);
  add_door_at(spec, 0, 5.0, 0.9, 2.1, 30.0);
  const auto ds = door_scene(spec);
  const auto doors = reconstruct_doors(ds.door_points, ds.walls, {});
  REQUIRE(doors.size() == 2);
  for (const auto& d : doors) {
    CHECK(d.parent_wall_id == ds.walls[0].id);
    CHECK(d.box.length == doctest::Approx(0.9).epsilon(0.05));
  }
}

TEST_CASE("projection aligns a skewed door with its wall") {
  const auto wall = make_wall(0, Vec2(-3, 0), Vec2(3, 0), 0.2, 2.5);
  Hobb door;
  door.center = Point3(1, 0.05, 1.05);
  door.length = 0.9;
  door.width = 0.15;
  door.height = 2.1;
  door.yaw = deg_to_rad(4);
  const Hobb p = project_into_wall(door, wall);
  CHECK(p.yaw == doctest::Approx(wall.box.yaw));
  CHECK(std::abs(p.center.y()) < 1e-12);
  CHECK(p.width == doctest::Approx(0.2));
  CHECK(p.center.x() == doctest::Approx(1.0));

  Hobb aligned = door;
  aligned.yaw = 0;
  aligned.center.y() = 0;
  const Hobb q = project_into_wall(aligned, wall);
  Hobb expected = aligned;
  expected.width = 0.2;
  CHECK((q.center - expected.center).norm() < 1e-12);
  CHECK(q.length == doctest::Approx(expected.length));
  CHECK(q.height == doctest::Approx(expected.height));
  CHECK(q.width == doctest::Approx(expected.width));

  Hobb past = aligned;
  past.center.x() = 2.9;
  past.length = 0.6;
  const Hobb r = project_into_wall(past, wall);
  const WallInstance as_wall{0, 0, r, {}};
  const auto [s, e] = span_along(as_wall, Vec2(1, 0));
  CHECK(s == doctest::Approx(2.6));
  CHECK(e == doctest::Approx(3.0));
}

TEST_CASE("oversized doors split evenly") {
  Hobb door;
  door.center = Point3(0, 0, 1);
  door.length = 3.6;
  door.width = 0.2;
  door.height = 2;
  auto parts = split_oversized(door, 1.2, 0.0);
  REQUIRE(parts.size() == 3);
  for (const auto& p : parts) CHECK(p.length == doctest::Approx(1.2));

  door.length = 1.0;
  parts = split_oversized(door, 1.2, 0.1);
  REQUIRE(parts.size() == 1);
  CHECK(parts[0] == door);

  door.length = 2.5;
  parts = split_oversized(door, 1.2, 0.1);
  REQUIRE(parts.size() == 3);
  std::vector<double> starts;
  for (const auto& p : parts) {
    CHECK(std::abs(p.length - 0.7667) < 1e-4);
    starts.push_back(p.center.x() - p.length / 2);
  }
  std::sort(starts.begin(), starts.end());
  for (std::size_t i = 1; i < starts.size(); ++i) CHECK(starts[i] - (starts[i - 1] + parts[0].length) == doctest::Approx(0.1));

  door.length = 2.5;
  CHECK_THROWS_AS(split_oversized(door, 0.1, 0.5), Error);
}

TEST_CASE("reconstructed doors sit inside their walls") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    SceneSpec spec = random_multi_room(seed);
    spec.noise_sigma = 0.005;
    const auto ds = door_scene(spec);
    const auto doors = reconstruct_doors(ds.door_points, ds.walls, {});
    CHECK(doors.size() == spec.doors.size());
    for (const auto& d : doors) {
      const WallInstance* parent = nullptr;
      for (const auto& w : ds.walls)
        if (w.id == d.parent_wall_id) parent = &w;
      REQUIRE(parent != nullptr);
      CHECK(angle_distance(d.box.yaw, parent->box.yaw, kPi) < 1e-12);
      for (const auto& c : d.box.corners()) CHECK(parent->box.contains(c, 1e-3));
      CHECK(d.box.length <= DoorParams{}.max_width + 1e-12);
    }
  }
}

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
#include <string>
#include <vector>

namespace scanbim {

struct SynthWall {
  int storey = 0;
  Vec2 start = Vec2::Zero();  // centerline end points; the box spans exactly start..end
  Vec2 end = Vec2::Zero();
  double width = 0.2;
  double height = 0.0;  // 0: full storey height
};

struct SynthDoor {
  std::size_t wall = 0;
  double offset = 0.0;  // from the wall start to the near jamb, along the centerline
  double width = 0.9;
  double height = 2.1;
  double open_angle_deg = 0.0;  // leaf rotation about the hinge at the near jamb
};

struct SynthColumn {
  int storey = 0;
  ColumnShape shape = ColumnShape::Round;
  Vec2 center = Vec2::Zero();
  double radius = 0.25;                 // round
  Vec2 size = Vec2(0.4, 0.4);           // rectangular, along / across yaw
  double yaw_deg = 0.0;
  double height = 0.0;  // 0: full storey height
};

struct SceneSpec {
  std::uint64_t seed = 1;
  double density = 500.0;  // points per square metre of surface
  double noise_sigma = 0.0;
  double dropout_fraction = 0.0;
  double dropout_radius = 0.3;
  double clutter_fraction = 0.0;
  int storey_count = 1;
  double storey_height = 3.0;  // floor to ceiling
  double slab_thickness = 0.3;
  std::vector<SynthWall> walls;
  std::vector<SynthDoor> doors;
  std::vector<SynthColumn> columns;

  /// Throws InvalidSpec.
  void validate() const;
  double storey_floor(int storey) const { return storey * (storey_height + slab_thickness); }
};

inline constexpr std::int64_t kNoElement = -1;

struct SynthScene {
  LabeledPointCloud cloud;
  BimModel ground_truth;
  /// Element id that produced each point; kNoElement for slabs and clutter.
  std::vector<std::int64_t> provenance;
};

/// Samples every surface of the scene and builds the exact ground truth.
/// Walls get ids 0..W-1 in spec order, then doors, then columns.
SynthScene generate(const SceneSpec& spec);

/// Throws ParseError on malformed JSON and InvalidSpec on bad content.
SceneSpec scene_from_json(const std::string& text);
std::string scene_to_json(const SceneSpec& spec);
SceneSpec load_scene(const std::filesystem::path& path);

// Layout helpers.

/// Walls on every grid line of a rectilinear plan, each spanning the whole
/// grid and extended by half the wall width at both ends so corners close.
/// Repeated for every storey.
SceneSpec grid_layout(const std::vector<double>& xs, const std::vector<double>& ys, int storeys, double wall_width,
                      double storey_height);

/// Four-wall room with its inner corner at the origin side.
SceneSpec room_layout(double length_x, double length_y, double wall_width, double storey_height);

/// Adds a door whose centre sits `along` metres from the wall start.
void add_door_at(SceneSpec& spec, std::size_t wall, double along, double width, double height,
                 double open_angle_deg);

/// Rotates every wall and column about `pivot` by `yaw` radians.
void rotate_scene(SceneSpec& spec, double yaw, const Vec2& pivot = Vec2::Zero());

/// Seeded multi-room plan: 2-3 x 1-2 rooms of 3-5 m, one door per interior
/// wall segment, one exterior door, random global rotation.
SceneSpec random_multi_room(std::uint64_t seed, int storeys = 1);

/// Two storeys, each a 12 x 6 m plan split into three rooms (6 walls), three
/// doors and one round plus one rectangular column.
SceneSpec two_storey_building();

}  // namespace scanbim

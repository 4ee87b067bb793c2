#pragma once

#include <cstdint>
#include <vector>

#include "beliefnav/world/pose.hpp"

namespace beliefnav::world {

// A ground-truth object instance sitting on an occupied cell.
struct Placement {
  int class_index = 0;
  Cell cell;
  auto operator<=>(const Placement&) const = default;
};

struct EpisodeSpec {
  const GridMap* map = nullptr;
  int target_class = 0;
  Cell target_cell;
  Pose start_pose;
  int horizon = 1;                      // max primitive count T
  double confidence_threshold = 0.8;    // tau
  std::uint64_t rng_seed = 0;
  // Every object present in the scene, target included.
  std::vector<Placement> objects;

  void validate() const;
};

enum class EpisodeStatus : int {
  running = 0,
  success = 1,
  horizon_exhausted = 2,
  false_declaration = 3,
};

const char* to_string(EpisodeStatus s);
EpisodeStatus episode_status_from_string(const std::string& s);

// Per-episode accumulators for the efficiency metrics.
struct EpisodeState {
  Pose pose;
  int primitives_executed = 0;
  double distance_traveled = 0.0;  // meters; effective forward moves only
  EpisodeStatus status = EpisodeStatus::running;

  // Executes one primitive, counting it even when a blocked forward leaves
  // the pose unchanged.
  void advance(const GridMap& map, MotionPrimitive prim);
};

// T = floor(fraction * |F|), clamped to at least 1.
int horizon_for(const GridMap& map, double fraction = 0.75);

}  // namespace beliefnav::world

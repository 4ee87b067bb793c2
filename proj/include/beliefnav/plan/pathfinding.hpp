#pragma once

#include <stdexcept>
#include <vector>

#include "beliefnav/world/pose.hpp"

namespace beliefnav::plan {

class UnreachableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Path {
  std::vector<world::MotionPrimitive> primitives;
  world::Pose end_pose;

  int cost() const { return static_cast<int>(primitives.size()); }
};

// Minimum-primitive-count path over the (cell, heading) graph, each
// primitive costing 1. Ties resolve toward the lexicographically smallest
// action sequence under the order forward < turn_left < turn_right. Returns
// an empty path when the start cell already is the goal.
Path shortest_path(const world::GridMap& map, const world::Pose& start,
                   world::Cell goal);

// Single-source primitive costs from a start pose to every cell (minimum
// over arrival headings). Shares the path-metric semantics of shortest_path.
class ReachabilityMap {
 public:
  ReachabilityMap(const world::GridMap& map, const world::Pose& start);

  bool reachable(world::Cell cell) const;
  int cost_to(world::Cell cell) const;  // throws UnreachableError if not reachable

 private:
  const world::GridMap* map_;
  std::vector<int> state_cost_;  // per (cell, heading), -1 unreachable
};

}  // namespace beliefnav::plan

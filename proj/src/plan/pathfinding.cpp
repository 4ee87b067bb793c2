#include "beliefnav/plan/pathfinding.hpp"

#include <algorithm>
#include <deque>

namespace beliefnav::plan {

using world::Cell;
using world::GridMap;
using world::Heading;
using world::MotionPrimitive;
using world::Pose;

namespace {

int state_index(const GridMap& map, const Pose& pose) {
  return static_cast<int>(map.index(pose.cell)) * world::kHeadingCount +
         static_cast<int>(pose.heading);
}

Pose state_pose(const GridMap& map, int index) {
  return Pose{map.cell_at(index / world::kHeadingCount),
              static_cast<Heading>(index % world::kHeadingCount)};
}

// Expansion in preference order (forward, left, right); with FIFO discovery
// this yields the lexicographically smallest optimal action sequence.
constexpr MotionPrimitive kExpansionOrder[3] = {MotionPrimitive::move_forward,
                                                MotionPrimitive::turn_left,
                                                MotionPrimitive::turn_right};

void check_inputs(const GridMap& map, const Pose& start, const Cell* goal) {
  if (!map.in_bounds(start.cell) || !map.is_free(start.cell))
    throw std::invalid_argument("shortest_path: start must be a free cell");
  if (goal && (!map.in_bounds(*goal) || !map.is_free(*goal)))
    throw std::invalid_argument("shortest_path: goal must be a free cell");
}

}  // namespace

Path shortest_path(const GridMap& map, const Pose& start, Cell goal) {
  check_inputs(map, start, &goal);
  if (start.cell == goal) return Path{{}, start};

  const int n_states = static_cast<int>(map.cell_count()) * world::kHeadingCount;
  std::vector<int> parent(n_states, -1);
  std::vector<std::int8_t> via(n_states, -1);
  std::vector<std::uint8_t> seen(n_states, 0);

  std::deque<int> queue;
  const int start_idx = state_index(map, start);
  seen[start_idx] = 1;
  queue.push_back(start_idx);

  while (!queue.empty()) {
    const int idx = queue.front();
    queue.pop_front();
    const Pose pose = state_pose(map, idx);
    if (pose.cell == goal) {
      std::vector<MotionPrimitive> prims;
      for (int at = idx; at != start_idx; at = parent[at])
        prims.push_back(static_cast<MotionPrimitive>(via[at]));
      std::reverse(prims.begin(), prims.end());
      return Path{std::move(prims), pose};
    }
    for (MotionPrimitive prim : kExpansionOrder) {
      if (prim == MotionPrimitive::move_forward) {
        // Blocked forwards are lawful no-ops in the world but never belong
        // to a shortest path, so they are not edges here.
        const Cell ahead = world::step_toward(pose.cell, pose.heading);
        if (!map.in_bounds(ahead) || map.is_occupied(ahead)) continue;
      }
      const Pose next = world::apply_primitive(map, pose, prim);
      const int next_idx = state_index(map, next);
      if (seen[next_idx]) continue;
      seen[next_idx] = 1;
      parent[next_idx] = idx;
      via[next_idx] = static_cast<std::int8_t>(prim);
      queue.push_back(next_idx);
    }
  }
  throw UnreachableError("shortest_path: goal unreachable from start");
}

ReachabilityMap::ReachabilityMap(const GridMap& map, const Pose& start) : map_(&map) {
  check_inputs(map, start, nullptr);
  const int n_states = static_cast<int>(map.cell_count()) * world::kHeadingCount;
  state_cost_.assign(n_states, -1);

  std::deque<int> queue;
  const int start_idx = state_index(map, start);
  state_cost_[start_idx] = 0;
  queue.push_back(start_idx);
  while (!queue.empty()) {
    const int idx = queue.front();
    queue.pop_front();
    const Pose pose = state_pose(map, idx);
    for (MotionPrimitive prim : kExpansionOrder) {
      if (prim == MotionPrimitive::move_forward) {
        const Cell next = world::step_toward(pose.cell, pose.heading);
        if (!map.in_bounds(next) || map.is_occupied(next)) continue;
      }
      const Pose next = world::apply_primitive(map, pose, prim);
      const int next_idx = state_index(map, next);
      if (state_cost_[next_idx] >= 0) continue;
      state_cost_[next_idx] = state_cost_[idx] + 1;
      queue.push_back(next_idx);
    }
  }
}

bool ReachabilityMap::reachable(Cell cell) const {
  const int base = static_cast<int>(map_->index(cell)) * world::kHeadingCount;
  for (int h = 0; h < world::kHeadingCount; ++h)
    if (state_cost_[base + h] >= 0) return true;
  return false;
}

int ReachabilityMap::cost_to(Cell cell) const {
  int best = -1;
  const int base = static_cast<int>(map_->index(cell)) * world::kHeadingCount;
  for (int h = 0; h < world::kHeadingCount; ++h) {
    const int c = state_cost_[base + h];
    if (c >= 0 && (best < 0 || c < best)) best = c;
  }
  if (best < 0) throw UnreachableError("cost_to: cell unreachable");
  return best;
}

}  // namespace beliefnav::plan

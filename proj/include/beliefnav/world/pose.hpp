#pragma once

#include "beliefnav/world/grid_map.hpp"

namespace beliefnav::world {

enum class Heading : int { north = 0, east = 1, south = 2, west = 3 };

enum class MotionPrimitive : int { move_forward = 0, turn_left = 1, turn_right = 2 };

inline constexpr int kHeadingCount = 4;

// Row/col deltas per heading; north decreases the row index.
constexpr int heading_drow(Heading h) {
  constexpr int d[4] = {-1, 0, 1, 0};
  return d[static_cast<int>(h)];
}
constexpr int heading_dcol(Heading h) {
  constexpr int d[4] = {0, 1, 0, -1};
  return d[static_cast<int>(h)];
}

constexpr Heading turned_left(Heading h) {
  return static_cast<Heading>((static_cast<int>(h) + 3) % 4);
}
constexpr Heading turned_right(Heading h) {
  return static_cast<Heading>((static_cast<int>(h) + 1) % 4);
}

struct Pose {
  Cell cell;
  Heading heading = Heading::north;
  auto operator<=>(const Pose&) const = default;
};

inline Cell step_toward(Cell c, Heading h) {
  return Cell{c.row + heading_drow(h), c.col + heading_dcol(h)};
}

// Turns rotate in place; a forward into an occupied or out-of-bounds cell is
// a lawful no-op (the primitive still counts as executed by the caller).
Pose apply_primitive(const GridMap& map, const Pose& pose, MotionPrimitive prim);

const char* to_string(Heading h);
const char* to_string(MotionPrimitive p);

}  // namespace beliefnav::world

#include "beliefnav/world/pose.hpp"

namespace beliefnav::world {

Pose apply_primitive(const GridMap& map, const Pose& pose, MotionPrimitive prim) {
  switch (prim) {
    case MotionPrimitive::turn_left:
      return Pose{pose.cell, turned_left(pose.heading)};
    case MotionPrimitive::turn_right:
      return Pose{pose.cell, turned_right(pose.heading)};
    case MotionPrimitive::move_forward: {
      const Cell next = step_toward(pose.cell, pose.heading);
      if (map.in_bounds(next) && map.is_free(next)) return Pose{next, pose.heading};
      return pose;
    }
  }
  return pose;
}

const char* to_string(Heading h) {
  switch (h) {
    case Heading::north: return "north";
    case Heading::east: return "east";
    case Heading::south: return "south";
    case Heading::west: return "west";
  }
  return "?";
}

const char* to_string(MotionPrimitive p) {
  switch (p) {
    case MotionPrimitive::move_forward: return "move_forward";
    case MotionPrimitive::turn_left: return "turn_left";
    case MotionPrimitive::turn_right: return "turn_right";
  }
  return "?";
}

}  // namespace beliefnav::world

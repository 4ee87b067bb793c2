#include "beliefnav/world/episode.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace beliefnav::world {

void EpisodeSpec::validate() const {
  if (map == nullptr) throw std::invalid_argument("EpisodeSpec: no map");
  if (!map->in_bounds(target_cell) || !map->is_occupied(target_cell))
    throw std::invalid_argument("EpisodeSpec: target_cell must be occupied");
  if (!map->in_bounds(start_pose.cell) || !map->is_free(start_pose.cell))
    throw std::invalid_argument("EpisodeSpec: start pose must be on a free cell");
  if (horizon < 1) throw std::invalid_argument("EpisodeSpec: horizon must be >= 1");
  if (!(confidence_threshold > 0.0 && confidence_threshold < 1.0))
    throw std::invalid_argument("EpisodeSpec: confidence threshold must be in (0,1)");
  bool target_placed = false;
  for (const auto& obj : objects) {
    if (!map->in_bounds(obj.cell) || !map->is_occupied(obj.cell))
      throw std::invalid_argument("EpisodeSpec: object on a non-occupied cell");
    if (obj.class_index == target_class && obj.cell == target_cell)
      target_placed = true;
  }
  if (!objects.empty() && !target_placed)
    throw std::invalid_argument("EpisodeSpec: target missing from object list");
}

const char* to_string(EpisodeStatus s) {
  switch (s) {
    case EpisodeStatus::running: return "running";
    case EpisodeStatus::success: return "success";
    case EpisodeStatus::horizon_exhausted: return "horizon_exhausted";
    case EpisodeStatus::false_declaration: return "false_declaration";
  }
  return "?";
}

EpisodeStatus episode_status_from_string(const std::string& s) {
  if (s == "running") return EpisodeStatus::running;
  if (s == "success") return EpisodeStatus::success;
  if (s == "horizon_exhausted") return EpisodeStatus::horizon_exhausted;
  if (s == "false_declaration") return EpisodeStatus::false_declaration;
  throw std::invalid_argument("unknown episode status: " + s);
}

void EpisodeState::advance(const GridMap& map, MotionPrimitive prim) {
  const Pose next = apply_primitive(map, pose, prim);
  ++primitives_executed;
  if (prim == MotionPrimitive::move_forward && next.cell != pose.cell)
    distance_traveled += map.cell_size();
  pose = next;
}

int horizon_for(const GridMap& map, double fraction) {
  if (fraction <= 0.0) throw std::invalid_argument("horizon_for: fraction must be > 0");
  const double t = std::floor(fraction * static_cast<double>(map.free_cells().size()));
  return std::max(1, static_cast<int>(t));
}

}  // namespace beliefnav::world

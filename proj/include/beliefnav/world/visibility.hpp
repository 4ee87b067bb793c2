#pragma once

#include <cmath>
#include <vector>

#include "beliefnav/world/pose.hpp"

namespace beliefnav::world {

inline constexpr int kDefaultMaxRangeCells = 10;
inline constexpr double kDefaultFovDeg = 90.0;

// True when the center of `cell` lies within the +-fov/2 wedge around the
// pose heading (the pose's own cell always passes). Inclusive at the wedge
// boundary.
inline bool cell_in_wedge(const Pose& pose, double fov_deg, Cell cell) {
  if (cell == pose.cell) return true;
  if (fov_deg >= 360.0) return true;
  const double dr = cell.row - pose.cell.row;
  const double dc = cell.col - pose.cell.col;
  const double dot = dr * heading_drow(pose.heading) + dc * heading_dcol(pose.heading);
  const double cos_half = std::cos(fov_deg * 0.5 * M_PI / 180.0);
  return dot >= cos_half * std::hypot(dr, dc) - 1e-12;
}

inline bool cell_in_range(Cell a, Cell b, int max_range) {
  const long long dr = a.row - b.row;
  const long long dc = a.col - b.col;
  return dr * dr + dc * dc <= static_cast<long long>(max_range) * max_range;
}

// Line of sight between cell centers. The sight line is blocked when any
// cell other than the endpoints whose closed unit square the closed segment
// touches (supercover, corner contacts included) is occupied. Exact integer
// arithmetic; symmetric in its endpoints.
bool line_of_sight(const GridMap& map, Cell from, Cell to);

// All cells (free and occupied) whose center is within `max_range` of the
// pose cell center, inside the field-of-view wedge, and in line of sight.
// Occupied cells terminate rays but are themselves visible. Row-major order.
std::vector<Cell> visible_cells(const GridMap& map, const Pose& pose,
                                double fov_deg = kDefaultFovDeg,
                                int max_range = kDefaultMaxRangeCells);

}  // namespace beliefnav::world

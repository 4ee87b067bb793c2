#include "beliefnav/world/visibility.hpp"

#include <cstdlib>
#include <stdexcept>

namespace beliefnav::world {

namespace {

// Marches the supercover of the segment between the centers of `from` and
// `to` in doubled coordinates (centers odd, cell boundaries even, so every
// crossing comparison is exact in integers). Calls visit(cell) for every
// touched cell except `from` itself; at an exact corner crossing both
// side-adjacent cells are touched. Returns false if visit() aborts the walk.
template <typename Visit>
bool walk_supercover(Cell from, Cell to, Visit&& visit) {
  const int dr = to.row - from.row;
  const int dc = to.col - from.col;
  const int sr = dr > 0 ? 1 : -1;
  const int sc = dc > 0 ? 1 : -1;
  const long long den_r = 2ll * std::abs(dr);  // doubled |direction|
  const long long den_c = 2ll * std::abs(dc);

  int r = from.row;
  int c = from.col;
  // Distance (in doubled units) from the start center to the next row/col
  // boundary along the walk; advances by 2 per cell step.
  long long num_r = 1;
  long long num_c = 1;

  while (r != to.row || c != to.col) {
    bool step_row;
    bool corner = false;
    if (dr == 0) {
      step_row = false;
    } else if (dc == 0) {
      step_row = true;
    } else {
      const long long lhs = num_r * den_c;  // t_row vs t_col cross-multiplied
      const long long rhs = num_c * den_r;
      if (lhs < rhs) {
        step_row = true;
      } else if (lhs > rhs) {
        step_row = false;
      } else {
        corner = true;
        step_row = false;
      }
    }
    if (corner) {
      if (!visit(Cell{r + sr, c})) return false;
      if (!visit(Cell{r, c + sc})) return false;
      r += sr;
      c += sc;
      num_r += 2;
      num_c += 2;
    } else if (step_row) {
      r += sr;
      num_r += 2;
    } else {
      c += sc;
      num_c += 2;
    }
    if (!visit(Cell{r, c})) return false;
  }
  return true;
}

}  // namespace

bool line_of_sight(const GridMap& map, Cell from, Cell to) {
  if (!map.in_bounds(from) || !map.in_bounds(to))
    throw std::invalid_argument("line_of_sight: cell out of bounds");
  if (from == to) return true;
  return walk_supercover(from, to, [&](Cell touched) {
    if (touched == to || touched == from) return true;
    return map.is_free(touched);
  });
}

std::vector<Cell> visible_cells(const GridMap& map, const Pose& pose,
                                double fov_deg, int max_range) {
  if (max_range < 1) throw std::invalid_argument("visible_cells: max_range < 1");
  if (!map.in_bounds(pose.cell) || !map.is_free(pose.cell))
    throw std::invalid_argument("visible_cells: pose cell not a free cell");

  std::vector<Cell> out;
  const int r0 = std::max(0, pose.cell.row - max_range);
  const int r1 = std::min(map.height() - 1, pose.cell.row + max_range);
  const int c0 = std::max(0, pose.cell.col - max_range);
  const int c1 = std::min(map.width() - 1, pose.cell.col + max_range);
  for (int r = r0; r <= r1; ++r) {
    for (int c = c0; c <= c1; ++c) {
      const Cell cell{r, c};
      if (!cell_in_range(cell, pose.cell, max_range)) continue;
      if (!cell_in_wedge(pose, fov_deg, cell)) continue;
      if (!line_of_sight(map, pose.cell, cell)) continue;
      out.push_back(cell);
    }
  }
  return out;
}

}  // namespace beliefnav::world

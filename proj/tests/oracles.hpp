// Independent reference implementations used to derive expected test values.
// Each oracle deliberately avoids the code path of the implementation it
// checks: visibility uses exact segment/square clipping instead of grid
// marching, path costs use a plain state-set BFS, and the fusion oracle is a
// direct transcription of the update formulas.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "beliefnav/common/rng.hpp"
#include "beliefnav/world/episode.hpp"
#include "beliefnav/world/visibility.hpp"

namespace oracles {

using beliefnav::Rng;
using beliefnav::world::Cell;
using beliefnav::world::GridMap;
using beliefnav::world::Heading;
using beliefnav::world::MotionPrimitive;
using beliefnav::world::Pose;

// ---------------------------------------------------------------- geometry

// Exact rational t-interval clipping of the segment between cell centers
// against a cell's closed unit square, in doubled integer coordinates
// (centers odd, square edges even). Touching at a single point counts.
inline bool segment_touches_square(Cell from, Cell to, Cell square) {
  const long long ar = 2ll * from.row + 1, ac = 2ll * from.col + 1;
  const long long dr = 2ll * (to.row - from.row), dc = 2ll * (to.col - from.col);

  // Interval [lo_num/ den, hi_num/den] with den > 0; start with t in [0,1].
  long long lo_n = 0, lo_d = 1, hi_n = 1, hi_d = 1;
  const auto tighten_lo = [&](long long n, long long d) {  // lo = max(lo, n/d)
    if (n * lo_d > lo_n * d) { lo_n = n; lo_d = d; }
  };
  const auto tighten_hi = [&](long long n, long long d) {
    if (n * hi_d < hi_n * d) { hi_n = n; hi_d = d; }
  };
  const auto clip_axis = [&](long long a, long long delta, long long b0,
                             long long b1) {
    if (delta == 0) return a >= b0 && a <= b1;
    long long n0 = b0 - a, n1 = b1 - a, d = delta;
    if (d < 0) { n0 = -n0; n1 = -n1; d = -d; }
    tighten_lo(std::min(n0, n1), d);
    tighten_hi(std::max(n0, n1), d);
    return true;
  };
  if (!clip_axis(ar, dr, 2ll * square.row, 2ll * square.row + 2)) return false;
  if (!clip_axis(ac, dc, 2ll * square.col, 2ll * square.col + 2)) return false;
  return lo_n * hi_d <= hi_n * lo_d;  // closed interval nonempty
}

inline bool oracle_line_of_sight(const GridMap& map, Cell from, Cell to) {
  for (const Cell& occ : map.occupied_cells()) {
    if (occ == from || occ == to) continue;
    if (segment_touches_square(from, to, occ)) return false;
  }
  return true;
}

inline std::vector<Cell> oracle_visible_cells(const GridMap& map, const Pose& pose,
                                              double fov_deg, int max_range) {
  std::vector<Cell> out;
  for (int r = 0; r < map.height(); ++r)
    for (int c = 0; c < map.width(); ++c) {
      const Cell cell{r, c};
      if (!beliefnav::world::cell_in_range(cell, pose.cell, max_range)) continue;
      if (!beliefnav::world::cell_in_wedge(pose, fov_deg, cell)) continue;
      if (!oracle_line_of_sight(map, pose.cell, cell)) continue;
      out.push_back(cell);
    }
  return out;
}

// ------------------------------------------------------------ path metric

// Layered frontier BFS over (cell, heading) states; returns -1 when the goal
// cell is unreachable.
inline int oracle_path_cost(const GridMap& map, const Pose& start, Cell goal) {
  if (start.cell == goal) return 0;
  std::set<std::pair<int, int>> seen;  // (cell index, heading)
  std::vector<Pose> frontier{start};
  seen.insert({static_cast<int>(map.index(start.cell)), static_cast<int>(start.heading)});
  int depth = 0;
  while (!frontier.empty()) {
    ++depth;
    std::vector<Pose> next_frontier;
    for (const Pose& pose : frontier) {
      for (int a = 0; a < 3; ++a) {
        const Pose next = beliefnav::world::apply_primitive(
            map, pose, static_cast<MotionPrimitive>(a));
        if (next == pose) continue;  // blocked forward
        const auto key = std::make_pair(static_cast<int>(map.index(next.cell)),
                                        static_cast<int>(next.heading));
        if (!seen.insert(key).second) continue;
        if (next.cell == goal) return depth;
        next_frontier.push_back(next);
      }
    }
    frontier = std::move(next_frontier);
  }
  return -1;
}

// ------------------------------------------------------------ belief math

// Direct transcription of the evidence and fusion formulas.
inline std::vector<double> oracle_positive_evidence(const std::vector<double>& p) {
  const int k = static_cast<int>(p.size());
  std::vector<double> o(k + 1);
  for (int i = 0; i < k; ++i) o[i] = p[i] * k / (k + 1.0);
  o[k] = 1.0 / (k + 1.0);
  return o;
}

inline std::vector<double> oracle_background_evidence(double rho, double eta,
                                                      double lambda, int k) {
  std::vector<double> o(k + 1);
  o[k] = (1.0 - eta) / (1.0 + lambda * rho);
  for (int i = 0; i < k; ++i) o[i] = (1.0 - o[k]) / k;
  return o;
}

inline std::vector<double> oracle_kaplan(const std::vector<double>& beta,
                                         const std::vector<double>& o) {
  double s = 0.0;
  for (std::size_t j = 0; j < beta.size(); ++j) s += beta[j] * o[j];
  const double o_min = *std::min_element(o.begin(), o.end());
  std::vector<double> out(beta.size());
  for (std::size_t i = 0; i < beta.size(); ++i)
    out[i] = beta[i] * (s + o[i]) / (s + o_min);
  return out;
}

inline double oracle_posterior(const std::vector<double>& beta, int k) {
  double sum = 0.0;
  for (double b : beta) sum += b;
  return beta[k] / sum;
}

// ----------------------------------------------------------------- helpers

// Random test map with guaranteed free and occupied cells.
inline GridMap random_map(Rng& rng, int width, int height, double density) {
  std::vector<std::uint8_t> occupied(static_cast<std::size_t>(width) * height, 0);
  for (auto& cell : occupied) cell = rng.uniform() < density ? 1 : 0;
  occupied[rng.uniform_index(occupied.size())] = 0;
  occupied[rng.uniform_index(occupied.size())] = 1;
  bool has_free = false;
  for (auto cell : occupied) has_free |= cell == 0;
  if (!has_free) occupied[0] = 0;
  return GridMap(width, height, 0.30, std::move(occupied));
}

inline Pose random_free_pose(Rng& rng, const GridMap& map) {
  const auto& free = map.free_cells();
  return Pose{free[rng.uniform_index(free.size())],
              static_cast<Heading>(rng.uniform_below(4))};
}

}  // namespace oracles

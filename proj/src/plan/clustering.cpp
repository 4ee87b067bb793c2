#include "beliefnav/plan/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace beliefnav::plan {

using world::Cell;

namespace {

double sq_dist(double r0, double c0, double r1, double c1) {
  const double dr = r0 - r1;
  const double dc = c0 - c1;
  return dr * dr + dc * dc;
}

}  // namespace

std::vector<std::size_t> ClusterPartition::cluster_sizes() const {
  std::vector<std::size_t> sizes(k, 0);
  for (int id : assignment) ++sizes[id];
  return sizes;
}

ClusterPartition cluster_free_space(const world::GridMap& map, int k,
                                    std::uint64_t seed) {
  const auto& free = map.free_cells();
  const std::size_t n = free.size();
  if (k < 1 || static_cast<std::size_t>(k) > n)
    throw std::invalid_argument("cluster_free_space: k out of range [1, |F|]");

  // Farthest-point seeding, first center picked by the seed.
  std::vector<double> center_r(k), center_c(k);
  {
    const std::size_t first = seed % n;
    center_r[0] = free[first].row;
    center_c[0] = free[first].col;
    std::vector<double> min_d2(n, std::numeric_limits<double>::infinity());
    for (int m = 1; m < k; ++m) {
      std::size_t far_idx = 0;
      double far_d2 = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        min_d2[i] = std::min(min_d2[i], sq_dist(free[i].row, free[i].col,
                                                center_r[m - 1], center_c[m - 1]));
        if (min_d2[i] > far_d2) {  // strict > keeps lexicographic ties
          far_d2 = min_d2[i];
          far_idx = i;
        }
      }
      center_r[m] = free[far_idx].row;
      center_c[m] = free[far_idx].col;
    }
  }

  std::vector<int> assignment(n, 0);
  std::vector<int> previous(n, -1);
  for (int round = 0; round < 100; ++round) {
    // Assign to the nearest center; ties go to the lower cluster id.
    for (std::size_t i = 0; i < n; ++i) {
      int best = 0;
      double best_d2 = std::numeric_limits<double>::infinity();
      for (int m = 0; m < k; ++m) {
        const double d2 = sq_dist(free[i].row, free[i].col, center_r[m], center_c[m]);
        if (d2 < best_d2) {
          best_d2 = d2;
          best = m;
        }
      }
      assignment[i] = best;
    }

    // Re-seed any emptied cluster on the cell farthest from its own center.
    std::vector<std::size_t> sizes(k, 0);
    for (int id : assignment) ++sizes[id];
    for (int m = 0; m < k; ++m) {
      if (sizes[m] > 0) continue;
      std::size_t far_idx = 0;
      double far_d2 = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (sizes[assignment[i]] <= 1) continue;  // keep donors non-empty
        const double d2 = sq_dist(free[i].row, free[i].col,
                                  center_r[assignment[i]], center_c[assignment[i]]);
        if (d2 > far_d2) {
          far_d2 = d2;
          far_idx = i;
        }
      }
      --sizes[assignment[far_idx]];
      assignment[far_idx] = m;
      sizes[m] = 1;
    }

    if (assignment == previous) break;
    previous = assignment;

    // Coordinate means.
    std::vector<double> sum_r(k, 0.0), sum_c(k, 0.0);
    std::vector<std::size_t> count(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      sum_r[assignment[i]] += free[i].row;
      sum_c[assignment[i]] += free[i].col;
      ++count[assignment[i]];
    }
    for (int m = 0; m < k; ++m) {
      center_r[m] = sum_r[m] / count[m];
      center_c[m] = sum_c[m] / count[m];
    }
  }

  // Medoid snap: the cluster's own free cell nearest the coordinate mean.
  std::vector<double> sum_r(k, 0.0), sum_c(k, 0.0);
  std::vector<std::size_t> count(k, 0);
  for (std::size_t i = 0; i < n; ++i) {
    sum_r[assignment[i]] += free[i].row;
    sum_c[assignment[i]] += free[i].col;
    ++count[assignment[i]];
  }
  std::vector<Cell> centroids(k);
  std::vector<double> best_d2(k, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    const int m = assignment[i];
    const double d2 =
        sq_dist(free[i].row, free[i].col, sum_r[m] / count[m], sum_c[m] / count[m]);
    if (d2 < best_d2[m]) {
      best_d2[m] = d2;
      centroids[m] = free[i];
    }
  }

  ClusterPartition partition;
  partition.k = k;
  partition.assignment = std::move(assignment);
  partition.centroids = std::move(centroids);
  return partition;
}

int cluster_count_for_level(int level, int k0, std::size_t free_count) {
  if (k0 < 1) throw std::invalid_argument("cluster_count_for_level: k0 must be >= 1");
  if (level < 0) throw std::invalid_argument("cluster_count_for_level: level must be >= 0");
  std::size_t k = std::min<std::size_t>(k0, free_count);
  for (int l = 0; l < level && k < free_count; ++l)
    k = std::min(k * 2, free_count);
  return static_cast<int>(k);
}

RefinementSchedule RefinementSchedule::initial(const world::GridMap& map, int k0,
                                               std::uint64_t seed) {
  RefinementSchedule s;
  s.k0 = k0;
  s.level = 0;
  s.seed = seed;
  s.partition =
      cluster_free_space(map, cluster_count_for_level(0, k0, map.free_cells().size()), seed);
  s.partition.level = 0;
  s.visited.assign(s.partition.k, 0);
  return s;
}

bool RefinementSchedule::all_visited() const {
  return std::all_of(visited.begin(), visited.end(), [](auto v) { return v != 0; });
}

std::vector<int> RefinementSchedule::admissible_clusters() const {
  std::vector<int> out;
  for (int m = 0; m < partition.k; ++m)
    if (!visited[m]) out.push_back(m);
  return out;
}

std::vector<Cell> RefinementSchedule::admissible_centroids() const {
  std::vector<Cell> out;
  for (int m : admissible_clusters()) out.push_back(partition.centroids[m]);
  return out;
}

void RefinementSchedule::mark_visited(Cell centroid) {
  for (int m = 0; m < partition.k; ++m) {
    if (partition.centroids[m] == centroid) {
      visited[m] = 1;
      return;
    }
  }
  throw std::logic_error("mark_visited: cell is not a centroid of the current level");
}

const ClusterPartition& PartitionCache::get(const world::GridMap& map, int k,
                                            std::uint64_t seed) {
  if (map_ == nullptr) {
    map_ = &map;
    seed_ = seed;
  } else if (map_ != &map || seed_ != seed) {
    throw std::logic_error("PartitionCache: bound to a different (map, seed)");
  }
  auto it = by_k_.find(k);
  if (it == by_k_.end())
    it = by_k_.emplace(k, cluster_free_space(map, k, seed)).first;
  return it->second;
}

RefinementSchedule refine(const RefinementSchedule& schedule,
                          const world::GridMap& map, PartitionCache* cache) {
  if (!schedule.all_visited())
    throw std::logic_error("refine: called before all centroids were visited");
  RefinementSchedule next;
  next.k0 = schedule.k0;
  next.level = schedule.level + 1;
  next.seed = schedule.seed;
  const int k =
      cluster_count_for_level(next.level, next.k0, map.free_cells().size());
  next.partition = cache ? cache->get(map, k, next.seed)
                         : cluster_free_space(map, k, next.seed);
  next.partition.level = next.level;
  next.visited.assign(k, 0);
  return next;
}

std::string partition_grid_dump(const world::GridMap& map,
                                const ClusterPartition& partition) {
  std::vector<int> id_of_cell(map.cell_count(), -1);
  const auto& free = map.free_cells();
  for (std::size_t i = 0; i < free.size(); ++i)
    id_of_cell[map.index(free[i])] = partition.assignment[i];

  std::ostringstream out;
  for (int r = 0; r < map.height(); ++r) {
    for (int c = 0; c < map.width(); ++c) {
      if (c) out << ' ';
      const int id = id_of_cell[map.index({r, c})];
      if (id < 0)
        out << '.';
      else
        out << id;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace beliefnav::plan

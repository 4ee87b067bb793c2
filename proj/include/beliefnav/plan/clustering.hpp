#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "beliefnav/world/grid_map.hpp"

namespace beliefnav::plan {

// Partition of the free cells into k spatial clusters, each represented by a
// centroid free cell used as a candidate viewpoint.
struct ClusterPartition {
  int level = 0;  // refinement index the partition was built for
  int k = 0;
  std::vector<int> assignment;        // per free-cell index (map.free_cells() order)
  std::vector<world::Cell> centroids; // per cluster id

  int cluster_of_free_index(std::size_t free_index) const {
    return assignment[free_index];
  }
  std::vector<std::size_t> cluster_sizes() const;
};

// Deterministic k-means over free-cell centers: farthest-point seeding from
// the seed-selected start cell, Lloyd iterations to an assignment fixpoint
// (or 100 rounds), then a medoid snap of each centroid onto the cluster's
// free cell nearest the coordinate mean. All ties break lexicographically.
ClusterPartition cluster_free_space(const world::GridMap& map, int k,
                                    std::uint64_t seed);

// k_l = min(2^l * k0, |F|)
int cluster_count_for_level(int level, int k0, std::size_t free_count);

// Progressive-refinement bookkeeping: the current partition plus the set of
// centroids already visited at this level.
struct RefinementSchedule {
  int k0 = 4;
  int level = 0;
  std::uint64_t seed = 0;
  ClusterPartition partition;
  std::vector<std::uint8_t> visited;  // per cluster id

  static RefinementSchedule initial(const world::GridMap& map, int k0,
                                    std::uint64_t seed);

  bool all_visited() const;
  std::vector<int> admissible_clusters() const;  // unvisited, ascending id
  std::vector<world::Cell> admissible_centroids() const;
  void mark_visited(world::Cell centroid);  // throws if not a current centroid
};

// Memoizes partitions per cluster count; valid for one (map, seed) pair.
class PartitionCache {
 public:
  const ClusterPartition& get(const world::GridMap& map, int k, std::uint64_t seed);

 private:
  const world::GridMap* map_ = nullptr;
  std::uint64_t seed_ = 0;
  std::map<int, ClusterPartition> by_k_;
};

// Doubles the cluster count (clamped at |F|), clears the visited set, and
// re-clusters. Calling before every centroid is visited is a contract error.
RefinementSchedule refine(const RefinementSchedule& schedule,
                          const world::GridMap& map,
                          PartitionCache* cache = nullptr);

// Per-free-cell cluster-id grid dump ('.' for occupied cells), one row per
// map row, ids separated by spaces.
std::string partition_grid_dump(const world::GridMap& map,
                                const ClusterPartition& partition);

}  // namespace beliefnav::plan

#pragma once

#include <span>

#include "beliefnav/belief/belief_map.hpp"
#include "beliefnav/common/rng.hpp"
#include "beliefnav/plan/clustering.hpp"
#include "beliefnav/plan/pathfinding.hpp"

namespace beliefnav::policies {

// Utility weights of the belief-utility baseline.
struct UtilityWeights {
  double w_entropy = 0.4;    // w_H
  double w_distance = 0.5;   // w_d
  double w_posterior = 0.1;  // w_p
};

// Per-admissible-cluster aggregates feeding the utility.
struct ClusterStats {
  int cluster = -1;
  world::Cell centroid;
  double mean_entropy = 0.0;          // H-bar, mean per-cell normalized entropy
  double max_target_posterior = 0.0;  // p-bar, max-normalized over the set
  double motion_cost = 0.0;           // d-bar, max-normalized over the set
};

// Random-walk search: uniform over the three primitives.
world::MotionPrimitive rws_step(Rng& rng);

// Progressive cluster sweep: the unvisited centroid with the smallest
// primitive cost from the pose; ties break lexicographically by cell.
world::Cell pcss_next(const plan::ClusterPartition& partition,
                      const plan::RefinementSchedule& schedule,
                      const world::Pose& pose, const world::GridMap& map);

// Aggregates belief over the admissible clusters. Occupied cells are
// attributed to the cluster of their nearest free cell (ties lexicographic);
// posterior and motion-cost columns are normalized by their maxima over the
// admissible set, with empty aggregates reading 0.
std::vector<ClusterStats> cluster_stats(const belief::BeliefMap& belief,
                                        const plan::ClusterPartition& partition,
                                        std::span<const int> admissible,
                                        const world::Pose& pose, int target_class,
                                        const world::GridMap& map);

// Belief-utility maximization: argmax of
//   w_H * H-bar + w_d * (1 - d-bar) + w_p * p-bar
// over the admissible clusters; ties break lexicographically by centroid.
world::Cell bbums_next(std::span<const ClusterStats> stats,
                       const UtilityWeights& weights);

}  // namespace beliefnav::policies

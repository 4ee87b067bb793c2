#include "beliefnav/policies/baselines.hpp"

#include <limits>
#include <stdexcept>

namespace beliefnav::policies {

using world::Cell;

world::MotionPrimitive rws_step(Rng& rng) {
  return static_cast<world::MotionPrimitive>(rng.uniform_below(3));
}

Cell pcss_next(const plan::ClusterPartition& partition,
               const plan::RefinementSchedule& schedule, const world::Pose& pose,
               const world::GridMap& map) {
  const auto admissible = schedule.admissible_clusters();
  if (admissible.empty())
    throw std::logic_error("pcss_next: no unvisited centroid (caller must refine)");

  const plan::ReachabilityMap costs(map, pose);
  Cell best{};
  int best_cost = -1;
  for (int m : admissible) {
    const Cell centroid = partition.centroids[m];
    const int cost = costs.cost_to(centroid);
    if (best_cost < 0 || cost < best_cost ||
        (cost == best_cost && centroid < best)) {
      best_cost = cost;
      best = centroid;
    }
  }
  return best;
}

std::vector<ClusterStats> cluster_stats(const belief::BeliefMap& belief,
                                        const plan::ClusterPartition& partition,
                                        std::span<const int> admissible,
                                        const world::Pose& pose, int target_class,
                                        const world::GridMap& map) {
  if (&belief.map() != &map)
    throw std::invalid_argument("cluster_stats: belief bound to a different map");

  // Attribute every occupied cell to the cluster of its nearest free cell.
  const auto& free = map.free_cells();
  std::vector<int> cluster_of_occ;
  cluster_of_occ.reserve(map.occupied_cells().size());
  for (const Cell& occ : map.occupied_cells()) {
    std::size_t best_i = 0;
    long long best_d2 = std::numeric_limits<long long>::max();
    for (std::size_t i = 0; i < free.size(); ++i) {  // row-major scan; strict <
      const long long dr = free[i].row - occ.row;    // keeps lexicographic ties
      const long long dc = free[i].col - occ.col;
      const long long d2 = dr * dr + dc * dc;
      if (d2 < best_d2) {
        best_d2 = d2;
        best_i = i;
      }
    }
    cluster_of_occ.push_back(partition.assignment[best_i]);
  }

  std::vector<double> entropy_sum(partition.k, 0.0);
  std::vector<std::size_t> occ_count(partition.k, 0);
  std::vector<double> peak_posterior(partition.k, 0.0);
  const auto& occ_cells = map.occupied_cells();
  for (std::size_t i = 0; i < occ_cells.size(); ++i) {
    const int m = cluster_of_occ[i];
    entropy_sum[m] += belief.entropy_at(occ_cells[i]);
    ++occ_count[m];
    peak_posterior[m] =
        std::max(peak_posterior[m], belief.target_posterior_at(occ_cells[i], target_class));
  }

  const plan::ReachabilityMap costs(map, pose);
  std::vector<ClusterStats> stats;
  stats.reserve(admissible.size());
  double max_p = 0.0;
  double max_d = 0.0;
  for (int m : admissible) {
    ClusterStats s;
    s.cluster = m;
    s.centroid = partition.centroids[m];
    s.mean_entropy = occ_count[m] ? entropy_sum[m] / occ_count[m] : 0.0;
    s.max_target_posterior = peak_posterior[m];
    s.motion_cost = costs.cost_to(s.centroid);
    max_p = std::max(max_p, s.max_target_posterior);
    max_d = std::max(max_d, s.motion_cost);
    stats.push_back(s);
  }
  for (auto& s : stats) {
    s.max_target_posterior = max_p > 0.0 ? s.max_target_posterior / max_p : 0.0;
    s.motion_cost = max_d > 0.0 ? s.motion_cost / max_d : 0.0;
  }
  return stats;
}

Cell bbums_next(std::span<const ClusterStats> stats, const UtilityWeights& weights) {
  if (stats.empty()) throw std::invalid_argument("bbums_next: no clusters");
  const ClusterStats* best = nullptr;
  double best_utility = -std::numeric_limits<double>::infinity();
  for (const auto& s : stats) {
    const double utility = weights.w_entropy * s.mean_entropy +
                           weights.w_distance * (1.0 - s.motion_cost) +
                           weights.w_posterior * s.max_target_posterior;
    if (best == nullptr || utility > best_utility ||
        (utility == best_utility && s.centroid < best->centroid)) {
      best = &s;
      best_utility = utility;
    }
  }
  return best->centroid;
}

}  // namespace beliefnav::policies

#include <doctest.h>

#include <numeric>

#include "beliefnav/plan/clustering.hpp"
#include "beliefnav/plan/pathfinding.hpp"
#include "oracles.hpp"

using namespace beliefnav;
using namespace beliefnav::plan;
using beliefnav::world::Cell;
using beliefnav::world::Heading;
using beliefnav::world::Pose;

TEST_CASE("cluster_free_space saturates at k = |F|") {
  const auto map = world::load_map("..#\n...\n.#.\n");
  const auto n = map.free_cells().size();
  const auto partition = cluster_free_space(map, static_cast<int>(n), 3);
  CHECK(partition.k == static_cast<int>(n));
  std::set<int> ids(partition.assignment.begin(), partition.assignment.end());
  CHECK(ids.size() == n);  // every free cell is its own cluster
  for (std::size_t i = 0; i < n; ++i)
    CHECK(partition.centroids[partition.assignment[i]] == map.free_cells()[i]);
}

TEST_CASE("k = 1 centroid is the brute-force medoid") {
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const auto map = oracles::random_map(rng, 8, 8, 0.3);
    const auto partition = cluster_free_space(map, 1, trial);
    // argmin over free cells of summed squared distance to all free cells
    Cell best{};
    double best_cost = std::numeric_limits<double>::infinity();
    for (const auto& candidate : map.free_cells()) {
      double cost = 0.0;
      for (const auto& other : map.free_cells()) {
        const double dr = candidate.row - other.row;
        const double dc = candidate.col - other.col;
        cost += dr * dr + dc * dc;
      }
      if (cost < best_cost) {
        best_cost = cost;
        best = candidate;
      }
    }
    CHECK(partition.centroids.at(0) == best);
  }
}

TEST_CASE("two disjoint free blocks split into one cluster each") {
  // two 3x3 free blocks separated by a wall column
  const auto map = world::load_map(
      "...#...\n"
      "...#...\n"
      "...#...\n");
  const auto partition = cluster_free_space(map, 2, 9);
  const auto& free = map.free_cells();
  std::set<int> left_ids, right_ids;
  for (std::size_t i = 0; i < free.size(); ++i)
    (free[i].col < 3 ? left_ids : right_ids).insert(partition.assignment[i]);
  CHECK(left_ids.size() == 1);
  CHECK(right_ids.size() == 1);
  CHECK(*left_ids.begin() != *right_ids.begin());

  // exhaustive 2-partition check: the block split minimizes k-means cost
  const std::size_t n = free.size();
  REQUIRE(n == 18);
  const auto partition_cost = [&](unsigned mask) {
    double cost = 0.0;
    for (int side = 0; side < 2; ++side) {
      double sr = 0.0, sc = 0.0;
      int count = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (((mask >> i) & 1u) == static_cast<unsigned>(side)) {
          sr += free[i].row;
          sc += free[i].col;
          ++count;
        }
      if (count == 0) return std::numeric_limits<double>::infinity();
      sr /= count;
      sc /= count;
      for (std::size_t i = 0; i < n; ++i)
        if (((mask >> i) & 1u) == static_cast<unsigned>(side)) {
          const double dr = free[i].row - sr;
          const double dc = free[i].col - sc;
          cost += dr * dr + dc * dc;
        }
    }
    return cost;
  };
  unsigned best_mask = 1;
  double best = std::numeric_limits<double>::infinity();
  for (unsigned mask = 1; mask < (1u << n) - 1; ++mask) {
    const double cost = partition_cost(mask);
    if (cost < best) {
      best = cost;
      best_mask = mask;
    }
  }
  // the optimal 2-partition is exactly the left/right block split
  for (std::size_t i = 0; i < n; ++i) {
    const bool left_in_best = ((best_mask >> i) & 1u) == ((best_mask >> 0) & 1u);
    CHECK(left_in_best == (free[i].col < 3));
  }
}

TEST_CASE("identical (map, k, seed) triples give identical partitions") {
  Rng rng(5);
  const auto map = oracles::random_map(rng, 12, 12, 0.25);
  const auto a = cluster_free_space(map, 5, 42);
  const auto b = cluster_free_space(map, 5, 42);
  CHECK(a.assignment == b.assignment);
  CHECK(a.centroids == b.centroids);
}

TEST_CASE("partitions cover free space exactly once, centroids in own cluster") {
  Rng rng(6);
  for (int trial = 0; trial < 25; ++trial) {
    const auto map = oracles::random_map(rng, 10, 10, 0.3);
    const int n = static_cast<int>(map.free_cells().size());
    const int k = 1 + static_cast<int>(rng.uniform_below(std::min(n, 9)));
    const auto partition = cluster_free_space(map, k, trial);
    CHECK(static_cast<int>(partition.assignment.size()) == n);
    const auto sizes = partition.cluster_sizes();
    CHECK(std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}) ==
          static_cast<std::size_t>(n));
    for (auto size : sizes) CHECK(size >= 1);
    for (int m = 0; m < k; ++m) {
      const auto& free = map.free_cells();
      const auto it = std::find(free.begin(), free.end(), partition.centroids[m]);
      REQUIRE(it != free.end());
      CHECK(partition.assignment[it - free.begin()] == m);
    }
    CHECK_THROWS_AS(cluster_free_space(map, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(cluster_free_space(map, n + 1, 1), std::invalid_argument);
  }
}

TEST_CASE("cluster_count_for_level follows min(2^l k0, |F|)") {
  CHECK(cluster_count_for_level(2, 4, 100) == 16);
  CHECK(cluster_count_for_level(6, 4, 100) == 100);  // clamp
  CHECK(cluster_count_for_level(0, 4, 100) == 4);
  CHECK(cluster_count_for_level(0, 7, 5) == 5);
  CHECK(cluster_count_for_level(40, 3, 1000) == 1000);  // no overflow

  Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const auto map = oracles::random_map(rng, 9, 9, 0.3);
    const std::size_t f = map.free_cells().size();
    const int k0 = 1 + static_cast<int>(rng.uniform_below(4));
    int prev = 0;
    for (int level = 0; level < 12; ++level) {
      const int k = cluster_count_for_level(level, k0, f);
      const double unclamped = std::pow(2.0, level) * k0;
      CHECK(k == static_cast<int>(std::min<double>(unclamped, f)));
      CHECK(k >= prev);
      prev = k;
    }
  }
}

TEST_CASE("refine requires exhaustion, then doubles and re-clusters") {
  Rng rng(14);
  const auto map = oracles::random_map(rng, 10, 10, 0.2);
  auto schedule = RefinementSchedule::initial(map, 3, 77);
  CHECK(schedule.level == 0);
  CHECK(schedule.partition.k == 3);
  CHECK(schedule.admissible_clusters().size() == 3);

  CHECK_THROWS_AS(refine(schedule, map), std::logic_error);

  for (const auto& centroid : schedule.partition.centroids)
    schedule.mark_visited(centroid);
  CHECK(schedule.all_visited());
  CHECK(schedule.admissible_clusters().empty());

  const auto next = refine(schedule, map);
  CHECK(next.level == 1);
  CHECK(next.partition.k ==
        cluster_count_for_level(1, 3, map.free_cells().size()));
  CHECK(next.admissible_clusters().size() == static_cast<std::size_t>(next.partition.k));

  CHECK_THROWS_AS(schedule.mark_visited(Cell{-1, -1}), std::logic_error);
}

TEST_CASE("partition cache returns the same partitions as direct clustering") {
  Rng rng(15);
  const auto map = oracles::random_map(rng, 10, 10, 0.2);
  PartitionCache cache;
  auto schedule = RefinementSchedule::initial(map, 2, 5);
  for (int round = 0; round < 3; ++round) {
    for (const auto& centroid : schedule.partition.centroids)
      schedule.mark_visited(centroid);
    const auto direct = refine(schedule, map);
    const auto cached = refine(schedule, map, &cache);
    CHECK(direct.partition.assignment == cached.partition.assignment);
    CHECK(direct.partition.centroids == cached.partition.centroids);
    schedule = cached;
  }
}

TEST_CASE("shortest_path hand cases") {
  const auto corridor = world::load_map("......\n######\n");
  // already at the goal
  const auto stay = shortest_path(corridor, {{0, 2}, Heading::south}, {0, 2});
  CHECK(stay.cost() == 0);
  CHECK(stay.primitives.empty());

  // straight ahead
  const auto ahead = shortest_path(corridor, {{0, 0}, Heading::east}, {0, 3});
  CHECK(ahead.cost() == 3);
  for (const auto prim : ahead.primitives)
    CHECK(prim == world::MotionPrimitive::move_forward);

  // directly behind: two turns plus three forwards
  const auto behind = shortest_path(corridor, {{0, 3}, Heading::east}, {0, 0});
  CHECK(behind.cost() == 5);
}

TEST_CASE("shortest_path throws on unreachable goals") {
  const auto map = world::load_map(".#.\n###\n");
  CHECK_THROWS_AS(shortest_path(map, {{0, 0}, Heading::east}, {0, 2}),
                  UnreachableError);
  CHECK_THROWS_AS(shortest_path(map, {{0, 0}, Heading::east}, {1, 1}),
                  std::invalid_argument);  // goal not free
}

TEST_CASE("shortest_path matches the BFS oracle and replays cleanly") {
  Rng rng(2025);
  int checked = 0;
  for (int m = 0; m < 100; ++m) {
    const auto map = oracles::random_map(rng, 20, 20, 0.3);
    for (int pair = 0; pair < 10; ++pair) {
      const Pose start = oracles::random_free_pose(rng, map);
      const Cell goal =
          map.free_cells()[rng.uniform_index(map.free_cells().size())];
      const int expected = oracles::oracle_path_cost(map, start, goal);
      if (expected < 0) {
        CHECK_THROWS_AS(shortest_path(map, start, goal), UnreachableError);
        continue;
      }
      const auto path = shortest_path(map, start, goal);
      CHECK(path.cost() == expected);

      // replay: every forward must be effective and the goal must be reached
      Pose pose = start;
      for (const auto prim : path.primitives) {
        const Pose next = world::apply_primitive(map, pose, prim);
        CHECK(next != pose);
        pose = next;
      }
      CHECK(pose.cell == goal);
      CHECK(pose == path.end_pose);
      ++checked;
    }
  }
  CHECK(checked > 500);
}

TEST_CASE("ReachabilityMap agrees with shortest_path") {
  Rng rng(31337);
  for (int m = 0; m < 10; ++m) {
    const auto map = oracles::random_map(rng, 15, 15, 0.3);
    const Pose start = oracles::random_free_pose(rng, map);
    const ReachabilityMap costs(map, start);
    for (int pair = 0; pair < 20; ++pair) {
      const Cell goal =
          map.free_cells()[rng.uniform_index(map.free_cells().size())];
      if (!costs.reachable(goal)) {
        CHECK_THROWS_AS(shortest_path(map, start, goal), UnreachableError);
        continue;
      }
      CHECK(costs.cost_to(goal) == shortest_path(map, start, goal).cost());
    }
  }
}

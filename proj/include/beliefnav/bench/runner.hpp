#pragma once

#include "beliefnav/bench/metrics.hpp"
#include "beliefnav/bench/scenario.hpp"
#include "beliefnav/bench/search_env.hpp"

namespace beliefnav::bench {

// Runs one evaluation episode of `method` from a fixed start pose and
// per-episode seed. All methods share the world, detector, belief engine,
// and termination rule; bbdps additionally needs a trained network and
// greedily follows its masked Q-map.
RunRecord run_episode(Method method, const ScenarioSpec& scenario,
                      const world::Placement& eval_target,
                      const world::Pose& start_pose, int episode_index,
                      std::uint64_t base_seed, const rl::QNetwork* net,
                      plan::PartitionCache* cache = nullptr,
                      std::function<void(const SearchEnv&)> step_hook = {});

// The fixed-suite evaluation protocol: every method sees the same
// (start pose, seed) pair per episode index.
std::vector<RunRecord> run_suite(Method method, const ScenarioSpec& scenario,
                                 std::uint64_t base_seed, int episodes,
                                 const rl::QNetwork* net);

}  // namespace beliefnav::bench

#pragma once

#include <functional>
#include <optional>

#include "beliefnav/belief/belief_map.hpp"
#include "beliefnav/plan/clustering.hpp"
#include "beliefnav/plan/pathfinding.hpp"

namespace beliefnav::bench {

// Single-episode executor shared by every method: owns the belief, the
// episode accumulators, the refinement schedule, and the per-episode RNG.
// The robot observes at the start pose and after every primitive.
class SearchEnv {
 public:
  SearchEnv(const percept::DetectorModel& detector,
            const percept::CalibrationConfig& calibration,
            plan::PartitionCache* cache = nullptr);

  void reset(const world::EpisodeSpec& spec, int k0, std::uint64_t scheduler_seed);

  const world::GridMap& map() const { return *spec_.map; }
  const world::EpisodeSpec& spec() const { return spec_; }
  const belief::BeliefMap& belief() const { return *belief_; }
  const world::EpisodeState& episode() const { return state_; }
  world::EpisodeStatus status() const { return state_.status; }
  const world::Pose& pose() const { return state_.pose; }
  Rng& rng() { return rng_; }

  const plan::RefinementSchedule& schedule() const { return schedule_; }
  // Refines (doubling the cluster count) when every centroid of the current
  // level has been visited, so a decision always has an admissible goal.
  void ensure_admissible();

  // Senses at the current pose, fuses the frame, and re-checks termination.
  void observe();

  // Executes one primitive (counts even when blocked), then observes.
  // Sets horizon_exhausted when the budget runs out without a declaration.
  void step_primitive(world::MotionPrimitive prim);

  struct Segment {
    int primitives = 0;
    bool reached_goal = false;
  };

  // Plans a shortest path to `goal` and traverses it, observing after every
  // primitive; stops early on termination. Arrival marks the centroid
  // visited.
  Segment go_to(world::Cell goal);

  // Invoked after every observation; used by replay to dump belief traces.
  void set_step_hook(std::function<void(const SearchEnv&)> hook) {
    step_hook_ = std::move(hook);
  }

 private:
  std::function<void(const SearchEnv&)> step_hook_;

  percept::DetectorModel detector_;
  percept::CalibrationConfig calibration_;
  plan::PartitionCache* cache_;

  world::EpisodeSpec spec_;
  std::optional<belief::BeliefMap> belief_;
  world::EpisodeState state_;
  plan::RefinementSchedule schedule_;
  Rng rng_{0};
};

}  // namespace beliefnav::bench

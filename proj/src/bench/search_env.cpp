#include "beliefnav/bench/search_env.hpp"

namespace beliefnav::bench {

using world::Cell;
using world::EpisodeStatus;

SearchEnv::SearchEnv(const percept::DetectorModel& detector,
                     const percept::CalibrationConfig& calibration,
                     plan::PartitionCache* cache)
    : detector_(detector), calibration_(calibration), cache_(cache) {
  detector_.validate();
}

void SearchEnv::reset(const world::EpisodeSpec& spec, int k0,
                      std::uint64_t scheduler_seed) {
  spec.validate();
  spec_ = spec;
  belief_.emplace(belief::BeliefMap::uniform(*spec_.map, detector_.class_count()));
  state_ = world::EpisodeState{};
  state_.pose = spec_.start_pose;
  rng_ = Rng(spec_.rng_seed);

  if (cache_) {
    schedule_ = plan::RefinementSchedule{};
    schedule_.k0 = k0;
    schedule_.level = 0;
    schedule_.seed = scheduler_seed;
    const int k = plan::cluster_count_for_level(0, k0, map().free_cells().size());
    schedule_.partition = cache_->get(map(), k, scheduler_seed);
    schedule_.visited.assign(k, 0);
  } else {
    schedule_ = plan::RefinementSchedule::initial(map(), k0, scheduler_seed);
  }

  observe();  // initial frame at the start pose
}

void SearchEnv::ensure_admissible() {
  while (state_.status == EpisodeStatus::running && schedule_.all_visited())
    schedule_ = plan::refine(schedule_, map(), cache_);
}

void SearchEnv::observe() {
  if (state_.status != EpisodeStatus::running) return;
  const auto frame =
      percept::simulate_frame(map(), state_.pose, spec_, detector_, calibration_, rng_);
  belief::apply_frame(*belief_, frame, detector_);
  const auto check = belief::check_termination(*belief_, spec_);
  if (check.status != EpisodeStatus::running) state_.status = check.status;
  if (step_hook_) step_hook_(*this);
}

void SearchEnv::step_primitive(world::MotionPrimitive prim) {
  if (state_.status != EpisodeStatus::running) return;
  state_.advance(map(), prim);
  observe();
  // A declaration on the final primitive still counts as a declaration.
  if (state_.status == EpisodeStatus::running &&
      state_.primitives_executed >= spec_.horizon)
    state_.status = EpisodeStatus::horizon_exhausted;
}

SearchEnv::Segment SearchEnv::go_to(Cell goal) {
  Segment segment;
  const auto path = plan::shortest_path(map(), state_.pose, goal);
  for (const auto prim : path.primitives) {
    if (state_.status != EpisodeStatus::running) break;
    step_primitive(prim);
    ++segment.primitives;
  }
  if (state_.pose.cell == goal) {
    segment.reached_goal = true;
    schedule_.mark_visited(goal);
  }
  return segment;
}

}  // namespace beliefnav::bench

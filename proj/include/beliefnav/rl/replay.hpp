#pragma once

#include <cstdint>
#include <optional>

#include "beliefnav/rl/network.hpp"

namespace beliefnav::rl {

// Admissible-goal mask over the grid: exactly the unvisited centroids of the
// current refinement level.
struct CentroidMask {
  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> admissible;  // row-major
  int count = 0;

  static CentroidMask from_cells(const world::GridMap& map,
                                 std::span<const world::Cell> centroids);
  bool at(world::Cell cell) const {
    return admissible[static_cast<std::size_t>(cell.row) * width + cell.col] != 0;
  }
};

// One goal-level decision. States are stored compactly (belief channels over
// occupied cells only, pose as an index) and materialized back into full
// tensors on demand; at 50k capacity full tensors would not fit in memory.
struct Transition {
  std::vector<float> state_posterior;   // per occupied cell, row-major
  std::vector<float> state_entropy;
  std::int32_t state_pose = -1;         // grid index
  std::vector<std::int32_t> state_mask; // admissible grid indices at selection
  std::int32_t goal = -1;               // grid index, admissible in state_mask
  float reward = 0.0f;
  std::vector<float> next_posterior;
  std::vector<float> next_entropy;
  std::int32_t next_pose = -1;
  std::vector<std::int32_t> next_mask;
  bool done = false;
};

Transition make_transition_state(const belief::BeliefMap& belief, int target_class,
                                 const world::Pose& pose, const CentroidMask& mask);

// Ring buffer; at capacity the oldest transition is evicted first.
class ReplayBuffer {
 public:
  ReplayBuffer(std::size_t capacity, const world::GridMap& map);

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return items_.size(); }
  const world::GridMap& map() const { return *map_; }

  void push(Transition t);
  // index 0 is the oldest stored transition
  const Transition& at(std::size_t index) const;

  StateTensor materialize(const Transition& t, bool next_state) const;
  CentroidMask materialize_mask(std::span<const std::int32_t> mask_indices) const;

 private:
  std::size_t capacity_;
  const world::GridMap* map_;
  std::vector<Transition> items_;
  std::size_t head_ = 0;  // slot of the oldest item once full
};

}  // namespace beliefnav::rl

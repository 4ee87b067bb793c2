#include "beliefnav/rl/state_tensor.hpp"

#include <stdexcept>

namespace beliefnav::rl {

StateTensor build_state_tensor(const belief::BeliefMap& belief, int target_class,
                               const world::GridMap& map, const world::Pose& pose) {
  if (&belief.map() != &map)
    throw std::invalid_argument("build_state_tensor: belief bound to a different map");
  if (target_class < 0 || target_class >= belief.class_count())
    throw std::invalid_argument("build_state_tensor: target class out of range");

  StateTensor t;
  t.height = map.height();
  t.width = map.width();
  t.data.assign(static_cast<std::size_t>(StateTensor::kChannels) * t.height * t.width, 0.0);

  for (const auto& cell : map.occupied_cells()) {
    t.at(StateTensor::kChannelPosterior, cell.row, cell.col) =
        belief.target_posterior_at(cell, target_class);
    t.at(StateTensor::kChannelEntropy, cell.row, cell.col) = belief.entropy_at(cell);
    t.at(StateTensor::kChannelOccupancy, cell.row, cell.col) = 1.0;
  }
  t.at(StateTensor::kChannelRobot, pose.cell.row, pose.cell.col) = 1.0;
  return t;
}

}  // namespace beliefnav::rl

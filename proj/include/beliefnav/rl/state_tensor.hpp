#pragma once

#include "beliefnav/belief/belief_map.hpp"

namespace beliefnav::rl {

// 4-channel grid stack fed to the Q-network:
//   [0] target-class posterior mean (occupied cells, else 0)
//   [1] normalized entropy          (occupied cells, else 0)
//   [2] occupancy
//   [3] robot one-hot
struct StateTensor {
  static constexpr int kChannels = 4;
  static constexpr int kChannelPosterior = 0;
  static constexpr int kChannelEntropy = 1;
  static constexpr int kChannelOccupancy = 2;
  static constexpr int kChannelRobot = 3;

  int height = 0;
  int width = 0;
  std::vector<double> data;  // channel-major, kChannels * height * width

  double at(int channel, int row, int col) const {
    return data[(static_cast<std::size_t>(channel) * height + row) * width + col];
  }
  double& at(int channel, int row, int col) {
    return data[(static_cast<std::size_t>(channel) * height + row) * width + col];
  }
};

StateTensor build_state_tensor(const belief::BeliefMap& belief, int target_class,
                               const world::GridMap& map, const world::Pose& pose);

}  // namespace beliefnav::rl

#include "beliefnav/rl/replay.hpp"

#include <stdexcept>

namespace beliefnav::rl {

using world::Cell;

CentroidMask CentroidMask::from_cells(const world::GridMap& map,
                                      std::span<const Cell> centroids) {
  CentroidMask mask;
  mask.height = map.height();
  mask.width = map.width();
  mask.admissible.assign(map.cell_count(), 0);
  for (const Cell& c : centroids) {
    auto& flag = mask.admissible[map.index(c)];
    if (!flag) ++mask.count;
    flag = 1;
  }
  return mask;
}

Transition make_transition_state(const belief::BeliefMap& belief, int target_class,
                                 const world::Pose& pose, const CentroidMask& mask) {
  const auto& map = belief.map();
  Transition t;
  t.state_posterior.reserve(map.occupied_cells().size());
  t.state_entropy.reserve(map.occupied_cells().size());
  for (const Cell& cell : map.occupied_cells()) {
    t.state_posterior.push_back(
        static_cast<float>(belief.target_posterior_at(cell, target_class)));
    t.state_entropy.push_back(static_cast<float>(belief.entropy_at(cell)));
  }
  t.state_pose = static_cast<std::int32_t>(map.index(pose.cell));
  for (std::size_t i = 0; i < mask.admissible.size(); ++i)
    if (mask.admissible[i]) t.state_mask.push_back(static_cast<std::int32_t>(i));
  return t;
}

ReplayBuffer::ReplayBuffer(std::size_t capacity, const world::GridMap& map)
    : capacity_(capacity), map_(&map) {
  if (capacity_ < 1) throw std::invalid_argument("ReplayBuffer: capacity must be >= 1");
  items_.reserve(std::min<std::size_t>(capacity_, 4096));
}

void ReplayBuffer::push(Transition t) {
  if (items_.size() < capacity_) {
    items_.push_back(std::move(t));
  } else {
    items_[head_] = std::move(t);
    head_ = (head_ + 1) % capacity_;
  }
}

const Transition& ReplayBuffer::at(std::size_t index) const {
  if (index >= items_.size()) throw std::out_of_range("ReplayBuffer::at");
  return items_[(head_ + index) % items_.size()];
}

StateTensor ReplayBuffer::materialize(const Transition& t, bool next_state) const {
  const auto& posterior = next_state ? t.next_posterior : t.state_posterior;
  const auto& entropy = next_state ? t.next_entropy : t.state_entropy;
  const auto pose_index = next_state ? t.next_pose : t.state_pose;
  const auto& occ = map_->occupied_cells();
  if (posterior.size() != occ.size() || entropy.size() != occ.size())
    throw std::invalid_argument("ReplayBuffer: transition does not match map");

  StateTensor s;
  s.height = map_->height();
  s.width = map_->width();
  s.data.assign(static_cast<std::size_t>(StateTensor::kChannels) * s.height * s.width,
                0.0);
  for (std::size_t i = 0; i < occ.size(); ++i) {
    s.at(StateTensor::kChannelPosterior, occ[i].row, occ[i].col) = posterior[i];
    s.at(StateTensor::kChannelEntropy, occ[i].row, occ[i].col) = entropy[i];
    s.at(StateTensor::kChannelOccupancy, occ[i].row, occ[i].col) = 1.0;
  }
  const Cell pose_cell = map_->cell_at(pose_index);
  s.at(StateTensor::kChannelRobot, pose_cell.row, pose_cell.col) = 1.0;
  return s;
}

CentroidMask ReplayBuffer::materialize_mask(
    std::span<const std::int32_t> mask_indices) const {
  CentroidMask mask;
  mask.height = map_->height();
  mask.width = map_->width();
  mask.admissible.assign(map_->cell_count(), 0);
  for (auto idx : mask_indices) {
    auto& flag = mask.admissible[idx];
    if (!flag) ++mask.count;
    flag = 1;
  }
  return mask;
}

}  // namespace beliefnav::rl

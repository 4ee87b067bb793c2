#pragma once

#include <optional>

#include "beliefnav/common/rng.hpp"
#include "beliefnav/rl/replay.hpp"

namespace beliefnav::rl {

inline constexpr double kStepReward = -0.01;
inline constexpr double kSuccessReward = 1.0;

struct TrainConfig {
  double gamma = 0.99;
  double learning_rate = 1e-3;
  int batch_size = 64;
  std::size_t buffer_capacity = 50000;
  int target_sync_every = 2000;  // gradient steps between target copies
  int episodes = 5000;
  double epsilon_start = 1.0;
  double epsilon_end = 0.05;

  void validate() const;
};

// Epsilon-greedy goal selection over the admissible centroids: uniform with
// probability epsilon, otherwise the Q-map argmax (ties lexicographic).
world::Cell masked_select(const QMap& q, const CentroidMask& mask, double epsilon,
                          Rng& rng);

// Goal-level reward: n_prim * r_step + success * r_succ.
double compute_reward(int primitives, bool success);

// r for terminal transitions; otherwise r + gamma * max over next-admissible
// cells of the target network's Q-map.
double td_target(const Transition& t, const QNetwork& target_net,
                 const ReplayBuffer& buffer, double gamma);

// Linear anneal from epsilon_start at episode 0 down to epsilon_end at
// floor(0.8 * episodes), constant afterward.
double epsilon_at(int episode, const TrainConfig& cfg);

// Owns the online network, the target network, and the optimizer state.
class QLearner {
 public:
  QLearner(QNetwork net, const TrainConfig& cfg);

  const QNetwork& net() const { return net_; }
  const QNetwork& target_net() const { return target_; }
  long gradient_steps() const { return steps_; }

  // One Huber-loss gradient step on a uniform batch; copies the online
  // parameters into the target every target_sync_every steps. Returns the
  // batch loss, or nothing while the buffer holds fewer than batch_size
  // transitions.
  std::optional<double> train_step(const ReplayBuffer& buffer, Rng& rng);

 private:
  TrainConfig cfg_;
  QNetwork net_;
  QNetwork target_;
  AdamOptimizer adam_;
  long steps_ = 0;
  std::vector<double> grad_;
  QNetwork::Activations acts_;
  QNetwork::BackwardScratch scratch_;
};

}  // namespace beliefnav::rl

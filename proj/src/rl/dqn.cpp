#include "beliefnav/rl/dqn.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace beliefnav::rl {

using world::Cell;

void TrainConfig::validate() const {
  if (!(gamma > 0.0 && gamma <= 1.0))
    throw std::invalid_argument("TrainConfig: gamma must be in (0,1]");
  if (!(learning_rate > 0.0))
    throw std::invalid_argument("TrainConfig: learning_rate must be > 0");
  if (batch_size < 1) throw std::invalid_argument("TrainConfig: batch_size must be >= 1");
  if (buffer_capacity < static_cast<std::size_t>(batch_size))
    throw std::invalid_argument("TrainConfig: capacity must be >= batch_size");
  if (target_sync_every < 1)
    throw std::invalid_argument("TrainConfig: target_sync_every must be >= 1");
  if (episodes < 1) throw std::invalid_argument("TrainConfig: episodes must be >= 1");
  if (!(epsilon_start >= 0.0 && epsilon_start <= 1.0) ||
      !(epsilon_end >= 0.0 && epsilon_end <= 1.0))
    throw std::invalid_argument("TrainConfig: epsilon bounds must be in [0,1]");
}

Cell masked_select(const QMap& q, const CentroidMask& mask, double epsilon, Rng& rng) {
  if (mask.count < 1) throw std::logic_error("masked_select: empty mask");
  if (q.height != mask.height || q.width != mask.width)
    throw std::invalid_argument("masked_select: shape mismatch");

  const bool explore = rng.uniform() < epsilon;
  if (explore) {
    std::size_t pick = rng.uniform_index(mask.count);
    for (int r = 0; r < mask.height; ++r)
      for (int c = 0; c < mask.width; ++c)
        if (mask.at({r, c}) && pick-- == 0) return Cell{r, c};
    throw std::logic_error("masked_select: mask count out of sync");
  }

  Cell best{};
  double best_q = -std::numeric_limits<double>::infinity();
  bool found = false;
  for (int r = 0; r < mask.height; ++r)
    for (int c = 0; c < mask.width; ++c)
      if (mask.at({r, c}) && (!found || q.at(r, c) > best_q)) {
        best = Cell{r, c};
        best_q = q.at(r, c);
        found = true;
      }
  return best;
}

double compute_reward(int primitives, bool success) {
  if (primitives < 0) throw std::invalid_argument("compute_reward: negative count");
  return primitives * kStepReward + (success ? kSuccessReward : 0.0);
}

namespace {
double masked_max(const QMap& q, const CentroidMask& mask) {
  double best = -std::numeric_limits<double>::infinity();
  bool found = false;
  for (int r = 0; r < mask.height; ++r)
    for (int c = 0; c < mask.width; ++c)
      if (mask.at({r, c})) {
        best = found ? std::max(best, q.at(r, c)) : q.at(r, c);
        found = true;
      }
  if (!found) throw std::logic_error("masked_max: empty mask");
  return best;
}
}  // namespace

double td_target(const Transition& t, const QNetwork& target_net,
                 const ReplayBuffer& buffer, double gamma) {
  if (t.done) return t.reward;
  if (t.next_mask.empty())
    throw std::logic_error("td_target: non-terminal transition without next mask");
  const StateTensor next = buffer.materialize(t, true);
  const QMap q = target_net.forward(next);
  const CentroidMask mask = buffer.materialize_mask(t.next_mask);
  return t.reward + gamma * masked_max(q, mask);
}

double epsilon_at(int episode, const TrainConfig& cfg) {
  if (episode < 0) throw std::invalid_argument("epsilon_at: negative episode");
  const int anneal_end = static_cast<int>(std::floor(0.8 * cfg.episodes));
  if (anneal_end <= 0 || episode >= anneal_end) return cfg.epsilon_end;
  return cfg.epsilon_start +
         (cfg.epsilon_end - cfg.epsilon_start) *
             (static_cast<double>(episode) / anneal_end);
}

QLearner::QLearner(QNetwork net, const TrainConfig& cfg)
    : cfg_(cfg),
      net_(std::move(net)),
      target_(net_),
      adam_(net_.param_count(), cfg.learning_rate),
      grad_(net_.param_count(), 0.0) {
  cfg_.validate();
}

std::optional<double> QLearner::train_step(const ReplayBuffer& buffer, Rng& rng) {
  if (buffer.size() < static_cast<std::size_t>(cfg_.batch_size)) return std::nullopt;

  std::fill(grad_.begin(), grad_.end(), 0.0);
  const double inv_batch = 1.0 / cfg_.batch_size;
  double loss_sum = 0.0;

  for (int b = 0; b < cfg_.batch_size; ++b) {
    const Transition& t = buffer.at(rng.uniform_index(buffer.size()));
    const double target = td_target(t, target_, buffer, cfg_.gamma);

    const StateTensor state = buffer.materialize(t, false);
    net_.forward(state, acts_);
    const Cell goal = buffer.map().cell_at(t.goal);
    const double q =
        acts_.outputs.back()[static_cast<std::size_t>(goal.row) * state.width + goal.col];

    // Huber loss with unit transition point.
    const double diff = q - target;
    double dq;
    if (std::abs(diff) <= 1.0) {
      loss_sum += 0.5 * diff * diff;
      dq = diff;
    } else {
      loss_sum += std::abs(diff) - 0.5;
      dq = diff > 0.0 ? 1.0 : -1.0;
    }
    net_.backward_point(acts_, goal.row, goal.col, dq * inv_batch, grad_, scratch_);
  }

  adam_.step(net_.params(), grad_);
  ++steps_;
  if (steps_ % cfg_.target_sync_every == 0) target_.copy_params_from(net_);
  return loss_sum * inv_batch;
}

}  // namespace beliefnav::rl

#pragma once

#include "beliefnav/rl/dqn.hpp"

namespace beliefnav::bench {
struct ScenarioSpec;
}

namespace beliefnav::rl {

struct EpisodeLogRow {
  int episode = 0;
  double episode_return = 0.0;
  int length = 0;  // primitives executed
  world::EpisodeStatus outcome = world::EpisodeStatus::running;
  double epsilon = 0.0;
  double mean_loss = 0.0;  // over this episode's gradient steps, 0 if none
};

struct TrainingResult {
  QNetwork net;
  std::vector<EpisodeLogRow> log;
};

std::string training_log_to_csv(std::span<const EpisodeLogRow> log);

// Goal-level Q-learning per scenario: each episode samples one training
// target uniformly and a random free start pose, runs the decision loop
// (state tensor -> epsilon-greedy masked selection -> shortest-path traversal
// with online belief updates -> goal reward -> replay push -> gradient step),
// and logs the outcome. Evaluation targets are never sampled as episode
// targets. Deterministic per seed.
TrainingResult run_training(const bench::ScenarioSpec& scenario, const TrainConfig& cfg,
                            std::uint64_t seed);

}  // namespace beliefnav::rl

#include "beliefnav/rl/trainer.hpp"

#include <iomanip>
#include <sstream>

#include "beliefnav/bench/scenario.hpp"
#include "beliefnav/bench/search_env.hpp"
#include "beliefnav/rl/state_tensor.hpp"

namespace beliefnav::rl {

using world::EpisodeStatus;

std::string training_log_to_csv(std::span<const EpisodeLogRow> log) {
  std::ostringstream out;
  out << "episode,return,length,outcome,epsilon,loss\n";
  out << std::setprecision(17);
  for (const auto& row : log)
    out << row.episode << ',' << row.episode_return << ',' << row.length << ','
        << world::to_string(row.outcome) << ',' << row.epsilon << ',' << row.mean_loss
        << "\n";
  return out.str();
}

namespace {

// A decision awaiting its successor state.
struct PendingDecision {
  Transition transition;  // state/mask/goal/reward filled, next_* empty
};

Transition&& complete(PendingDecision&& pending, const Transition& next_state,
                      bool done) {
  auto& t = pending.transition;
  t.next_posterior = next_state.state_posterior;
  t.next_entropy = next_state.state_entropy;
  t.next_pose = next_state.state_pose;
  t.next_mask = next_state.state_mask;
  t.done = done;
  return std::move(t);
}

}  // namespace

TrainingResult run_training(const bench::ScenarioSpec& scenario, const TrainConfig& cfg,
                            std::uint64_t seed) {
  cfg.validate();
  if (scenario.train_targets.empty())
    throw std::invalid_argument("run_training: scenario has no training targets");

  const auto& map = *scenario.map;
  QNetwork net = make_default_qnetwork(Rng::mix(seed, 0x1717));
  QLearner learner(std::move(net), cfg);
  ReplayBuffer buffer(cfg.buffer_capacity, map);
  plan::PartitionCache cache;
  bench::SearchEnv env(scenario.detector, scenario.calibration, &cache);

  Rng train_rng(Rng::mix(seed, 0x5eed));
  const auto& free = map.free_cells();
  const int horizon = world::horizon_for(map, scenario.horizon_fraction);

  TrainingResult result{learner.net(), {}};
  result.log.reserve(cfg.episodes);

  for (int episode = 0; episode < cfg.episodes; ++episode) {
    const double epsilon = epsilon_at(episode, cfg);
    const auto& target =
        scenario.train_targets[train_rng.uniform_index(scenario.train_targets.size())];

    world::EpisodeSpec spec;
    spec.map = &map;
    spec.target_class = target.class_index;
    spec.target_cell = target.cell;
    spec.start_pose = {free[train_rng.uniform_index(free.size())],
                       static_cast<world::Heading>(train_rng.uniform_below(4))};
    spec.horizon = horizon;
    spec.confidence_threshold = scenario.confidence_threshold;
    spec.rng_seed = Rng::mix(seed, 0xe910d0 + episode);
    spec.objects = scenario.all_objects();

    env.reset(spec, scenario.k0, scenario.scheduler_seed);

    double episode_return = 0.0;
    double loss_sum = 0.0;
    int loss_count = 0;
    std::optional<PendingDecision> pending;

    const auto train_once = [&] {
      if (const auto loss = learner.train_step(buffer, train_rng)) {
        loss_sum += *loss;
        ++loss_count;
      }
    };

    while (env.status() == EpisodeStatus::running) {
      env.ensure_admissible();
      const auto tensor =
          build_state_tensor(env.belief(), spec.target_class, map, env.pose());
      const auto mask =
          CentroidMask::from_cells(map, env.schedule().admissible_centroids());
      auto compact = make_transition_state(env.belief(), spec.target_class,
                                           env.pose(), mask);
      if (pending) {
        buffer.push(complete(std::move(*pending), compact, false));
        pending.reset();
        train_once();
      }

      const QMap q = learner.net().forward(tensor);
      const auto goal = masked_select(q, mask, epsilon, env.rng());
      if (!mask.at(goal))
        throw std::logic_error("run_training: selected goal not admissible");
      const auto segment = env.go_to(goal);
      const bool success = env.status() == EpisodeStatus::success;
      const double reward = compute_reward(segment.primitives, success);
      episode_return += reward;

      compact.goal = static_cast<std::int32_t>(map.index(goal));
      compact.reward = static_cast<float>(reward);
      pending = PendingDecision{std::move(compact)};
    }

    if (pending) {
      const auto final_mask =
          CentroidMask::from_cells(map, env.schedule().admissible_centroids());
      const auto final_state = make_transition_state(env.belief(), spec.target_class,
                                                     env.pose(), final_mask);
      buffer.push(complete(std::move(*pending), final_state, true));
      pending.reset();
      train_once();
    }

    EpisodeLogRow row;
    row.episode = episode;
    row.episode_return = episode_return;
    row.length = env.episode().primitives_executed;
    row.outcome = env.status();
    row.epsilon = epsilon;
    row.mean_loss = loss_count ? loss_sum / loss_count : 0.0;
    result.log.push_back(row);
  }

  result.net = learner.net();
  return result;
}

}  // namespace beliefnav::rl

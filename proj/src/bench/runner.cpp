#include "beliefnav/bench/runner.hpp"

#include "beliefnav/rl/state_tensor.hpp"

namespace beliefnav::bench {

using world::EpisodeStatus;

RunRecord run_episode(Method method, const ScenarioSpec& scenario,
                      const world::Placement& eval_target,
                      const world::Pose& start_pose, int episode_index,
                      std::uint64_t base_seed, const rl::QNetwork* net,
                      plan::PartitionCache* cache,
                      std::function<void(const SearchEnv&)> step_hook) {
  if (method == Method::bbdps && net == nullptr)
    throw std::invalid_argument("run_episode: bbdps needs a trained network");

  world::EpisodeSpec spec;
  spec.map = scenario.map.get();
  spec.target_class = eval_target.class_index;
  spec.target_cell = eval_target.cell;
  spec.start_pose = start_pose;
  spec.horizon = world::horizon_for(*scenario.map, scenario.horizon_fraction);
  spec.confidence_threshold = scenario.confidence_threshold;
  spec.rng_seed = Rng::mix(base_seed, static_cast<std::uint64_t>(episode_index));
  spec.objects = scenario.all_objects();

  SearchEnv env(scenario.detector, scenario.calibration, cache);
  if (step_hook) env.set_step_hook(std::move(step_hook));
  env.reset(spec, scenario.k0, scenario.scheduler_seed);

  while (env.status() == EpisodeStatus::running) {
    switch (method) {
      case Method::rws:
        env.step_primitive(policies::rws_step(env.rng()));
        break;
      case Method::pcss: {
        env.ensure_admissible();
        const auto goal = policies::pcss_next(env.schedule().partition, env.schedule(),
                                              env.pose(), env.map());
        env.go_to(goal);
        break;
      }
      case Method::bbums: {
        env.ensure_admissible();
        const auto admissible = env.schedule().admissible_clusters();
        const auto stats =
            policies::cluster_stats(env.belief(), env.schedule().partition, admissible,
                                    env.pose(), spec.target_class, env.map());
        env.go_to(policies::bbums_next(stats, scenario.weights));
        break;
      }
      case Method::bbdps: {
        env.ensure_admissible();
        const auto tensor =
            rl::build_state_tensor(env.belief(), spec.target_class, env.map(), env.pose());
        const auto mask = rl::CentroidMask::from_cells(
            env.map(), env.schedule().admissible_centroids());
        const auto q = net->forward(tensor);
        env.go_to(rl::masked_select(q, mask, 0.0, env.rng()));
        break;
      }
    }
  }

  RunRecord record;
  record.method = method;
  record.episode = episode_index;
  record.outcome = env.status();
  record.primitives = env.episode().primitives_executed;
  record.distance = env.episode().distance_traveled;
  return record;
}

std::vector<RunRecord> run_suite(Method method, const ScenarioSpec& scenario,
                                 std::uint64_t base_seed, int episodes,
                                 const rl::QNetwork* net) {
  const auto poses = start_pose_suite(*scenario.map, episodes, scenario.suite_seed);
  plan::PartitionCache cache;
  std::vector<RunRecord> records;
  records.reserve(episodes);
  for (int e = 0; e < episodes; ++e)
    records.push_back(run_episode(method, scenario, scenario.eval_targets.front(),
                                  poses[e], e, base_seed, net, &cache));
  return records;
}

}  // namespace beliefnav::bench

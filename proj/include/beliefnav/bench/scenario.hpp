#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "beliefnav/policies/baselines.hpp"
#include "beliefnav/rl/dqn.hpp"

namespace beliefnav::bench {

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GenMapParams {
  int width = 20;
  int height = 20;
  int rooms = 4;
  std::uint64_t seed = 0;
};

// Everything a benchmark run needs: the environment, the synthetic detector,
// the policy knobs, the training protocol, the object placements with their
// train/eval split, and the evaluation suite parameters.
struct ScenarioSpec {
  std::string name;
  std::filesystem::path source_path;
  std::string map_text;  // exact text the map was parsed from (hashed in manifests)
  std::shared_ptr<const world::GridMap> map;

  int class_count = 4;
  percept::DetectorModel detector;
  percept::CalibrationConfig calibration;

  int k0 = 4;
  policies::UtilityWeights weights;

  rl::TrainConfig training;

  std::vector<world::Placement> train_targets;
  std::vector<world::Placement> eval_targets;  // exactly one held-out instance
  std::vector<world::Placement> clutter;

  int eval_episodes = 100;
  double horizon_fraction = 0.75;
  double confidence_threshold = 0.8;
  std::uint64_t suite_seed = 1;
  std::uint64_t scheduler_seed = 1;

  // The full scene contents for every episode (targets of all splits plus
  // clutter); the episode's own target is chosen among them.
  std::vector<world::Placement> all_objects() const;
  void validate() const;
};

ScenarioSpec load_scenario(const std::filesystem::path& path);
ScenarioSpec parse_scenario(const std::string& text,
                            const std::filesystem::path& base_dir,
                            const std::filesystem::path& source_path = {});

// The fixed evaluation suite: `count` poses sampled uniformly over free
// cells and headings from the suite seed. Identical across methods.
std::vector<world::Pose> start_pose_suite(const world::GridMap& map, int count,
                                          std::uint64_t suite_seed);

}  // namespace beliefnav::bench

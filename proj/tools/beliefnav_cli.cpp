// Command-line front end: map generation, policy training, fixed-suite
// evaluation, the four-method benchmark with joint-success filtering, and
// episode replay with belief-trace dumps.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "beliefnav/bench/manifest.hpp"
#include "beliefnav/bench/mapgen.hpp"
#include "beliefnav/bench/runner.hpp"
#include "beliefnav/rl/checkpoint.hpp"
#include "beliefnav/rl/trainer.hpp"

namespace fs = std::filesystem;
using namespace beliefnav;

namespace {

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

fs::path ensure_out_dir(const std::string& out) {
  fs::path dir(out);
  fs::create_directories(dir);
  return dir;
}

rl::QNetwork obtain_network(const bench::ScenarioSpec& scenario,
                            const std::string& checkpoint, std::uint64_t seed,
                            const fs::path& out_dir, bench::Manifest& manifest) {
  if (!checkpoint.empty()) {
    manifest.checkpoint = checkpoint;
    return rl::load_checkpoint(checkpoint);
  }
  std::cerr << "[bench] no checkpoint given; training bbdps ("
            << scenario.training.episodes << " episodes)...\n";
  auto result = rl::run_training(scenario, scenario.training, seed);
  const fs::path ckpt = out_dir / "bbdps.ckpt";
  rl::save_checkpoint(ckpt, result.net);
  write_file(out_dir / "training_log.csv", rl::training_log_to_csv(result.log));
  manifest.checkpoint = ckpt.string();
  manifest.outputs.push_back(ckpt.string());
  manifest.outputs.push_back((out_dir / "training_log.csv").string());
  return result.net;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grid-world object-search benchmark"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out = "out";
  std::string method_name = "rws";
  std::string checkpoint;
  std::uint64_t seed = 1;
  int episodes = -1;  // scenario default unless set

  // genmap
  auto* genmap = app.add_subcommand("genmap", "generate a procedural map file");
  int gm_width = 20, gm_height = 20, gm_rooms = 4;
  std::string gm_name = "generated.map";
  genmap->add_option("--width", gm_width, "map width in cells");
  genmap->add_option("--height", gm_height, "map height in cells");
  genmap->add_option("--rooms", gm_rooms, "room count");
  genmap->add_option("--seed", seed, "generator seed");
  genmap->add_option("--out", out, "output directory");
  genmap->add_option("--name", gm_name, "output file name");

  // train
  auto* train = app.add_subcommand("train", "train the bbdps policy");
  train->add_option("--scenario", scenario_path, "scenario file")->required();
  train->add_option("--seed", seed, "training seed");
  train->add_option("--out", out, "output directory");
  train->add_option("--episodes", episodes, "override training episode count");

  // eval
  auto* eval = app.add_subcommand("eval", "run one method over the start-pose suite");
  eval->add_option("--scenario", scenario_path, "scenario file")->required();
  eval->add_option("--method", method_name, "rws|pcss|bbums|bbdps")->required();
  eval->add_option("--seed", seed, "evaluation seed");
  eval->add_option("--episodes", episodes, "override suite episode count");
  eval->add_option("--checkpoint", checkpoint, "bbdps checkpoint file");
  eval->add_option("--out", out, "output directory");

  // bench
  auto* bench_cmd =
      app.add_subcommand("bench", "run all four methods and aggregate the tables");
  bench_cmd->add_option("--scenario", scenario_path, "scenario file")->required();
  bench_cmd->add_option("--seed", seed, "benchmark seed");
  bench_cmd->add_option("--episodes", episodes, "override suite episode count");
  bench_cmd->add_option("--checkpoint", checkpoint,
                        "bbdps checkpoint (trained in place when absent)");
  bench_cmd->add_option("--out", out, "output directory");

  // replay
  auto* replay = app.add_subcommand("replay", "re-run one episode, dumping beliefs");
  int replay_episode = 0;
  replay->add_option("--scenario", scenario_path, "scenario file")->required();
  replay->add_option("--method", method_name, "rws|pcss|bbums|bbdps")->required();
  replay->add_option("--episode", replay_episode, "episode index")->required();
  replay->add_option("--seed", seed, "seed the episode was recorded with");
  replay->add_option("--checkpoint", checkpoint, "bbdps checkpoint file");
  replay->add_option("--out", out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (genmap->parsed()) {
      const auto dir = ensure_out_dir(out);
      const auto map = bench::generate_map(gm_width, gm_height, gm_rooms, seed);
      const auto path = dir / gm_name;
      write_file(path, map.to_text());
      std::cout << path.string() << "\n";
      return 0;
    }

    auto scenario = bench::load_scenario(scenario_path);
    const auto dir = ensure_out_dir(out);

    if (train->parsed()) {
      auto cfg = scenario.training;
      if (episodes > 0) cfg.episodes = episodes;
      auto manifest = bench::make_manifest("train", scenario, seed, cfg.episodes);
      auto result = rl::run_training(scenario, cfg, seed);
      const fs::path ckpt = dir / "bbdps.ckpt";
      rl::save_checkpoint(ckpt, result.net);
      write_file(dir / "training_log.csv", rl::training_log_to_csv(result.log));
      manifest.checkpoint = ckpt.string();
      manifest.outputs = {ckpt.string(), (dir / "training_log.csv").string()};
      bench::write_manifest(dir, manifest);
      std::cout << "checkpoint: " << ckpt.string() << "\n";
      return 0;
    }

    if (eval->parsed()) {
      const auto method = bench::method_from_string(method_name);
      const int n = episodes > 0 ? episodes : scenario.eval_episodes;
      auto manifest = bench::make_manifest("eval", scenario, seed, n);
      std::optional<rl::QNetwork> net;
      if (method == bench::Method::bbdps) {
        if (checkpoint.empty())
          throw std::runtime_error("eval --method bbdps needs --checkpoint");
        net = rl::load_checkpoint(checkpoint);
        manifest.checkpoint = checkpoint;
      }
      const auto records =
          bench::run_suite(method, scenario, seed, n, net ? &*net : nullptr);
      const fs::path csv = dir / ("records_" + method_name + ".csv");
      write_file(csv, bench::records_to_csv(records));
      manifest.outputs = {csv.string()};
      bench::write_manifest(dir, manifest);
      std::cout << csv.string() << "\n";
      return 0;
    }

    if (bench_cmd->parsed()) {
      const int n = episodes > 0 ? episodes : scenario.eval_episodes;
      auto manifest = bench::make_manifest("bench", scenario, seed, n);
      const auto net = obtain_network(scenario, checkpoint, seed, dir, manifest);

      std::vector<bench::RunRecord> all;
      for (const auto method : bench::kAllMethods) {
        std::cerr << "[bench] evaluating " << bench::to_string(method) << " over " << n
                  << " episodes...\n";
        const auto records = bench::run_suite(
            method, scenario, seed, n,
            method == bench::Method::bbdps ? &net : nullptr);
        all.insert(all.end(), records.begin(), records.end());
      }

      const auto joint = bench::joint_success_filter(all);
      if (joint.empty())
        std::cerr << "[bench] warning: no episode succeeded under every method; "
                     "efficiency columns are empty\n";
      const auto table = bench::aggregate(all, joint);

      write_file(dir / "records_all.csv", bench::records_to_csv(all));
      write_file(dir / "metrics.csv", bench::metrics_to_csv(table));
      const std::string text = bench::metrics_to_text(table);
      write_file(dir / "tables.txt", text);
      manifest.outputs = {(dir / "records_all.csv").string(),
                          (dir / "metrics.csv").string(),
                          (dir / "tables.txt").string()};
      bench::write_manifest(dir, manifest);
      std::cout << text;
      std::cout << "joint-success episodes: " << joint.size() << " / " << n << "\n";
      return 0;
    }

    if (replay->parsed()) {
      const auto method = bench::method_from_string(method_name);
      std::optional<rl::QNetwork> net;
      if (method == bench::Method::bbdps) {
        if (checkpoint.empty())
          throw std::runtime_error("replay --method bbdps needs --checkpoint");
        net = rl::load_checkpoint(checkpoint);
      }
      const auto poses =
          bench::start_pose_suite(*scenario.map, scenario.eval_episodes,
                                  scenario.suite_seed);
      if (replay_episode < 0 || replay_episode >= static_cast<int>(poses.size()))
        throw std::runtime_error("replay: episode index out of range");

      const fs::path trace_dir =
          dir / ("replay_" + method_name + "_ep" + std::to_string(replay_episode));
      fs::create_directories(trace_dir);
      std::ofstream trace(trace_dir / "trace.txt");
      int step = 0;
      const auto hook = [&](const bench::SearchEnv& env) {
        std::ostringstream name;
        name << "step_" << std::setw(4) << std::setfill('0') << step << ".csv";
        write_file(trace_dir / name.str(),
                   env.belief().target_posterior_csv(env.spec().target_class));
        trace << "step " << step << " pose (" << env.pose().cell.row << ","
              << env.pose().cell.col << ") " << world::to_string(env.pose().heading)
              << " status " << world::to_string(env.status()) << "\n";
        ++step;
      };
      plan::PartitionCache cache;
      const auto record = bench::run_episode(
          method, scenario, scenario.eval_targets.front(), poses[replay_episode],
          replay_episode, seed, net ? &*net : nullptr, &cache, hook);
      trace << "outcome " << world::to_string(record.outcome) << " primitives "
            << record.primitives << " distance " << record.distance << "\n";
      std::cout << trace_dir.string() << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "beliefnav/bench/scenario.hpp"

namespace beliefnav::bench {

// Reproducibility record written next to every CLI output: the command, the
// scenario and map content hashes, every seed in play, and the files
// produced.
struct Manifest {
  std::string command;
  std::string scenario_name;
  std::string scenario_path;
  std::string scenario_hash;  // fnv1a over the scenario file text
  std::string map_hash;       // fnv1a over the parsed map text
  std::uint64_t seed = 0;
  std::uint64_t suite_seed = 0;
  std::uint64_t scheduler_seed = 0;
  int episodes = 0;
  std::string checkpoint;
  std::vector<std::string> outputs;
};

Manifest make_manifest(const std::string& command, const ScenarioSpec& scenario,
                       std::uint64_t seed, int episodes);

void write_manifest(const std::filesystem::path& out_dir, const Manifest& manifest);

}  // namespace beliefnav::bench

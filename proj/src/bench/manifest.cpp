#include "beliefnav/bench/manifest.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "beliefnav/common/hash.hpp"

namespace beliefnav::bench {

Manifest make_manifest(const std::string& command, const ScenarioSpec& scenario,
                       std::uint64_t seed, int episodes) {
  Manifest m;
  m.command = command;
  m.scenario_name = scenario.name;
  m.scenario_path = scenario.source_path.string();
  std::ifstream in(scenario.source_path);
  if (in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    m.scenario_hash = to_hex(fnv1a64(buf.str()));
  }
  m.map_hash = to_hex(fnv1a64(scenario.map_text));
  m.seed = seed;
  m.suite_seed = scenario.suite_seed;
  m.scheduler_seed = scenario.scheduler_seed;
  m.episodes = episodes;
  return m;
}

void write_manifest(const std::filesystem::path& out_dir, const Manifest& manifest) {
  nlohmann::json j;
  j["command"] = manifest.command;
  j["scenario"] = {{"name", manifest.scenario_name},
                   {"path", manifest.scenario_path},
                   {"hash", manifest.scenario_hash},
                   {"map_hash", manifest.map_hash}};
  j["seeds"] = {{"run", manifest.seed},
                {"suite", manifest.suite_seed},
                {"scheduler", manifest.scheduler_seed}};
  j["episodes"] = manifest.episodes;
  if (!manifest.checkpoint.empty()) j["checkpoint"] = manifest.checkpoint;
  j["outputs"] = manifest.outputs;

  std::ofstream out(out_dir / "manifest.json");
  if (!out)
    throw std::runtime_error("cannot write manifest to " + out_dir.string());
  out << j.dump(2) << "\n";
}

}  // namespace beliefnav::bench

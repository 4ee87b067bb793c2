#include "beliefnav/bench/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "beliefnav/bench/mapgen.hpp"
#include "beliefnav/common/rng.hpp"

namespace beliefnav::bench {

using world::Cell;
using world::Placement;

namespace {

struct RawScenario {
  // section -> ordered (key, value) pairs
  std::vector<std::tuple<std::string, std::string, std::string>> entries;
};

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

RawScenario tokenize(const std::string& text) {
  RawScenario raw;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ScenarioError("scenario line " + std::to_string(line_no) +
                            ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ScenarioError("scenario line " + std::to_string(line_no) +
                          ": expected key = value");
    raw.entries.emplace_back(section, trim(line.substr(0, eq)),
                             trim(line.substr(eq + 1)));
  }
  return raw;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ScenarioError("scenario: bad number for " + key + ": '" + value + "'");
  }
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ScenarioError("scenario: bad integer for " + key + ": '" + value + "'");
  }
}

Placement parse_placement(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  Placement p;
  if (!(in >> p.class_index >> p.cell.row >> p.cell.col))
    throw ScenarioError("scenario: bad placement for " + key + ": '" + value +
                        "' (want: <class> <row> <col>)");
  std::string extra;
  if (in >> extra)
    throw ScenarioError("scenario: trailing tokens in placement '" + value + "'");
  return p;
}

}  // namespace

std::vector<Placement> ScenarioSpec::all_objects() const {
  std::vector<Placement> all = train_targets;
  all.insert(all.end(), eval_targets.begin(), eval_targets.end());
  all.insert(all.end(), clutter.begin(), clutter.end());
  return all;
}

void ScenarioSpec::validate() const {
  if (!map) throw ScenarioError("scenario: no map");
  if (class_count < 1) throw ScenarioError("scenario: classes must be >= 1");
  detector.validate();
  if (detector.class_count() != class_count)
    throw ScenarioError("scenario: detector confusion does not match class count");
  if (!(calibration.temperature > 0.0))
    throw ScenarioError("scenario: temperature must be > 0");
  if (k0 < 1) throw ScenarioError("scenario: k0 must be >= 1");
  training.validate();
  if (eval_targets.size() != 1)
    throw ScenarioError("scenario: exactly one held-out eval target is required");
  if (train_targets.empty())
    throw ScenarioError("scenario: at least one training target is required");
  if (eval_episodes < 1) throw ScenarioError("scenario: evaluation episodes must be >= 1");
  if (!(horizon_fraction > 0.0))
    throw ScenarioError("scenario: horizon_fraction must be > 0");
  if (!(confidence_threshold > 0.0 && confidence_threshold < 1.0))
    throw ScenarioError("scenario: confidence_threshold must be in (0,1)");

  std::set<std::pair<int, Cell>> seen;
  for (const auto& p : all_objects()) {
    if (p.class_index < 0 || p.class_index >= class_count)
      throw ScenarioError("scenario: placement class out of range");
    if (!map->in_bounds(p.cell) || !map->is_occupied(p.cell))
      throw ScenarioError("scenario: placement (" + std::to_string(p.cell.row) + "," +
                          std::to_string(p.cell.col) + ") is not an occupied cell");
    if (!seen.insert({p.class_index, p.cell}).second)
      throw ScenarioError("scenario: duplicate placement");
  }
  for (const auto& e : eval_targets) {
    for (const auto& t : train_targets)
      if (e.cell == t.cell)
        throw ScenarioError("scenario: eval target shares a cell with a train target");
  }
}

ScenarioSpec parse_scenario(const std::string& text,
                            const std::filesystem::path& base_dir,
                            const std::filesystem::path& source_path) {
  const RawScenario raw = tokenize(text);

  ScenarioSpec spec;
  spec.source_path = source_path;
  std::optional<GenMapParams> generate;
  std::optional<std::string> map_file;
  double confusion_diag = 0.85;

  for (const auto& [section, key, value] : raw.entries) {
    if (section.empty() && key == "name") {
      spec.name = value;
    } else if (section == "map" && key == "file") {
      map_file = value;
    } else if (section == "map" && key == "generate") {
      std::istringstream in(value);
      GenMapParams params;
      std::uint64_t seed = 0;
      if (!(in >> params.width >> params.height >> params.rooms >> seed))
        throw ScenarioError("scenario: bad generate spec '" + value +
                            "' (want: <width> <height> <rooms> <seed>)");
      params.seed = seed;
      generate = params;
    } else if (section == "detector" && key == "classes") {
      spec.class_count = static_cast<int>(parse_int(key, value));
    } else if (section == "detector" && key == "false_negative_rate") {
      spec.detector.false_negative_rate = parse_double(key, value);
    } else if (section == "detector" && key == "distance_decay") {
      spec.detector.distance_decay = parse_double(key, value);
    } else if (section == "detector" && key == "confusion_diag") {
      confusion_diag = parse_double(key, value);
    } else if (section == "detector" && key == "sharpness") {
      spec.detector.confidence_sharpness = parse_double(key, value);
    } else if (section == "detector" && key == "max_range") {
      spec.detector.max_range = static_cast<int>(parse_int(key, value));
    } else if (section == "detector" && key == "fov_deg") {
      spec.detector.fov_deg = parse_double(key, value);
    } else if (section == "detector" && key == "temperature") {
      spec.calibration.temperature = parse_double(key, value);
    } else if (section == "policy" && key == "k0") {
      spec.k0 = static_cast<int>(parse_int(key, value));
    } else if (section == "policy" && key == "w_entropy") {
      spec.weights.w_entropy = parse_double(key, value);
    } else if (section == "policy" && key == "w_distance") {
      spec.weights.w_distance = parse_double(key, value);
    } else if (section == "policy" && key == "w_posterior") {
      spec.weights.w_posterior = parse_double(key, value);
    } else if (section == "training" && key == "episodes") {
      spec.training.episodes = static_cast<int>(parse_int(key, value));
    } else if (section == "training" && key == "gamma") {
      spec.training.gamma = parse_double(key, value);
    } else if (section == "training" && key == "learning_rate") {
      spec.training.learning_rate = parse_double(key, value);
    } else if (section == "training" && key == "batch_size") {
      spec.training.batch_size = static_cast<int>(parse_int(key, value));
    } else if (section == "training" && key == "buffer_capacity") {
      spec.training.buffer_capacity = static_cast<std::size_t>(parse_int(key, value));
    } else if (section == "training" && key == "target_sync_every") {
      spec.training.target_sync_every = static_cast<int>(parse_int(key, value));
    } else if (section == "training" && key == "epsilon_start") {
      spec.training.epsilon_start = parse_double(key, value);
    } else if (section == "training" && key == "epsilon_end") {
      spec.training.epsilon_end = parse_double(key, value);
    } else if (section == "objects" && key == "train") {
      spec.train_targets.push_back(parse_placement(key, value));
    } else if (section == "objects" && key == "eval") {
      spec.eval_targets.push_back(parse_placement(key, value));
    } else if (section == "objects" && key == "clutter") {
      spec.clutter.push_back(parse_placement(key, value));
    } else if (section == "evaluation" && key == "episodes") {
      spec.eval_episodes = static_cast<int>(parse_int(key, value));
    } else if (section == "evaluation" && key == "horizon_fraction") {
      spec.horizon_fraction = parse_double(key, value);
    } else if (section == "evaluation" && key == "confidence_threshold") {
      spec.confidence_threshold = parse_double(key, value);
    } else if (section == "evaluation" && key == "suite_seed") {
      spec.suite_seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else if (section == "evaluation" && key == "scheduler_seed") {
      spec.scheduler_seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else {
      throw ScenarioError("scenario: unknown key '" + key + "' in section [" +
                          section + "]");
    }
  }

  if (map_file && generate)
    throw ScenarioError("scenario: [map] must set either file or generate, not both");
  if (map_file) {
    const auto path = base_dir / *map_file;
    std::ifstream in(path);
    if (!in) throw ScenarioError("scenario: cannot open map file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    spec.map_text = buf.str();
    spec.map = std::make_shared<world::GridMap>(world::load_map(spec.map_text));
  } else if (generate) {
    auto map = generate_map(generate->width, generate->height, generate->rooms,
                            generate->seed);
    spec.map_text = map.to_text();
    spec.map = std::make_shared<world::GridMap>(std::move(map));
  } else {
    throw ScenarioError("scenario: [map] needs a file or generate entry");
  }

  spec.detector.confusion =
      percept::DetectorModel::diagonal_confusion(spec.class_count, confusion_diag);
  spec.validate();
  return spec;
}

ScenarioSpec load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  auto spec = parse_scenario(buf.str(), path.parent_path(), path);
  if (spec.name.empty()) spec.name = path.stem().string();
  return spec;
}

std::vector<world::Pose> start_pose_suite(const world::GridMap& map, int count,
                                          std::uint64_t suite_seed) {
  Rng rng(suite_seed);
  const auto& free = map.free_cells();
  std::vector<world::Pose> poses;
  poses.reserve(count);
  for (int i = 0; i < count; ++i) {
    const Cell cell = free[rng.uniform_index(free.size())];
    const auto heading = static_cast<world::Heading>(rng.uniform_below(4));
    poses.push_back({cell, heading});
  }
  return poses;
}

}  // namespace beliefnav::bench

#include <doctest.h>

#include <deque>
#include <fstream>

#include "beliefnav/bench/mapgen.hpp"
#include "beliefnav/bench/runner.hpp"
#include "beliefnav/bench/search_env.hpp"
#include "oracles.hpp"

using namespace beliefnav;
using namespace beliefnav::bench;
using beliefnav::world::Cell;
using beliefnav::world::EpisodeStatus;
using beliefnav::world::Heading;
using beliefnav::world::Pose;

namespace {
const std::string kScenarioDir = BELIEFNAV_SCENARIO_DIR;

bool flood_fill_connected(const world::GridMap& map) {
  const auto& free = map.free_cells();
  std::set<Cell> seen{free.front()};
  std::deque<Cell> queue{free.front()};
  while (!queue.empty()) {
    const Cell cell = queue.front();
    queue.pop_front();
    constexpr int dr[4] = {-1, 1, 0, 0};
    constexpr int dc[4] = {0, 0, -1, 1};
    for (int i = 0; i < 4; ++i) {
      const Cell next{cell.row + dr[i], cell.col + dc[i]};
      if (!map.in_bounds(next) || map.is_occupied(next) || seen.count(next)) continue;
      seen.insert(next);
      queue.push_back(next);
    }
  }
  return seen.size() == free.size();
}
}  // namespace

TEST_CASE("generate_map: determinism, connectivity, degenerate room count") {
  const auto a = generate_map(16, 12, 4, 77);
  const auto b = generate_map(16, 12, 4, 77);
  CHECK(a.to_text() == b.to_text());

  Rng rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const int w = 8 + static_cast<int>(rng.uniform_below(20));
    const int h = 8 + static_cast<int>(rng.uniform_below(20));
    const int rooms = 1 + static_cast<int>(rng.uniform_below(6));
    const auto map = generate_map(w, h, rooms, rng.next_u64());
    CHECK(flood_fill_connected(map));
  }

  const auto open = generate_map(9, 9, 1, 5);
  CHECK(open.free_cells().size() == 7u * 7u);  // perimeter walls only
  CHECK_THROWS_AS(generate_map(4, 9, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_map(9, 9, 0, 1), std::invalid_argument);
}

TEST_CASE("bundled scenarios parse and validate") {
  const auto scenario = load_scenario(kScenarioDir + "/desk20.scn");
  CHECK(scenario.name == "desk20");
  CHECK(scenario.class_count == 4);
  CHECK(scenario.map->width() == 20);
  CHECK(scenario.k0 == 4);
  CHECK(scenario.weights.w_entropy == doctest::Approx(0.4));
  CHECK(scenario.weights.w_distance == doctest::Approx(0.5));
  CHECK(scenario.weights.w_posterior == doctest::Approx(0.1));
  CHECK(scenario.training.gamma == doctest::Approx(0.99));
  CHECK(scenario.training.learning_rate == doctest::Approx(1e-3));
  CHECK(scenario.training.batch_size == 64);
  CHECK(scenario.training.buffer_capacity == 50000);
  CHECK(scenario.training.target_sync_every == 2000);
  CHECK(scenario.training.episodes == 5000);
  CHECK(scenario.train_targets.size() == 3);
  CHECK(scenario.eval_targets.size() == 1);
  CHECK(scenario.eval_episodes == 100);
  CHECK(scenario.horizon_fraction == doctest::Approx(0.75));
  CHECK(scenario.confidence_threshold == doctest::Approx(0.8));
  for (const auto& other : {"suite30", "env1", "env2"})
    CHECK_NOTHROW(load_scenario(kScenarioDir + "/" + other + ".scn"));
}

TEST_CASE("scenario parser rejects bad input") {
  CHECK_THROWS_AS(parse_scenario("[map]\nbogus_key = 1\n", "."), ScenarioError);
  CHECK_THROWS_AS(parse_scenario("[map]\ngenerate = 10 10 1 1\n[objects]\n", "."),
                  ScenarioError);  // no objects at all
  // eval target colliding with a train target cell
  const auto preview = generate_map(10, 10, 1, 3);
  const auto cell = preview.occupied_cells().front();
  const std::string base =
      "[map]\ngenerate = 10 10 1 3\n[detector]\nclasses = 4\n[objects]\n";
  const std::string collide = base + "train = 0 " + std::to_string(cell.row) + " " +
                              std::to_string(cell.col) + "\n" + "eval = 3 " +
                              std::to_string(cell.row) + " " +
                              std::to_string(cell.col) + "\n";
  CHECK_THROWS_AS(parse_scenario(collide, "."), ScenarioError);
}

TEST_CASE("start_pose_suite is deterministic and lands on free cells") {
  const auto map = generate_map(14, 14, 3, 2);
  const auto a = start_pose_suite(map, 50, 999);
  const auto b = start_pose_suite(map, 50, 999);
  CHECK(a == b);
  CHECK(a.size() == 50);
  for (const auto& pose : a) CHECK(map.is_free(pose.cell));
}

TEST_CASE("records CSV round-trips exactly") {
  std::vector<RunRecord> records;
  Rng rng(5);
  for (int m = 0; m < 4; ++m)
    for (int e = 0; e < 7; ++e) {
      RunRecord r;
      r.method = static_cast<Method>(m);
      r.episode = e;
      r.outcome = rng.bernoulli(0.6) ? EpisodeStatus::success
                                     : EpisodeStatus::horizon_exhausted;
      r.primitives = static_cast<int>(rng.uniform_below(300));
      r.distance = r.primitives * 0.3 * rng.uniform();
      records.push_back(r);
    }
  const auto csv = records_to_csv(records);
  const auto parsed = records_from_csv(csv);
  CHECK(parsed == records);
  CHECK(records_to_csv(parsed) == csv);
}

TEST_CASE("joint_success_filter") {
  std::vector<RunRecord> records;
  const auto add = [&](Method m, int e, EpisodeStatus s) {
    records.push_back({m, e, s, 10, 1.0});
  };
  for (int e = 0; e < 4; ++e)
    for (const auto m : kAllMethods)
      add(m, e, EpisodeStatus::success);
  // method pcss fails episode 2; episode 3 fails for everyone
  records[2 * 4 + 1].outcome = EpisodeStatus::horizon_exhausted;
  for (int m = 0; m < 4; ++m) records[3 * 4 + m].outcome = EpisodeStatus::false_declaration;

  const auto joint = joint_success_filter(records);
  CHECK(joint == std::vector<int>{0, 1});

  // missing record -> input error
  auto incomplete = records;
  incomplete.pop_back();
  CHECK_THROWS_AS(joint_success_filter(incomplete), std::invalid_argument);

  // no common successes -> empty set
  auto bleak = records;
  for (auto& r : bleak)
    if (r.method == Method::rws) r.outcome = EpisodeStatus::horizon_exhausted;
  CHECK(joint_success_filter(bleak).empty());
}

TEST_CASE("aggregate computes SR over all episodes, efficiency over the subset") {
  std::vector<RunRecord> records;
  records.push_back({Method::rws, 0, EpisodeStatus::success, 10, 3.0});
  records.push_back({Method::rws, 1, EpisodeStatus::success, 14, 4.2});
  records.push_back({Method::rws, 2, EpisodeStatus::horizon_exhausted, 99, 29.7});
  records.push_back({Method::rws, 3, EpisodeStatus::success, 50, 15.0});

  const std::vector<int> subset{0, 1};
  const auto table = aggregate(records, subset);
  REQUIRE(table.rows.size() == 1);
  const auto& row = table.rows.front();
  CHECK(row.success_rate == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(row.subset_size == 2);
  CHECK(row.mean_actions == doctest::Approx(12.0).epsilon(1e-12));
  CHECK(row.se_actions == doctest::Approx(2.0).epsilon(1e-12));  // sd 2*sqrt(2), n 2

  // singleton subset: SE = 0 by convention
  const std::vector<int> single{3};
  const auto one = aggregate(records, single);
  CHECK(one.rows.front().se_actions == 0.0);
  CHECK(one.rows.front().mean_actions == doctest::Approx(50.0));
}

TEST_CASE("hand-computed 4x10 fixture reproduces exactly") {
  // protocol-fidelity fixture: outcomes and efficiency chosen so the joint
  // subset and the aggregates are hand-checkable
  std::vector<RunRecord> records;
  for (int e = 0; e < 10; ++e) {
    for (const auto m : kAllMethods) {
      RunRecord r;
      r.method = m;
      r.episode = e;
      // rws fails episodes 5..9; bbums fails episode 0; others always succeed
      const bool fail = (m == Method::rws && e >= 5) || (m == Method::bbums && e == 0);
      r.outcome = fail ? EpisodeStatus::horizon_exhausted : EpisodeStatus::success;
      r.primitives = 10 * (static_cast<int>(m) + 1) + e;
      r.distance = 0.5 * r.primitives;
      records.push_back(r);
    }
  }
  const auto joint = joint_success_filter(records);
  CHECK(joint == std::vector<int>{1, 2, 3, 4});

  const auto table = aggregate(records, joint);
  REQUIRE(table.rows.size() == 4);
  CHECK(table.rows[0].method == Method::rws);
  CHECK(table.rows[0].success_rate == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(table.rows[1].success_rate == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(table.rows[2].success_rate == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(table.rows[3].success_rate == doctest::Approx(1.0).epsilon(1e-12));
  // subset actions for rws are {11,12,13,14}: mean 12.5, sd = sqrt(5/3),
  // se = sqrt(5/3)/2
  CHECK(table.rows[0].mean_actions == doctest::Approx(12.5).epsilon(1e-12));
  CHECK(table.rows[0].se_actions ==
        doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0).epsilon(1e-12));
}

TEST_CASE("run_episode hits the horizon cap deterministically") {
  auto scenario = load_scenario(kScenarioDir + "/desk20.scn");
  // a horizon too short for any declaration (threshold needs ~25 frames)
  scenario.horizon_fraction = 0.02;  // floor(0.02 * 266) = 5 primitives
  const auto poses = start_pose_suite(*scenario.map, 4, scenario.suite_seed);
  for (int e = 0; e < 4; ++e) {
    const auto record = run_episode(Method::rws, scenario,
                                    scenario.eval_targets.front(), poses[e], e, 9,
                                    nullptr);
    CHECK(record.outcome == EpisodeStatus::horizon_exhausted);
    CHECK(record.primitives == world::horizon_for(*scenario.map, 0.02));
  }
}

TEST_CASE("identical (method, scenario, seed) runs give identical records") {
  auto scenario = load_scenario(kScenarioDir + "/desk20.scn");
  scenario.eval_episodes = 6;
  const auto a = run_suite(Method::pcss, scenario, 31, 6, nullptr);
  const auto b = run_suite(Method::pcss, scenario, 31, 6, nullptr);
  CHECK(a == b);
  const auto c = run_suite(Method::rws, scenario, 31, 6, nullptr);
  CHECK(a != c);
}

TEST_CASE("rws succeeds quickly when boxed in next to a visible target") {
  // single free cell surrounded by walls; the target sits directly north
  const auto map = world::load_map("###\n#.#\n###\n");
  world::EpisodeSpec spec;
  spec.map = &map;
  spec.target_class = 0;
  spec.target_cell = {0, 1};
  spec.start_pose = {{1, 1}, Heading::east};
  spec.horizon = 120;
  spec.confidence_threshold = 0.55;  // reachable within a handful of sightings
  spec.rng_seed = 77;
  spec.objects = {{0, {0, 1}}};

  percept::DetectorModel model;
  model.false_negative_rate = 0.01;
  model.distance_decay = 1.0;
  model.confusion = percept::DetectorModel::diagonal_confusion(4, 0.95);
  model.confidence_sharpness = 30.0;
  model.max_range = 3;

  SearchEnv env(model, {1.0});
  env.reset(spec, 1, 1);
  while (env.status() == EpisodeStatus::running)
    env.step_primitive(policies::rws_step(env.rng()));
  CHECK(env.status() == EpisodeStatus::success);
  CHECK(env.episode().primitives_executed < 120);
}

TEST_CASE("belief snapshot CSV has one row per map row") {
  const auto map = world::load_map("#..\n...\n..#\n");
  const auto belief = belief::BeliefMap::uniform(map, 2);
  const auto csv = belief.target_posterior_csv(0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == map.height());
}

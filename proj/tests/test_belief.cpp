#include <doctest.h>

#include <cmath>

#include "beliefnav/belief/belief_map.hpp"
#include "oracles.hpp"

using namespace beliefnav;
using namespace beliefnav::belief;
using beliefnav::world::Cell;

namespace {
percept::DetectorModel test_model(int k) {
  percept::DetectorModel m;
  m.false_negative_rate = 0.1;
  m.distance_decay = 1.0;
  m.confusion = percept::DetectorModel::diagonal_confusion(k, 0.85);
  m.confidence_sharpness = 6.0;
  m.max_range = 10;
  return m;
}
}  // namespace

TEST_CASE("uniform prior yields 1/(K+1) means on every occupied cell") {
  const auto map = world::load_map("##.\n.#.\n...\n");
  const auto belief = BeliefMap::uniform(map, 3);
  CHECK(belief.cell_count() == map.occupied_cells().size());
  for (const auto& cell : map.occupied_cells()) {
    const auto mean = belief.posterior_at(cell);
    for (double m : mean) CHECK(m == doctest::Approx(0.25).epsilon(1e-12));
  }
  const auto binary = BeliefMap::uniform(map, 1);
  const auto mean = binary.posterior_at({0, 0});
  CHECK(mean[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(mean[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("posterior_mean normalizes exactly") {
  const auto quarter = posterior_mean(std::vector<double>{1, 1, 1, 1});
  for (double m : quarter) CHECK(m == doctest::Approx(0.25).epsilon(1e-12));

  const auto pair = posterior_mean(std::vector<double>{3, 1});
  CHECK(pair[0] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(pair[1] == doctest::Approx(0.25).epsilon(1e-12));

  const auto four = posterior_mean(std::vector<double>{2, 4, 2, 2});
  CHECK(four[0] == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(four[1] == doctest::Approx(0.4).epsilon(1e-12));

  CHECK_THROWS_AS(posterior_mean(std::vector<double>{1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("kaplan_update hand cases") {
  const auto updated = kaplan_update(std::vector<double>{1, 1},
                                     percept::EvidenceVector({0.8, 0.2}));
  CHECK(updated[0] == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(updated[1] == doctest::Approx(1.0).epsilon(1e-12));
  const auto mean = posterior_mean(updated);
  CHECK(mean[0] == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(mean[1] == doctest::Approx(0.4).epsilon(1e-12));

  const auto fix4 = kaplan_update(std::vector<double>{1, 1, 1, 1},
                                  percept::EvidenceVector({0.25, 0.25, 0.25, 0.25}));
  for (double b : fix4) CHECK(b == 1.0);  // exact fixpoint

  const auto fix2 = kaplan_update(std::vector<double>{2, 2},
                                  percept::EvidenceVector({0.5, 0.5}));
  CHECK(fix2[0] == 2.0);
  CHECK(fix2[1] == 2.0);
}

TEST_CASE("kaplan_update is conservative next to conjugate counting") {
  const auto updated = kaplan_update(std::vector<double>{1, 1},
                                     percept::EvidenceVector({0.8, 0.2}));
  const double fused_mean = posterior_mean(updated)[0];
  const double conjugate_mean = (1.0 + 1.0) / (2.0 + 1.0);  // unit pseudo-count
  CHECK(fused_mean == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(fused_mean < conjugate_mean);
}

TEST_CASE("kaplan_update keeps strict positivity under fuzz") {
  Rng rng(123);
  for (int trial = 0; trial < 1000; ++trial) {
    const int k = 1 + static_cast<int>(rng.uniform_below(5));
    std::vector<double> beta(k + 1);
    for (auto& b : beta) b = std::exp(rng.uniform_in(std::log(1e-6), std::log(1e6)));
    std::vector<double> o(k + 1);
    double sum = 0.0;
    for (auto& x : o) {
      x = rng.uniform_in(0.01, 1.0);
      sum += x;
    }
    for (auto& x : o) x /= sum;
    const auto out = kaplan_update(beta, percept::EvidenceVector(o));
    for (double b : out) {
      CHECK(b > 0.0);
      CHECK(std::isfinite(b));
    }
    const auto oracle = oracles::oracle_kaplan(beta, o);
    for (std::size_t i = 0; i < out.size(); ++i)
      CHECK(out[i] == doctest::Approx(oracle[i]).epsilon(1e-12));
  }
}

TEST_CASE("uniform observations are an exact fixpoint for any beta") {
  Rng rng(321);
  for (int trial = 0; trial < 1000; ++trial) {
    const int k = 1 + static_cast<int>(rng.uniform_below(5));
    std::vector<double> beta(k + 1);
    for (auto& b : beta) b = std::exp(rng.uniform_in(std::log(1e-6), std::log(1e6)));
    const std::vector<double> o(k + 1, 1.0 / (k + 1));
    const auto out = kaplan_update(beta, percept::EvidenceVector(o));
    for (std::size_t i = 0; i < beta.size(); ++i)
      CHECK(std::abs(out[i] - beta[i]) <= 1e-12 * beta[i]);
  }
}

TEST_CASE("repeated fixed evidence drives the argmax class monotonically up") {
  Rng rng(777);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 1 + static_cast<int>(rng.uniform_below(4));
    std::vector<double> o(k + 1);
    double sum = 0.0;
    for (auto& x : o) {
      x = rng.uniform_in(0.01, 1.0);
      sum += x;
    }
    for (auto& x : o) x /= sum;
    // make the argmax unique by a clear margin
    const int argmax = static_cast<int>(rng.uniform_below(k + 1));
    o[argmax] += 0.5;
    sum = 1.5;
    for (auto& x : o) x /= sum;

    std::vector<double> beta(k + 1, 1.0);
    double last = oracles::oracle_posterior(beta, argmax);
    const double first = last;
    for (int step = 0; step < 200; ++step) {
      beta = kaplan_update(beta, percept::EvidenceVector(o));
      const double now = oracles::oracle_posterior(beta, argmax);
      CHECK(now >= last - 1e-15);
      last = now;
    }
    CHECK(last > first);
  }
  // a strong canonical case approaches 1
  std::vector<double> beta{1, 1, 1};
  const percept::EvidenceVector strong({0.9, 0.05, 0.05});
  for (int i = 0; i < 3000; ++i) beta = kaplan_update(beta, strong);
  CHECK(oracles::oracle_posterior(beta, 0) > 0.99);
}

TEST_CASE("apply_frame: empty frame, locality, and the iterated oracle") {
  const auto map = world::load_map("##.\n...\n..#\n");
  const auto model = test_model(3);
  auto belief = BeliefMap::uniform(map, 3);

  const auto params_snapshot = [&](const BeliefMap& b) {
    std::vector<std::vector<double>> all;
    for (const auto& cell : map.occupied_cells()) {
      const auto span = b.params_at(cell);
      all.emplace_back(span.begin(), span.end());
    }
    return all;
  };

  const auto before = params_snapshot(belief);
  apply_frame(belief, percept::Frame{}, model);
  CHECK(params_snapshot(belief) == before);

  // one detection touches exactly one cell
  percept::Frame frame;
  frame.detections.push_back({{0, 0}, percept::ClassProbVector({0.7, 0.2, 0.1})});
  apply_frame(belief, frame, model);
  const auto after = params_snapshot(belief);
  CHECK(after[0] != before[0]);
  for (std::size_t i = 1; i < after.size(); ++i) CHECK(after[i] == before[i]);

  // 50 repeated detections match the independent iteration oracle
  auto fresh = BeliefMap::uniform(map, 3);
  std::vector<double> oracle_beta(4, 1.0);
  const std::vector<double> p{0.7, 0.2, 0.1};
  for (int i = 0; i < 50; ++i) {
    apply_frame(fresh, frame, model);
    oracle_beta =
        oracles::oracle_kaplan(oracle_beta, oracles::oracle_positive_evidence(p));
  }
  const double impl = fresh.target_posterior_at({0, 0}, 0);
  const double expected = oracles::oracle_posterior(oracle_beta, 0);
  CHECK(impl == doctest::Approx(expected).epsilon(1e-12));
  // the conservative fusion crosses 0.8 here but stays below 0.9
  CHECK(impl > 0.8);
  CHECK(impl < 0.9);
}

TEST_CASE("apply_frame fuses detections before background, row-major") {
  const auto map = world::load_map("#.#\n...\n");
  const auto model = test_model(2);
  auto belief = BeliefMap::uniform(map, 2);

  percept::Frame frame;
  frame.detections.push_back({{0, 2}, percept::ClassProbVector({0.9, 0.1})});
  frame.detections.push_back({{0, 0}, percept::ClassProbVector({0.2, 0.8})});
  frame.background.push_back({{0, 0}, 0.6});
  apply_frame(belief, frame, model);

  // replicate by hand in the contract order
  std::vector<double> a{1, 1, 1};
  a = oracles::oracle_kaplan(a, oracles::oracle_positive_evidence({0.2, 0.8}));
  a = oracles::oracle_kaplan(
      a, oracles::oracle_background_evidence(0.6, model.false_negative_rate,
                                             model.distance_decay, 2));
  const auto got = belief.params_at({0, 0});
  for (int i = 0; i < 3; ++i) CHECK(got[i] == doctest::Approx(a[i]).epsilon(1e-12));
}

TEST_CASE("normalized_entropy") {
  CHECK(normalized_entropy(std::vector<double>{0.25, 0.25, 0.25, 0.25}) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(normalized_entropy(std::vector<double>{1.0, 0.0, 0.0}) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(normalized_entropy(std::vector<double>{0.75, 0.25}) ==
        doctest::Approx(0.8112781244591328).epsilon(1e-9));

  Rng rng(55);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 2 + static_cast<int>(rng.uniform_below(5));
    std::vector<double> p(k);
    double sum = 0.0;
    for (auto& x : p) {
      x = rng.uniform_in(0.0, 1.0);
      sum += x;
    }
    for (auto& x : p) x /= sum;
    const double h = normalized_entropy(p);
    CHECK(h >= 0.0);
    CHECK(h <= 1.0 + 1e-12);
  }
}

TEST_CASE("check_termination declares at the argmax cell") {
  const auto map = world::load_map("#..\n..#\n");
  const auto model = test_model(3);
  world::EpisodeSpec spec;
  spec.map = &map;
  spec.target_class = 0;
  spec.target_cell = {0, 0};
  spec.start_pose = {{0, 1}, world::Heading::north};
  spec.horizon = 10;
  spec.confidence_threshold = 0.8;
  spec.objects = {{0, {0, 0}}};

  auto belief = BeliefMap::uniform(map, 3);
  CHECK(check_termination(belief, spec).status == world::EpisodeStatus::running);

  percept::Frame target_frame;
  target_frame.detections.push_back({{0, 0}, percept::ClassProbVector({0.9, 0.05, 0.05})});
  for (int i = 0; i < 80; ++i) apply_frame(belief, target_frame, model);
  const auto success = check_termination(belief, spec);
  CHECK(success.status == world::EpisodeStatus::success);
  CHECK(success.declared_cell == Cell{0, 0});
  CHECK(success.confidence >= 0.8);

  // adversarial evidence at the wrong cell ends in a false declaration
  auto fooled = BeliefMap::uniform(map, 3);
  percept::Frame clutter_frame;
  clutter_frame.detections.push_back({{1, 2}, percept::ClassProbVector({0.9, 0.05, 0.05})});
  for (int i = 0; i < 80; ++i) apply_frame(fooled, clutter_frame, model);
  const auto failure = check_termination(fooled, spec);
  CHECK(failure.status == world::EpisodeStatus::false_declaration);
  CHECK(failure.declared_cell == Cell{1, 2});
}

TEST_CASE("overflow guard keeps parameters finite under very long streaks") {
  const auto map = world::load_map("#.\n");
  auto belief = BeliefMap::uniform(map, 2);
  const percept::EvidenceVector strong({0.85, 0.05, 0.1});
  for (int i = 0; i < 20000; ++i) belief.update_cell({0, 0}, strong);
  const auto params = belief.params_at({0, 0});
  for (double b : params) {
    CHECK(std::isfinite(b));
    CHECK(b > 0.0);
    CHECK(b < 1e13);
  }
  const double peak = belief.target_posterior_at({0, 0}, 0);
  CHECK(peak > 0.99);
  CHECK(peak <= 1.0);
}

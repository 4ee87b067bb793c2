#pragma once

#include <span>
#include <string>
#include <vector>

#include "beliefnav/world/episode.hpp"

namespace beliefnav::bench {

enum class Method : int { rws = 0, pcss = 1, bbums = 2, bbdps = 3 };

inline constexpr Method kAllMethods[] = {Method::rws, Method::pcss, Method::bbums,
                                         Method::bbdps};

const char* to_string(Method m);
Method method_from_string(const std::string& s);

struct RunRecord {
  Method method = Method::rws;
  int episode = 0;
  world::EpisodeStatus outcome = world::EpisodeStatus::running;
  int primitives = 0;
  double distance = 0.0;  // meters

  bool operator==(const RunRecord&) const = default;
};

// records CSV: header + one row per record, stable field order.
std::string records_to_csv(std::span<const RunRecord> records);
std::vector<RunRecord> records_from_csv(const std::string& csv);

// Episode indices on which every method present in `records` succeeded.
// Every method must have a record for every episode index.
std::vector<int> joint_success_filter(std::span<const RunRecord> records);

struct MethodMetrics {
  Method method = Method::rws;
  std::size_t episodes = 0;     // all episodes (the SR denominator)
  double success_rate = 0.0;
  std::size_t subset_size = 0;  // efficiency denominator
  double mean_actions = 0.0;
  double se_actions = 0.0;
  double mean_distance = 0.0;
  double se_distance = 0.0;
};

struct MetricsTable {
  std::vector<MethodMetrics> rows;  // method order of first appearance
};

// SR over all episodes; mean +- standard error (sample sd / sqrt(n), 0 when
// n <= 1) of actions and distance over the episode subset only.
MetricsTable aggregate(std::span<const RunRecord> records, std::span<const int> subset);

std::string metrics_to_csv(const MetricsTable& table);
std::string metrics_to_text(const MetricsTable& table);

}  // namespace beliefnav::bench

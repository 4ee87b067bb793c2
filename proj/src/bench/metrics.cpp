#include "beliefnav/bench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace beliefnav::bench {

using world::EpisodeStatus;

const char* to_string(Method m) {
  switch (m) {
    case Method::rws: return "rws";
    case Method::pcss: return "pcss";
    case Method::bbums: return "bbums";
    case Method::bbdps: return "bbdps";
  }
  return "?";
}

Method method_from_string(const std::string& s) {
  for (Method m : kAllMethods)
    if (s == to_string(m)) return m;
  throw std::invalid_argument("unknown method: " + s);
}

std::string records_to_csv(std::span<const RunRecord> records) {
  std::ostringstream out;
  out << "method,episode,outcome,actions,distance\n";
  out << std::setprecision(17);
  for (const auto& r : records)
    out << to_string(r.method) << ',' << r.episode << ',' << to_string(r.outcome)
        << ',' << r.primitives << ',' << r.distance << "\n";
  return out.str();
}

std::vector<RunRecord> records_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::vector<RunRecord> records;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      if (line != "method,episode,outcome,actions,distance")
        throw std::invalid_argument("records CSV: unexpected header: " + line);
      header = false;
      continue;
    }
    std::istringstream row(line);
    std::string field;
    RunRecord r;
    std::getline(row, field, ',');
    r.method = method_from_string(field);
    std::getline(row, field, ',');
    r.episode = std::stoi(field);
    std::getline(row, field, ',');
    r.outcome = world::episode_status_from_string(field);
    std::getline(row, field, ',');
    r.primitives = std::stoi(field);
    if (!std::getline(row, field, ','))
      throw std::invalid_argument("records CSV: short row: " + line);
    r.distance = std::stod(field);
    records.push_back(r);
  }
  return records;
}

std::vector<int> joint_success_filter(std::span<const RunRecord> records) {
  std::map<Method, std::map<int, EpisodeStatus>> by_method;
  std::set<int> episodes;
  for (const auto& r : records) {
    auto [it, inserted] = by_method[r.method].emplace(r.episode, r.outcome);
    if (!inserted)
      throw std::invalid_argument("joint_success_filter: duplicate record for " +
                                  std::string(to_string(r.method)) + " episode " +
                                  std::to_string(r.episode));
    episodes.insert(r.episode);
  }
  if (by_method.empty()) throw std::invalid_argument("joint_success_filter: no records");
  for (const auto& [method, rows] : by_method)
    for (int e : episodes)
      if (!rows.count(e))
        throw std::invalid_argument("joint_success_filter: missing record for " +
                                    std::string(to_string(method)) + " episode " +
                                    std::to_string(e));

  std::vector<int> joint;
  for (int e : episodes) {
    const bool all = std::all_of(by_method.begin(), by_method.end(), [&](const auto& kv) {
      return kv.second.at(e) == EpisodeStatus::success;
    });
    if (all) joint.push_back(e);
  }
  return joint;
}

namespace {
struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_se(const std::vector<double>& values) {
  MeanSe out;
  const std::size_t n = values.size();
  if (n == 0) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / n;
  if (n <= 1) return out;  // SE = 0 by convention
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  out.se = std::sqrt(ss / (n - 1)) / std::sqrt(static_cast<double>(n));
  return out;
}
}  // namespace

MetricsTable aggregate(std::span<const RunRecord> records, std::span<const int> subset) {
  const std::set<int> subset_set(subset.begin(), subset.end());

  std::vector<Method> order;
  std::map<Method, std::vector<const RunRecord*>> by_method;
  for (const auto& r : records) {
    if (!by_method.count(r.method)) order.push_back(r.method);
    by_method[r.method].push_back(&r);
  }

  MetricsTable table;
  for (Method m : order) {
    const auto& rows = by_method[m];
    MethodMetrics metrics;
    metrics.method = m;
    metrics.episodes = rows.size();
    std::size_t successes = 0;
    std::vector<double> actions, distances;
    for (const auto* r : rows) {
      if (r->outcome == EpisodeStatus::success) ++successes;
      if (subset_set.count(r->episode)) {
        actions.push_back(r->primitives);
        distances.push_back(r->distance);
      }
    }
    metrics.success_rate =
        rows.empty() ? 0.0 : static_cast<double>(successes) / rows.size();
    metrics.subset_size = actions.size();
    const auto a = mean_se(actions);
    const auto d = mean_se(distances);
    metrics.mean_actions = a.mean;
    metrics.se_actions = a.se;
    metrics.mean_distance = d.mean;
    metrics.se_distance = d.se;
    table.rows.push_back(metrics);
  }
  return table;
}

std::string metrics_to_csv(const MetricsTable& table) {
  std::ostringstream out;
  out << "method,episodes,success_rate,subset_size,mean_actions,se_actions,"
         "mean_distance,se_distance\n";
  out << std::setprecision(17);
  for (const auto& r : table.rows)
    out << to_string(r.method) << ',' << r.episodes << ',' << r.success_rate << ','
        << r.subset_size << ',' << r.mean_actions << ',' << r.se_actions << ','
        << r.mean_distance << ',' << r.se_distance << "\n";
  return out.str();
}

std::string metrics_to_text(const MetricsTable& table) {
  std::ostringstream out;
  out << std::left << std::setw(8) << "method" << std::right << std::setw(6) << "SR"
      << std::setw(10) << "n" << std::setw(18) << "actions" << std::setw(20)
      << "distance (m)" << "   (efficiency over " << "joint-success subset)\n";
  for (const auto& r : table.rows) {
    std::ostringstream actions, distance;
    actions << std::fixed << std::setprecision(2) << r.mean_actions << " +- "
            << r.se_actions;
    distance << std::fixed << std::setprecision(2) << r.mean_distance << " +- "
             << r.se_distance;
    out << std::left << std::setw(8) << to_string(r.method) << std::right
        << std::setw(6) << std::fixed << std::setprecision(2) << r.success_rate
        << std::setw(10) << r.subset_size << std::setw(18) << actions.str()
        << std::setw(20) << distance.str() << "\n";
  }
  return out.str();
}

}  // namespace beliefnav::bench

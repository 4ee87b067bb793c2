#include "beliefnav/belief/belief_map.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace beliefnav::belief {

using world::Cell;

namespace {
constexpr double kOverflowGuard = 1e12;

void check_beta(std::span<const double> beta) {
  if (beta.size() < 2) throw std::invalid_argument("beta: needs K+1 >= 2 entries");
  for (double b : beta)
    if (!(b > 0.0) || !std::isfinite(b))
      throw std::invalid_argument("beta: entries must be positive and finite");
}
}  // namespace

std::vector<double> posterior_mean(std::span<const double> beta) {
  check_beta(beta);
  double sum = 0.0;
  for (double b : beta) sum += b;
  std::vector<double> mean(beta.size());
  for (std::size_t k = 0; k < beta.size(); ++k) mean[k] = beta[k] / sum;
  return mean;
}

std::vector<double> kaplan_update(std::span<const double> beta,
                                  const percept::EvidenceVector& o) {
  check_beta(beta);
  if (o.values().size() != beta.size())
    throw std::invalid_argument("kaplan_update: dimension mismatch");

  double s = 0.0;
  for (std::size_t j = 0; j < beta.size(); ++j) s += beta[j] * o[static_cast<int>(j)];
  const double o_min = *std::min_element(o.values().begin(), o.values().end());

  std::vector<double> out(beta.size());
  for (std::size_t k = 0; k < beta.size(); ++k)
    out[k] = beta[k] * (s + o[static_cast<int>(k)]) / (s + o_min);
  return out;
}

double normalized_entropy(std::span<const double> posterior) {
  double h = 0.0;
  for (double p : posterior) {
    if (p < 0.0 || p > 1.0 + 1e-12)
      throw std::invalid_argument("normalized_entropy: invalid posterior entry");
    if (p > 0.0) h -= p * std::log(p);
  }
  return h / std::log(static_cast<double>(posterior.size()));
}

BeliefMap::BeliefMap(const world::GridMap& map, int class_count)
    : map_(&map), class_count_(class_count) {
  if (class_count < 1) throw std::invalid_argument("BeliefMap: K must be >= 1");
  slot_of_cell_.assign(map.cell_count(), -1);
  int slot = 0;
  for (const Cell& cell : map.occupied_cells()) slot_of_cell_[map.index(cell)] = slot++;
  params_.assign(static_cast<std::size_t>(slot) * (class_count + 1), 1.0);
}

BeliefMap BeliefMap::uniform(const world::GridMap& map, int class_count) {
  return BeliefMap(map, class_count);
}

std::span<const double> BeliefMap::params_at(Cell cell) const {
  const int slot = slot_of_cell_[map_->index(cell)];
  if (slot < 0) throw std::invalid_argument("BeliefMap: cell is not occupied");
  return {params_.data() + static_cast<std::size_t>(slot) * (class_count_ + 1),
          static_cast<std::size_t>(class_count_ + 1)};
}

std::span<double> BeliefMap::mutable_params_at(Cell cell) {
  const int slot = slot_of_cell_[map_->index(cell)];
  if (slot < 0) throw std::invalid_argument("BeliefMap: cell is not occupied");
  return {params_.data() + static_cast<std::size_t>(slot) * (class_count_ + 1),
          static_cast<std::size_t>(class_count_ + 1)};
}

std::vector<double> BeliefMap::posterior_at(Cell cell) const {
  return posterior_mean(params_at(cell));
}

double BeliefMap::target_posterior_at(Cell cell, int target_class) const {
  const auto beta = params_at(cell);
  double sum = 0.0;
  for (double b : beta) sum += b;
  return beta[target_class] / sum;
}

double BeliefMap::entropy_at(Cell cell) const {
  return normalized_entropy(posterior_at(cell));
}

void BeliefMap::update_cell(Cell cell, const percept::EvidenceVector& o) {
  auto beta = mutable_params_at(cell);
  const auto updated = kaplan_update(beta, o);
  std::copy(updated.begin(), updated.end(), beta.begin());
  if (*std::max_element(beta.begin(), beta.end()) > kOverflowGuard) {
    const double lo = *std::min_element(beta.begin(), beta.end());
    for (double& b : beta) b /= lo;
  }
}

std::string BeliefMap::target_posterior_csv(int target_class) const {
  std::ostringstream out;
  for (int r = 0; r < map_->height(); ++r) {
    for (int c = 0; c < map_->width(); ++c) {
      if (c) out << ",";
      const Cell cell{r, c};
      out << (map_->is_occupied(cell) ? target_posterior_at(cell, target_class) : 0.0);
    }
    out << "\n";
  }
  return out.str();
}

void apply_frame(BeliefMap& belief, const percept::Frame& frame,
                 const percept::DetectorModel& model) {
  auto detections = frame.detections;
  std::stable_sort(detections.begin(), detections.end(),
                   [](const auto& a, const auto& b) { return a.cell < b.cell; });
  for (const auto& det : detections)
    belief.update_cell(det.cell, percept::positive_evidence(det.probs));

  auto background = frame.background;
  std::stable_sort(background.begin(), background.end(),
                   [](const auto& a, const auto& b) { return a.cell < b.cell; });
  for (const auto& bg : background)
    belief.update_cell(bg.cell, percept::background_evidence(bg.distance_m, model,
                                                             belief.class_count()));
}

TerminationCheck check_termination(const BeliefMap& belief,
                                   const world::EpisodeSpec& spec) {
  TerminationCheck check;
  for (const Cell& cell : belief.map().occupied_cells()) {
    const double p = belief.target_posterior_at(cell, spec.target_class);
    if (p > check.confidence) {  // strict > keeps the row-major argmax on ties
      check.confidence = p;
      check.declared_cell = cell;
    }
  }
  if (check.confidence >= spec.confidence_threshold) {
    check.status = check.declared_cell == spec.target_cell
                       ? world::EpisodeStatus::success
                       : world::EpisodeStatus::false_declaration;
  }
  return check;
}

}  // namespace beliefnav::belief

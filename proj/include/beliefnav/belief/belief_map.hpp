#pragma once

#include <span>
#include <vector>

#include "beliefnav/percept/detector.hpp"

namespace beliefnav::belief {

// Posterior mean categorical distribution of a cell's Dirichlet parameters:
// mean_k = beta_k / sum(beta).
std::vector<double> posterior_mean(std::span<const double> beta);

// Conservative Dirichlet fusion of an observation simplex vector:
//   beta+_k = beta_k * (S + o_k) / (S + min_i o_i),  S = sum_j beta_j o_j.
// Strictly positive for valid inputs; exactly a no-op for uniform o.
std::vector<double> kaplan_update(std::span<const double> beta,
                                  const percept::EvidenceVector& o);

// H = -sum_k pi_k ln pi_k / ln(K+1); zero entries contribute zero.
double normalized_entropy(std::span<const double> posterior);

// Dirichlet parameter vectors over the occupied cells of a grid map.
class BeliefMap {
 public:
  // Uniform prior: beta = 1 at every occupied cell.
  static BeliefMap uniform(const world::GridMap& map, int class_count);

  const world::GridMap& map() const { return *map_; }
  int class_count() const { return class_count_; }
  std::size_t cell_count() const { return map_->occupied_cells().size(); }

  std::span<const double> params_at(world::Cell cell) const;
  std::vector<double> posterior_at(world::Cell cell) const;
  double target_posterior_at(world::Cell cell, int target_class) const;
  double entropy_at(world::Cell cell) const;

  // Kaplan-fuses one observation into one occupied cell, rescaling the
  // parameter vector by its minimum entry if any entry exceeds 1e12
  // (posterior means are scale-invariant).
  void update_cell(world::Cell cell, const percept::EvidenceVector& o);

  // Target-class posterior means as a CSV grid (free cells print 0).
  std::string target_posterior_csv(int target_class) const;

 private:
  BeliefMap(const world::GridMap& map, int class_count);

  std::span<double> mutable_params_at(world::Cell cell);

  const world::GridMap* map_;
  int class_count_;
  std::vector<double> params_;    // occupied-cell-major, stride K+1
  std::vector<int> slot_of_cell_; // grid index -> occupied slot, -1 for free
};

// Fuses a frame: detections first, then background cells, each in row-major
// cell order, so traces replay bit-for-bit.
void apply_frame(BeliefMap& belief, const percept::Frame& frame,
                 const percept::DetectorModel& model);

struct TerminationCheck {
  world::EpisodeStatus status = world::EpisodeStatus::running;
  world::Cell declared_cell;  // meaningful unless running
  double confidence = 0.0;    // peak target-class posterior
};

// Declares at the argmax cell once the target-class posterior mean reaches
// tau; success iff the declared cell is the true target cell.
TerminationCheck check_termination(const BeliefMap& belief,
                                   const world::EpisodeSpec& spec);

}  // namespace beliefnav::belief

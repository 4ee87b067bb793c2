#pragma once

#include <span>
#include <vector>

#include "beliefnav/world/grid_map.hpp"

namespace beliefnav::percept {

// Calibrated class-probability vector over K object classes (a point on the
// K-1 simplex).
class ClassProbVector {
 public:
  explicit ClassProbVector(std::vector<double> probs);

  int class_count() const { return static_cast<int>(probs_.size()); }
  double operator[](int k) const { return probs_[k]; }
  const std::vector<double>& values() const { return probs_; }

 private:
  std::vector<double> probs_;
};

// Cell-level observation over K object classes plus background; strictly
// positive and summing to one, as the fusion rule requires.
class EvidenceVector {
 public:
  explicit EvidenceVector(std::vector<double> values);

  int class_count() const { return static_cast<int>(values_.size()) - 1; }
  double operator[](int k) const { return values_[k]; }
  double background() const { return values_.back(); }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

struct CalibrationConfig {
  double temperature = 1.0;  // T > 0
};

// probs_k proportional to exp(logits_k / T); stable under logit shifts.
ClassProbVector temperature_softmax(std::span<const double> logits,
                                    const CalibrationConfig& cal);

// Detection evidence: o_k = p_k * K/(K+1), o_bg = 1/(K+1).
EvidenceVector positive_evidence(const ClassProbVector& p);

struct DetectorModel {
  double false_negative_rate = 0.1;  // eta in [0,1)
  double distance_decay = 1.0;       // lambda > 0, per meter
  std::vector<double> confusion;     // K x K row-stochastic, row-major
  double confidence_sharpness = 6.0; // logit scale at distance zero
  int max_range = 10;                // cells
  double fov_deg = 90.0;

  int class_count() const;
  double confusion_at(int truth, int reported) const;
  void validate() const;

  // Row-stochastic confusion with `diag` on the diagonal and the remaining
  // mass spread uniformly off it.
  static std::vector<double> diagonal_confusion(int class_count, double diag);
};

// No-detection evidence for a visible occupied cell at 2D distance rho
// (meters): o_bg = (1-eta)/(1+lambda*rho), remainder uniform over classes.
EvidenceVector background_evidence(double distance_m, const DetectorModel& model,
                                   int class_count);

}  // namespace beliefnav::percept

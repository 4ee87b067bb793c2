#include "beliefnav/percept/evidence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace beliefnav::percept {

namespace {
constexpr double kSumTolerance = 1e-9;

void check_simplex_sum(const std::vector<double>& v, const char* what) {
  double sum = 0.0;
  for (double x : v) {
    if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + ": non-finite entry");
    sum += x;
  }
  if (std::abs(sum - 1.0) > kSumTolerance)
    throw std::invalid_argument(std::string(what) + ": entries must sum to 1");
}
}  // namespace

ClassProbVector::ClassProbVector(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw std::invalid_argument("ClassProbVector: K must be >= 1");
  for (double p : probs_)
    if (p < 0.0) throw std::invalid_argument("ClassProbVector: negative entry");
  check_simplex_sum(probs_, "ClassProbVector");
}

EvidenceVector::EvidenceVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) throw std::invalid_argument("EvidenceVector: needs K+1 >= 2 entries");
  for (double v : values_)
    if (!(v > 0.0)) throw std::invalid_argument("EvidenceVector: entries must be > 0");
  check_simplex_sum(values_, "EvidenceVector");
}

ClassProbVector temperature_softmax(std::span<const double> logits,
                                    const CalibrationConfig& cal) {
  if (logits.empty()) throw std::invalid_argument("temperature_softmax: empty logits");
  if (!(cal.temperature > 0.0))
    throw std::invalid_argument("temperature_softmax: temperature must be > 0");
  for (double l : logits)
    if (!std::isfinite(l)) throw std::invalid_argument("temperature_softmax: non-finite logit");

  const double top = *std::max_element(logits.begin(), logits.end());
  std::vector<double> probs(logits.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < logits.size(); ++k) {
    probs[k] = std::exp((logits[k] - top) / cal.temperature);
    sum += probs[k];
  }
  for (double& p : probs) p /= sum;
  return ClassProbVector(std::move(probs));
}

EvidenceVector positive_evidence(const ClassProbVector& p) {
  const int k_count = p.class_count();
  const double scale = static_cast<double>(k_count) / (k_count + 1);
  std::vector<double> o(k_count + 1);
  for (int k = 0; k < k_count; ++k) o[k] = p[k] * scale;
  o[k_count] = 1.0 / (k_count + 1);
  return EvidenceVector(std::move(o));
}

EvidenceVector background_evidence(double distance_m, const DetectorModel& model,
                                   int class_count) {
  if (distance_m < 0.0) throw std::invalid_argument("background_evidence: negative distance");
  const double o_bg =
      (1.0 - model.false_negative_rate) / (1.0 + model.distance_decay * distance_m);
  std::vector<double> o(class_count + 1);
  for (int k = 0; k < class_count; ++k) o[k] = (1.0 - o_bg) / class_count;
  o[class_count] = o_bg;
  return EvidenceVector(std::move(o));
}

int DetectorModel::class_count() const {
  int k = 0;
  while (static_cast<std::size_t>(k) * k < confusion.size()) ++k;
  return k;
}

double DetectorModel::confusion_at(int truth, int reported) const {
  return confusion[static_cast<std::size_t>(truth) * class_count() + reported];
}

void DetectorModel::validate() const {
  if (!(false_negative_rate >= 0.0 && false_negative_rate < 1.0))
    throw std::invalid_argument("DetectorModel: eta must be in [0,1)");
  if (!(distance_decay > 0.0))
    throw std::invalid_argument("DetectorModel: lambda must be > 0");
  if (!(confidence_sharpness > 0.0))
    throw std::invalid_argument("DetectorModel: sharpness must be > 0");
  if (max_range < 1) throw std::invalid_argument("DetectorModel: max_range must be >= 1");
  const int k = class_count();
  if (k < 1 || static_cast<std::size_t>(k) * k != confusion.size())
    throw std::invalid_argument("DetectorModel: confusion must be a square matrix");
  for (int row = 0; row < k; ++row) {
    double sum = 0.0;
    for (int col = 0; col < k; ++col) {
      const double v = confusion_at(row, col);
      if (v < 0.0) throw std::invalid_argument("DetectorModel: negative confusion entry");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw std::invalid_argument("DetectorModel: confusion rows must sum to 1");
  }
}

std::vector<double> DetectorModel::diagonal_confusion(int class_count, double diag) {
  if (class_count < 1) throw std::invalid_argument("diagonal_confusion: K must be >= 1");
  if (!(diag > 0.0 && diag <= 1.0))
    throw std::invalid_argument("diagonal_confusion: diag must be in (0,1]");
  std::vector<double> m(static_cast<std::size_t>(class_count) * class_count);
  const double off = class_count > 1 ? (1.0 - diag) / (class_count - 1) : 0.0;
  for (int r = 0; r < class_count; ++r)
    for (int c = 0; c < class_count; ++c)
      m[static_cast<std::size_t>(r) * class_count + c] = (r == c) ? (class_count > 1 ? diag : 1.0) : off;
  return m;
}

}  // namespace beliefnav::percept

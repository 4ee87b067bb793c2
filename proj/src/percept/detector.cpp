#include "beliefnav/percept/detector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace beliefnav::percept {

using world::Cell;

Cell snap_to_occupied(const world::GridMap& map, Cell cell) {
  if (!map.in_bounds(cell)) throw std::invalid_argument("snap_to_occupied: out of bounds");
  if (map.is_occupied(cell)) return cell;
  Cell best{};
  long long best_d2 = -1;
  for (const Cell& occ : map.occupied_cells()) {  // row-major, so ties pick the
    const long long dr = occ.row - cell.row;      // lexicographically smaller cell
    const long long dc = occ.col - cell.col;
    const long long d2 = dr * dr + dc * dc;
    if (best_d2 < 0 || d2 < best_d2) {
      best_d2 = d2;
      best = occ;
    }
  }
  return best;
}

Frame simulate_frame(const world::GridMap& map, const world::Pose& pose,
                     const world::EpisodeSpec& spec, const DetectorModel& model,
                     const CalibrationConfig& cal, Rng& rng) {
  model.validate();
  const int k_count = model.class_count();

  const auto visible = world::visible_cells(map, pose, model.fov_deg, model.max_range);

  Frame frame;
  for (const Cell& cell : visible) {
    if (!map.is_occupied(cell)) continue;
    const double rho = std::hypot(cell.row - pose.cell.row, cell.col - pose.cell.col) *
                       map.cell_size();
    bool detected = false;
    for (const auto& obj : spec.objects) {
      if (obj.cell != cell) continue;
      if (rng.uniform() < model.false_negative_rate) continue;  // missed
      const double scale = model.confidence_sharpness /
                           (1.0 + model.distance_decay * rho);
      std::vector<double> logits(k_count);
      for (int k = 0; k < k_count; ++k)
        logits[k] = scale * model.confusion_at(obj.class_index, k);
      frame.detections.push_back({cell, temperature_softmax(logits, cal)});
      detected = true;
    }
    if (!detected) frame.background.push_back({cell, rho});
  }
  return frame;
}

}  // namespace beliefnav::percept

#pragma once

#include "beliefnav/common/rng.hpp"
#include "beliefnav/percept/evidence.hpp"
#include "beliefnav/world/episode.hpp"
#include "beliefnav/world/visibility.hpp"

namespace beliefnav::percept {

struct Detection {
  world::Cell cell;  // occupied cell the detection maps to
  ClassProbVector probs;
};

struct BackgroundCell {
  world::Cell cell;
  double distance_m = 0.0;  // robot-to-cell-center 2D distance
};

// One sensing step: calibrated detections plus the visible occupied cells
// that produced none.
struct Frame {
  std::vector<Detection> detections;
  std::vector<BackgroundCell> background;
};

// The occupied cell whose center is nearest to `cell` (Euclidean, ties by
// (row, col) order); identity when `cell` is already occupied.
world::Cell snap_to_occupied(const world::GridMap& map, world::Cell cell);

// Synthetic calibrated detector. Each visible object is detected with
// probability 1-eta; a detection's logits are the object's confusion row
// scaled by sharpness/(1 + lambda*rho), then passed through the calibrated
// softmax. Visible occupied cells without detections become background
// evidence sites. Cells are processed in row-major order so the RNG stream
// is reproducible.
Frame simulate_frame(const world::GridMap& map, const world::Pose& pose,
                     const world::EpisodeSpec& spec, const DetectorModel& model,
                     const CalibrationConfig& cal, Rng& rng);

}  // namespace beliefnav::percept

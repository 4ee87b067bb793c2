#pragma once

#include <cstdint>

#include "beliefnav/world/grid_map.hpp"

namespace beliefnav::bench {

class MapGenError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Procedural floorplan: walled perimeter, recursive axis-aligned room splits
// with one-cell door gaps. All free cells are mutually reachable (verified
// by flood fill; bounded retries before giving up). Deterministic per seed.
world::GridMap generate_map(int width, int height, int rooms, std::uint64_t seed,
                            double cell_size_m = 0.30);

}  // namespace beliefnav::bench

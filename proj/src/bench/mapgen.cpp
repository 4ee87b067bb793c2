#include "beliefnav/bench/mapgen.hpp"

#include <algorithm>
#include <deque>

#include "beliefnav/common/rng.hpp"

namespace beliefnav::bench {

using world::Cell;

namespace {

// Inclusive interior rectangle of a room (walls excluded).
struct Room {
  int r0, r1, c0, c1;
  int area() const { return (r1 - r0 + 1) * (c1 - c0 + 1); }
  bool splittable_vertically() const { return c1 - c0 + 1 >= 5; }
  bool splittable_horizontally() const { return r1 - r0 + 1 >= 5; }
};

bool all_free_connected(const std::vector<std::uint8_t>& occupied, int width,
                        int height) {
  const auto idx = [&](int r, int c) { return static_cast<std::size_t>(r) * width + c; };
  std::size_t free_total = 0;
  int sr = -1, sc = -1;
  for (int r = 0; r < height; ++r)
    for (int c = 0; c < width; ++c)
      if (!occupied[idx(r, c)]) {
        ++free_total;
        if (sr < 0) {
          sr = r;
          sc = c;
        }
      }
  if (free_total == 0) return false;

  std::vector<std::uint8_t> seen(occupied.size(), 0);
  std::deque<Cell> queue{{sr, sc}};
  seen[idx(sr, sc)] = 1;
  std::size_t reached = 0;
  while (!queue.empty()) {
    const Cell cell = queue.front();
    queue.pop_front();
    ++reached;
    constexpr int dr[4] = {-1, 1, 0, 0};
    constexpr int dc[4] = {0, 0, -1, 1};
    for (int i = 0; i < 4; ++i) {
      const int r = cell.row + dr[i];
      const int c = cell.col + dc[i];
      if (r < 0 || r >= height || c < 0 || c >= width) continue;
      if (occupied[idx(r, c)] || seen[idx(r, c)]) continue;
      seen[idx(r, c)] = 1;
      queue.push_back({r, c});
    }
  }
  return reached == free_total;
}

bool try_generate(int width, int height, int rooms, std::uint64_t seed,
                  std::vector<std::uint8_t>& occupied) {
  Rng rng(seed);
  const auto idx = [&](int r, int c) { return static_cast<std::size_t>(r) * width + c; };
  occupied.assign(static_cast<std::size_t>(width) * height, 0);
  for (int r = 0; r < height; ++r) occupied[idx(r, 0)] = occupied[idx(r, width - 1)] = 1;
  for (int c = 0; c < width; ++c) occupied[idx(0, c)] = occupied[idx(height - 1, c)] = 1;

  std::vector<Room> open{{1, height - 2, 1, width - 2}};
  while (static_cast<int>(open.size()) < rooms) {
    // Split the largest still-splittable room.
    int pick = -1;
    for (std::size_t i = 0; i < open.size(); ++i) {
      if (!open[i].splittable_vertically() && !open[i].splittable_horizontally())
        continue;
      if (pick < 0 || open[i].area() > open[pick].area()) pick = static_cast<int>(i);
    }
    if (pick < 0) return false;  // nothing left to split

    Room room = open[pick];
    open.erase(open.begin() + pick);
    bool vertical;
    if (!room.splittable_vertically())
      vertical = false;
    else if (!room.splittable_horizontally())
      vertical = true;
    else if (room.c1 - room.c0 != room.r1 - room.r0)
      vertical = room.c1 - room.c0 > room.r1 - room.r0;  // split the longer axis
    else
      vertical = rng.bernoulli(0.5);

    if (vertical) {
      const int wall = room.c0 + 2 + static_cast<int>(rng.uniform_below(room.c1 - room.c0 - 3));
      const int door = room.r0 + static_cast<int>(rng.uniform_below(room.r1 - room.r0 + 1));
      for (int r = room.r0; r <= room.r1; ++r)
        if (r != door) occupied[idx(r, wall)] = 1;
      open.push_back({room.r0, room.r1, room.c0, wall - 1});
      open.push_back({room.r0, room.r1, wall + 1, room.c1});
    } else {
      const int wall = room.r0 + 2 + static_cast<int>(rng.uniform_below(room.r1 - room.r0 - 3));
      const int door = room.c0 + static_cast<int>(rng.uniform_below(room.c1 - room.c0 + 1));
      for (int c = room.c0; c <= room.c1; ++c)
        if (c != door) occupied[idx(wall, c)] = 1;
      open.push_back({room.r0, wall - 1, room.c0, room.c1});
      open.push_back({wall + 1, room.r1, room.c0, room.c1});
    }
  }
  return all_free_connected(occupied, width, height);
}

}  // namespace

world::GridMap generate_map(int width, int height, int rooms, std::uint64_t seed,
                            double cell_size_m) {
  if (width < 8 || height < 8)
    throw std::invalid_argument("generate_map: dimensions must be >= 8");
  if (rooms < 1) throw std::invalid_argument("generate_map: rooms must be >= 1");

  std::vector<std::uint8_t> occupied;
  constexpr int kMaxAttempts = 32;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    if (try_generate(width, height, rooms, Rng::mix(seed, attempt), occupied))
      return world::GridMap(width, height, cell_size_m, std::move(occupied));
  }
  throw MapGenError("generate_map: no feasible layout after " +
                    std::to_string(kMaxAttempts) + " attempts (" +
                    std::to_string(width) + "x" + std::to_string(height) + ", " +
                    std::to_string(rooms) + " rooms)");
}

}  // namespace beliefnav::bench

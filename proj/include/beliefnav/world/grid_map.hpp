#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace beliefnav::world {

struct Cell {
  int row = 0;
  int col = 0;
  auto operator<=>(const Cell&) const = default;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Known 2D occupancy grid. Immutable after construction; free space F is the
// complement of the occupied set within bounds.
class GridMap {
 public:
  GridMap(int width, int height, double cell_size_m,
          std::vector<std::uint8_t> occupied);

  int width() const { return width_; }
  int height() const { return height_; }
  double cell_size() const { return cell_size_; }

  bool in_bounds(Cell c) const {
    return c.row >= 0 && c.row < height_ && c.col >= 0 && c.col < width_;
  }
  bool is_occupied(Cell c) const { return occupied_[index(c)] != 0; }
  bool is_free(Cell c) const { return occupied_[index(c)] == 0; }

  std::size_t index(Cell c) const {
    return static_cast<std::size_t>(c.row) * width_ + c.col;
  }
  Cell cell_at(std::size_t index) const {
    return Cell{static_cast<int>(index) / width_,
                static_cast<int>(index) % width_};
  }
  std::size_t cell_count() const { return occupied_.size(); }

  // Row-major enumerations of F and its complement.
  const std::vector<Cell>& free_cells() const { return free_cells_; }
  const std::vector<Cell>& occupied_cells() const { return occupied_cells_; }

  std::string to_text() const;

 private:
  int width_;
  int height_;
  double cell_size_;
  std::vector<std::uint8_t> occupied_;
  std::vector<Cell> free_cells_;
  std::vector<Cell> occupied_cells_;
};

// Parses the ASCII map format: an optional "cellsize=<meters>" header line
// followed by rectangular rows of '#' (occupied) and '.' (free).
GridMap load_map(const std::string& text);
GridMap load_map_file(const std::filesystem::path& path);

}  // namespace beliefnav::world

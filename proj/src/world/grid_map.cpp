#include "beliefnav/world/grid_map.hpp"

#include <fstream>
#include <sstream>

namespace beliefnav::world {

GridMap::GridMap(int width, int height, double cell_size_m,
                 std::vector<std::uint8_t> occupied)
    : width_(width),
      height_(height),
      cell_size_(cell_size_m),
      occupied_(std::move(occupied)) {
  if (width_ <= 0 || height_ <= 0)
    throw std::invalid_argument("GridMap: non-positive dimensions");
  if (cell_size_ <= 0.0)
    throw std::invalid_argument("GridMap: cell_size must be > 0");
  if (occupied_.size() != static_cast<std::size_t>(width_) * height_)
    throw std::invalid_argument("GridMap: flag vector does not match dimensions");

  for (int r = 0; r < height_; ++r) {
    for (int c = 0; c < width_; ++c) {
      const Cell cell{r, c};
      (is_occupied(cell) ? occupied_cells_ : free_cells_).push_back(cell);
    }
  }
  if (free_cells_.empty())
    throw std::invalid_argument("GridMap: no free cells");
  if (occupied_cells_.empty())
    throw std::invalid_argument("GridMap: no occupied cells");
}

std::string GridMap::to_text() const {
  std::ostringstream out;
  out << "cellsize=" << cell_size_ << "\n";
  for (int r = 0; r < height_; ++r) {
    for (int c = 0; c < width_; ++c) out << (is_occupied({r, c}) ? '#' : '.');
    out << "\n";
  }
  return out.str();
}

GridMap load_map(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  double cell_size = 0.30;
  std::vector<std::string> rows;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (rows.empty() && line.rfind("cellsize=", 0) == 0) {
      try {
        std::size_t pos = 0;
        cell_size = std::stod(line.substr(9), &pos);
        if (pos != line.size() - 9) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw ParseError("map line " + std::to_string(line_no) +
                         ": bad cellsize header '" + line + "'");
      }
      continue;
    }
    if (line.empty()) continue;
    rows.push_back(line);
    if (rows.front().size() != line.size())
      throw ParseError("map line " + std::to_string(line_no) +
                       ": ragged row (expected width " +
                       std::to_string(rows.front().size()) + ", got " +
                       std::to_string(line.size()) + ")");
    for (std::size_t col = 0; col < line.size(); ++col) {
      if (line[col] != '#' && line[col] != '.')
        throw ParseError("map line " + std::to_string(line_no) + ", column " +
                         std::to_string(col + 1) + ": unknown character '" +
                         std::string(1, line[col]) + "'");
    }
  }
  if (rows.empty()) throw ParseError("map: no grid rows");

  const int height = static_cast<int>(rows.size());
  const int width = static_cast<int>(rows.front().size());
  std::vector<std::uint8_t> occupied;
  occupied.reserve(static_cast<std::size_t>(width) * height);
  for (const auto& row : rows)
    for (char ch : row) occupied.push_back(ch == '#' ? 1 : 0);

  try {
    return GridMap(width, height, cell_size, std::move(occupied));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("map: ") + e.what());
  }
}

GridMap load_map_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open map file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_map(buf.str());
}

}  // namespace beliefnav::world

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "rsp/core.hpp"

namespace rsp {

using CellId = std::uint32_t;

struct GridCell {
  std::int64_t cx = 0;
  std::int64_t cy = 0;
  std::vector<PointIndex> points;
};

/// Uniform grid bucketing of a point set. Cells are stored sorted by their
/// integer coordinates; every cell knows the occupied cells within Chebyshev
/// distance `reach` (itself excluded), in a fixed offset order.
class GridIndex {
 public:
  double side() const { return side_; }
  int reach() const { return reach_; }
  std::size_t cell_count() const { return cells_.size(); }
  const GridCell& cell(CellId c) const { return cells_[c]; }
  const std::vector<GridCell>& cells() const { return cells_; }
  CellId cell_of(PointIndex p) const { return cell_of_[p]; }
  std::span<const CellId> neighbors(CellId c) const {
    return {neighbors_.data() + neighbor_begin_[c], neighbors_.data() + neighbor_begin_[c + 1]};
  }
  std::optional<CellId> find(std::int64_t cx, std::int64_t cy) const;

  friend GridIndex build_grid_with_side(std::span<const Point> points, double side, int reach);

 private:
  double side_ = 0.0;
  int reach_ = 0;
  Point origin_;
  std::vector<GridCell> cells_;
  std::vector<CellId> cell_of_;
  std::vector<std::uint32_t> neighbor_begin_;
  std::vector<CellId> neighbors_;
  std::unordered_map<std::uint64_t, CellId> lookup_;
};

inline constexpr double kDefaultGridShrink = 0x1.0p-32;

// Grid for radius r: side r/sqrt(2) scaled by (1 - shrink), 5x5 neighborhood.
GridIndex build_grid(std::span<const Point> points, double radius, double shrink = kDefaultGridShrink);

// Explicit side and Chebyshev neighborhood radius. Throws InvalidRadius for a
// non-positive side and GridPrecisionError when cell coordinates overflow.
GridIndex build_grid_with_side(std::span<const Point> points, double side, int reach);

}  // namespace rsp

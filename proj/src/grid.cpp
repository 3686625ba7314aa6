#include "rsp/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "rsp/errors.hpp"

namespace rsp {

namespace {

constexpr double kMaxCellCoord = 2147483647.0;  // keys pack two 31-bit coordinates

std::uint64_t pack(std::int64_t cx, std::int64_t cy) {
  return (static_cast<std::uint64_t>(cx) << 32) | static_cast<std::uint64_t>(cy);
}

}  // namespace

std::optional<CellId> GridIndex::find(std::int64_t cx, std::int64_t cy) const {
  if (cx < 0 || cy < 0 || cx > kMaxCellCoord || cy > kMaxCellCoord) return std::nullopt;
  auto it = lookup_.find(pack(cx, cy));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

GridIndex build_grid(std::span<const Point> points, double radius, double shrink) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidRadius("grid radius must be positive and finite");
  return build_grid_with_side(points, radius / std::numbers::sqrt2 * (1.0 - shrink), 2);
}

GridIndex build_grid_with_side(std::span<const Point> points, double side, int reach) {
  if (!(side > 0.0) || !std::isfinite(side)) throw InvalidRadius("grid side must be positive and finite");
  GridIndex g;
  g.side_ = side;
  g.reach_ = reach;
  if (!points.empty()) {
    g.origin_ = points[0];
    for (const auto& p : points) {
      g.origin_.x = std::min(g.origin_.x, p.x);
      g.origin_.y = std::min(g.origin_.y, p.y);
    }
  }

  const auto n = points.size();
  std::vector<std::pair<std::int64_t, std::int64_t>> coord(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double fx = std::floor((points[i].x - g.origin_.x) / side);
    const double fy = std::floor((points[i].y - g.origin_.y) / side);
    if (!(fx <= kMaxCellCoord) || !(fy <= kMaxCellCoord)) {
      throw GridPrecisionError("grid too fine for the coordinate extent");
    }
    coord[i] = {static_cast<std::int64_t>(fx), static_cast<std::int64_t>(fy)};
  }

  std::vector<PointIndex> order(n);
  std::iota(order.begin(), order.end(), PointIndex{0});
  std::sort(order.begin(), order.end(), [&](PointIndex a, PointIndex b) {
    return coord[a] != coord[b] ? coord[a] < coord[b] : a < b;
  });

  g.cell_of_.assign(n, 0);
  for (PointIndex p : order) {
    if (g.cells_.empty() || g.cells_.back().cx != coord[p].first || g.cells_.back().cy != coord[p].second) {
      g.cells_.push_back({coord[p].first, coord[p].second, {}});
    }
    g.cells_.back().points.push_back(p);
    g.cell_of_[p] = static_cast<CellId>(g.cells_.size() - 1);
  }
  g.lookup_.reserve(g.cells_.size());
  for (CellId c = 0; c < g.cells_.size(); ++c) g.lookup_.emplace(pack(g.cells_[c].cx, g.cells_[c].cy), c);

  g.neighbor_begin_.reserve(g.cells_.size() + 1);
  g.neighbor_begin_.push_back(0);
  for (const auto& cell : g.cells_) {
    for (int dx = -reach; dx <= reach; ++dx) {
      for (int dy = -reach; dy <= reach; ++dy) {
        if (dx == 0 && dy == 0) continue;
        if (auto other = g.find(cell.cx + dx, cell.cy + dy)) g.neighbors_.push_back(*other);
      }
    }
    g.neighbor_begin_.push_back(static_cast<std::uint32_t>(g.neighbors_.size()));
  }
  return g;
}

}  // namespace rsp

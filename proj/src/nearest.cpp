#include "rsp/nearest.hpp"

#include <algorithm>
#include <limits>

namespace rsp {

namespace {
constexpr std::size_t kLeafSize = 8;
}

NearestSet::NearestSet(std::span<const Point> points, std::span<const PointIndex> ids) {
  nodes_.reserve(ids.size());
  for (PointIndex id : ids) nodes_.push_back({points[id].x, points[id].y, id});
  build(0, nodes_.size(), 0);
}

void NearestSet::build(std::size_t lo, std::size_t hi, int depth) {
  if (hi - lo <= kLeafSize) return;
  const std::size_t mid = lo + (hi - lo) / 2;
  const bool by_x = (depth % 2) == 0;
  std::nth_element(nodes_.begin() + lo, nodes_.begin() + mid, nodes_.begin() + hi,
                   [by_x](const Node& a, const Node& b) { return by_x ? a.x < b.x : a.y < b.y; });
  build(lo, mid, depth + 1);
  build(mid + 1, hi, depth + 1);
}

template <bool kPositiveOnly>
void NearestSet::search(std::size_t lo, std::size_t hi, int depth, const Point& q, Hit& best) const {
  auto consider = [&](const Node& node) {
    const double dx = node.x - q.x;
    const double dy = node.y - q.y;
    const SqDist d = dx * dx + dy * dy;
    if constexpr (kPositiveOnly) {
      if (!(d > 0.0)) return;
    }
    if (d < best.sq || (d == best.sq && node.id < best.id)) best = {d, node.id};
  };

  if (hi - lo <= kLeafSize) {
    for (std::size_t i = lo; i < hi; ++i) consider(nodes_[i]);
    return;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  const Node& split = nodes_[mid];
  const bool by_x = (depth % 2) == 0;
  const double diff = by_x ? q.x - split.x : q.y - split.y;
  consider(split);
  // Left holds coordinates <= split, right holds >= split along the axis.
  const bool left_first = diff <= 0.0;
  if (left_first) {
    search<kPositiveOnly>(lo, mid, depth + 1, q, best);
    if (diff * diff <= best.sq) search<kPositiveOnly>(mid + 1, hi, depth + 1, q, best);
  } else {
    search<kPositiveOnly>(mid + 1, hi, depth + 1, q, best);
    if (diff * diff <= best.sq) search<kPositiveOnly>(lo, mid, depth + 1, q, best);
  }
}

std::optional<NearestSet::Hit> NearestSet::nearest(const Point& q) const {
  if (nodes_.empty()) return std::nullopt;
  Hit best{std::numeric_limits<double>::infinity(), kNoPoint};
  search<false>(0, nodes_.size(), 0, q, best);
  return best;
}

std::optional<NearestSet::Hit> NearestSet::nearest_positive(const Point& q) const {
  if (nodes_.empty()) return std::nullopt;
  Hit best{std::numeric_limits<double>::infinity(), kNoPoint};
  search<true>(0, nodes_.size(), 0, q, best);
  if (best.id == kNoPoint) return std::nullopt;
  return best;
}

}  // namespace rsp

#pragma once

// Independent brute-force references used by the tests. Nothing here calls
// into the library beyond its data types.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "rsp/core.hpp"

namespace oracle {

using rsp::Instance;
using rsp::Point;
using rsp::PointIndex;
using rsp::SqDist;

inline SqDist d2(const Point& a, const Point& b) {
  const double dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// BFS over an explicit adjacency matrix.
inline std::vector<std::optional<std::uint32_t>> adjacency_bfs(const Instance& inst, SqDist sq_r, bool strict = false) {
  const std::size_t n = inst.size();
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const SqDist d = d2(inst.points[i], inst.points[j]);
      adj[i][j] = i != j && (strict ? d < sq_r : d <= sq_r);
    }
  }
  std::vector<std::optional<std::uint32_t>> level(n);
  std::deque<std::size_t> queue{inst.s};
  level[inst.s] = 0;
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    for (std::size_t v = 0; v < n; ++v) {
      if (adj[u][v] && !level[v]) {
        level[v] = *level[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return level;
}

inline bool reaches(const Instance& inst, SqDist sq_r, bool strict = false) {
  const auto lv = adjacency_bfs(inst, sq_r, strict);
  return lv[inst.t] && *lv[inst.t] <= inst.lambda;
}

inline std::vector<SqDist> sorted_pairs(const Instance& inst) {
  std::vector<SqDist> v;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    for (std::size_t j = i + 1; j < inst.size(); ++j) v.push_back(d2(inst.points[i], inst.points[j]));
  }
  std::sort(v.begin(), v.end());
  return v;
}

// Smallest pair value at which t is reachable, by linear scan of the
// distinct values from the bottom.
inline SqDist rstar_scan(const Instance& inst) {
  if (inst.s == inst.t) return 0.0;
  auto vals = sorted_pairs(inst);
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  std::size_t lo = 0, hi = vals.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (reaches(inst, vals[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return vals[lo];
}

inline std::uint64_t count_in(const std::vector<SqDist>& sorted, std::optional<SqDist> lo, std::optional<SqDist> hi) {
  auto b = lo ? std::upper_bound(sorted.begin(), sorted.end(), *lo) : sorted.begin();
  auto e = hi ? std::upper_bound(sorted.begin(), sorted.end(), *hi) : sorted.end();
  return e > b ? static_cast<std::uint64_t>(e - b) : 0;
}

inline std::uint64_t count_distinct_in(const std::vector<SqDist>& sorted, std::optional<SqDist> lo,
                                       std::optional<SqDist> hi) {
  auto b = lo ? std::upper_bound(sorted.begin(), sorted.end(), *lo) : sorted.begin();
  auto e = hi ? std::upper_bound(sorted.begin(), sorted.end(), *hi) : sorted.end();
  std::uint64_t count = 0;
  for (auto it = b; it < e; ++it) count += it == b || *it != *(it - 1);
  return count;
}

// Bottleneck table D[i][p]: min over walks s -> p with at most i links of the
// largest link, in squared units; infinity when none.
inline std::vector<std::vector<SqDist>> bottleneck_table(const Instance& inst, std::uint32_t levels) {
  const std::size_t n = inst.size();
  const SqDist inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<SqDist>> D(levels + 1, std::vector<SqDist>(n, inf));
  D[0][inst.s] = 0.0;
  for (std::uint32_t i = 1; i <= levels; ++i) {
    for (std::size_t p = 0; p < n; ++p) {
      SqDist best = D[i - 1][p];
      for (std::size_t q = 0; q < n; ++q) {
        if (D[i - 1][q] < inf) best = std::min(best, std::max(D[i - 1][q], d2(inst.points[q], inst.points[p])));
      }
      D[i][p] = best;
    }
  }
  return D;
}

inline SqDist weighted_scan(const std::vector<Point>& pts, const std::vector<SqDist>& w, const Point& p) {
  SqDist best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i) best = std::min(best, std::max(d2(pts[i], p), w[i]));
  return best;
}

inline std::vector<Point> random_points(std::mt19937_64& rng, std::size_t n, int range) {
  std::uniform_int_distribution<int> coord(0, range);
  std::vector<Point> pts(n);
  for (auto& p : pts) p = {static_cast<double>(coord(rng)), static_cast<double>(coord(rng))};
  return pts;
}

inline Instance random_instance(std::mt19937_64& rng, std::size_t n, int range) {
  Instance inst;
  inst.points = random_points(rng, n, range);
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  inst.s = static_cast<PointIndex>(idx(rng));
  do {
    inst.t = static_cast<PointIndex>(idx(rng));
  } while (inst.t == inst.s);
  std::uniform_int_distribution<std::uint32_t> lam(1, static_cast<std::uint32_t>(n - 1));
  inst.lambda = lam(rng);
  return inst;
}

}  // namespace oracle

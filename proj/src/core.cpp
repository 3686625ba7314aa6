#include "rsp/core.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <random>
#include <string>

#include "rsp/errors.hpp"

namespace rsp {

void validate(const Instance& inst) {
  const auto n = inst.size();
  if (n < 2) throw InvalidInstance("instance needs at least two points");
  if (n >= kNoPoint) throw InvalidInstance("too many points");
  if (inst.s >= n || inst.t >= n) throw InvalidInstance("s or t out of range");
  if (inst.lambda == 0 && inst.s != inst.t) throw InvalidInstance("lambda must be >= 1 unless s == t");
  for (const auto& p : inst.points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw InvalidInstance("non-finite coordinate");
  }
}

bool witness_matches(const Instance& inst, const CandidateValue& c) {
  if (!c.has_witness() || c.first >= inst.size() || c.second >= inst.size()) return false;
  return sq_dist(inst.points[c.first], inst.points[c.second]) == c.sq;
}

// ---------------------------------------------------------------------------
// RStarRange

RStarRange RStarRange::from_interval(const Interval& iv) {
  RStarRange r;
  if (iv.lo) r.raise_lower({*iv.lo, false});
  if (iv.hi) {
    r.drop_upper({*iv.hi, true});
    if (iv.hi_is_rstar) r.raise_lower({*iv.hi, true});
  }
  return r;
}

std::optional<bool> RStarRange::implies_at_most(SqDist c) const {
  if (upper_ && upper_->at.sq <= c) return true;
  if (lower_ && (c < lower_->at.sq || (c == lower_->at.sq && !lower_->closed))) return false;
  return std::nullopt;
}

std::optional<bool> RStarRange::implies_below(SqDist c) const {
  if (upper_ && (upper_->at.sq < c || (upper_->at.sq == c && !upper_->closed))) return true;
  if (lower_ && c <= lower_->at.sq) return false;
  return std::nullopt;
}

void RStarRange::raise_lower(const Bound& b) {
  if (!b.closed && (!open_lower_ || b.at.sq > open_lower_->sq)) open_lower_ = b.at;
  if (!lower_ || b.at.sq > lower_->at.sq ||
      (b.at.sq == lower_->at.sq && lower_->closed && !b.closed)) {
    lower_ = b;
  }
}

void RStarRange::drop_upper(const Bound& b) {
  if (!upper_ || b.at.sq < upper_->at.sq ||
      (b.at.sq == upper_->at.sq && upper_->closed && !b.closed)) {
    upper_ = b;
  }
}

bool RStarRange::is_point() const {
  return lower_ && upper_ && lower_->closed && upper_->closed && lower_->at.sq == upper_->at.sq;
}

bool RStarRange::admits(SqDist v) const {
  if (lower_ && (v < lower_->at.sq || (v == lower_->at.sq && !lower_->closed))) return false;
  if (upper_ && (v > upper_->at.sq || (v == upper_->at.sq && !upper_->closed))) return false;
  return true;
}

bool RStarRange::contains(const RStarRange& other) const {
  if (lower_) {
    if (!other.lower_) return false;
    const auto& a = *lower_;
    const auto& b = *other.lower_;
    if (a.at.sq > b.at.sq) return false;
    if (a.at.sq == b.at.sq && !a.closed && b.closed) return false;
  }
  if (upper_) {
    if (!other.upper_) return false;
    const auto& a = *upper_;
    const auto& b = *other.upper_;
    if (a.at.sq < b.at.sq) return false;
    if (a.at.sq == b.at.sq && !a.closed && b.closed) return false;
  }
  return true;
}

Interval RStarRange::to_interval() const {
  Interval iv;
  if (open_lower_) {
    iv.lo = open_lower_;
    iv.lo_evidence = true;
  }
  if (upper_) {
    iv.hi = upper_->at;
    iv.hi_evidence = true;
    iv.hi_is_rstar = is_point();
  }
  return iv;
}

// ---------------------------------------------------------------------------
// Generators

std::string_view to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::uniform: return "uniform";
    case GeneratorKind::cluster: return "cluster";
    case GeneratorKind::grid: return "grid";
    case GeneratorKind::line: return "line";
  }
  return "unknown";
}

std::optional<GeneratorKind> parse_generator_kind(std::string_view name) {
  if (name == "uniform") return GeneratorKind::uniform;
  if (name == "cluster") return GeneratorKind::cluster;
  if (name == "grid") return GeneratorKind::grid;
  if (name == "line") return GeneratorKind::line;
  return std::nullopt;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

// Raw engine output only; the std distributions are implementation-defined
// and would make instances differ across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}
  std::uint64_t next() { return engine_(); }
  std::uint64_t below(std::uint64_t m) { return next() % m; }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double gaussian() {
    const double u1 = 1.0 - unit();
    const double u2 = unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

double clamp_coord(double v) { return std::clamp(std::round(v), 0.0, kCoordinateLimit); }

std::uint32_t ceil_sqrt(std::size_t n) {
  std::uint32_t r = 0;
  while (static_cast<std::uint64_t>(r) * r < n) ++r;
  return r;
}

void pick_extremes(Instance& inst) {
  const auto& pts = inst.points;
  PointIndex s = 0, t = 0;
  for (PointIndex i = 1; i < pts.size(); ++i) {
    if (pts[i].x < pts[s].x || (pts[i].x == pts[s].x && pts[i].y < pts[s].y)) s = i;
    if (pts[i].x > pts[t].x || (pts[i].x == pts[t].x && pts[i].y > pts[t].y)) t = i;
  }
  if (s == t) t = (s == 0) ? 1 : 0;
  inst.s = s;
  inst.t = t;
}

}  // namespace

Instance generate(GeneratorKind kind, std::size_t n, std::uint64_t seed) {
  if (n < 2) throw InvalidInstance("generate: n must be at least 2");
  Instance inst;
  inst.points.reserve(n);
  Rng rng(seed ^ (static_cast<std::uint64_t>(kind) << 56));

  switch (kind) {
    case GeneratorKind::uniform: {
      for (std::size_t i = 0; i < n; ++i) {
        const double x = static_cast<double>(rng.below(1u << 20));
        const double y = static_cast<double>(rng.below(1u << 20));
        inst.points.push_back({x, y});
      }
      break;
    }
    case GeneratorKind::cluster: {
      const std::size_t k = std::max<std::size_t>(2, static_cast<std::size_t>(std::lround(std::sqrt(n) / 2.0)));
      const double margin = kCoordinateLimit / 8.0;
      const double spread = kCoordinateLimit / (8.0 * static_cast<double>(k));
      std::vector<Point> centers;
      for (std::size_t c = 0; c < k; ++c) {
        centers.push_back({margin + rng.unit() * (kCoordinateLimit - 2 * margin),
                           margin + rng.unit() * (kCoordinateLimit - 2 * margin)});
      }
      // Geometric cluster sizes: cluster j draws about n/2^(j+1) points, so the
      // largest clusters produce heavy cells at the default threshold.
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = 0;
        while (j + 1 < k && (rng.next() >> 63)) ++j;
        const auto& c = centers[j];
        const double gx = rng.gaussian();
        const double gy = rng.gaussian();
        inst.points.push_back({clamp_coord(c.x + spread * gx), clamp_coord(c.y + spread * gy)});
      }
      break;
    }
    case GeneratorKind::grid: {
      const std::uint32_t cols = ceil_sqrt(n);
      const double spacing = static_cast<double>(1 + rng.below(4));
      for (std::size_t i = 0; i < n; ++i) {
        inst.points.push_back({spacing * static_cast<double>(i % cols), spacing * static_cast<double>(i / cols)});
      }
      for (std::size_t i = n - 1; i > 0; --i) {
        std::swap(inst.points[i], inst.points[rng.below(i + 1)]);
      }
      break;
    }
    case GeneratorKind::line: {
      for (std::size_t i = 0; i < n; ++i) inst.points.push_back({static_cast<double>(i), 0.0});
      break;
    }
  }
  pick_extremes(inst);
  inst.lambda = ceil_sqrt(n);
  return inst;
}

// ---------------------------------------------------------------------------
// Brute-force oracles

namespace {

// Plain BFS over the implicit complete distance graph; stops early once
// stop_at is labelled or max_level is exceeded.
HopVector bounded_bfs(const Instance& inst, SqDist sq_r, std::optional<PointIndex> stop_at,
                      std::optional<std::uint32_t> max_level) {
  const auto n = inst.size();
  HopVector level(n);
  std::vector<PointIndex> unvisited;
  unvisited.reserve(n);
  for (PointIndex i = 0; i < n; ++i) {
    if (i != inst.s) unvisited.push_back(i);
  }
  level[inst.s] = 0;
  if (stop_at == inst.s) return level;
  std::deque<PointIndex> queue{inst.s};
  while (!queue.empty()) {
    const PointIndex u = queue.front();
    queue.pop_front();
    const std::uint32_t next = *level[u] + 1;
    if (max_level && next > *max_level) break;
    std::size_t keep = 0;
    for (std::size_t k = 0; k < unvisited.size(); ++k) {
      const PointIndex v = unvisited[k];
      if (sq_dist(inst.points[u], inst.points[v]) <= sq_r) {
        level[v] = next;
        if (stop_at == v) return level;
        queue.push_back(v);
      } else {
        unvisited[keep++] = v;
      }
    }
    unvisited.resize(keep);
  }
  return level;
}

bool reaches_within(const Instance& inst, SqDist sq_r) {
  const auto level = bounded_bfs(inst, sq_r, inst.t, inst.lambda);
  return level[inst.t] && *level[inst.t] <= inst.lambda;
}

}  // namespace

HopVector bfs_exact(const Instance& inst, SqDist sq_r) {
  return bounded_bfs(inst, sq_r, std::nullopt, std::nullopt);
}

CandidateValue rstar_exact(const Instance& inst) {
  validate(inst);
  if (inst.s == inst.t) return {0.0, inst.s, inst.s};
  const auto n = inst.size();
  std::vector<SqDist> values;
  values.reserve(pair_count(n));
  for (PointIndex i = 0; i < n; ++i) {
    for (PointIndex j = i + 1; j < n; ++j) values.push_back(sq_dist(inst.points[i], inst.points[j]));
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  std::size_t lo = 0, hi = values.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (reaches_within(inst, values[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  const SqDist best = values[lo];
  for (PointIndex i = 0; i < n; ++i) {
    for (PointIndex j = i + 1; j < n; ++j) {
      if (sq_dist(inst.points[i], inst.points[j]) == best) return {best, i, j};
    }
  }
  return {best, kNoPoint, kNoPoint};
}

std::uint64_t count_candidates_in(const Instance& inst, const Interval& iv) {
  std::uint64_t count = 0;
  const auto n = inst.size();
  for (PointIndex i = 0; i < n; ++i) {
    for (PointIndex j = i + 1; j < n; ++j) {
      if (iv.contains(sq_dist(inst.points[i], inst.points[j]))) ++count;
    }
  }
  return count;
}

std::uint64_t pair_count(std::size_t n) {
  return static_cast<std::uint64_t>(n) * (n - (n > 0 ? 1 : 0)) / 2;
}

std::uint32_t ceil_log2(std::uint64_t n) {
  std::uint32_t k = 0;
  while (k < 64 && (std::uint64_t{1} << k) < n) ++k;
  return k;
}

}  // namespace rsp

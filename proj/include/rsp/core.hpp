#pragma once

// Shared domain types for the reverse shortest path solver and the
// brute-force reference oracles every other module is checked against.
//
// All distances are carried squared. Squaring is order preserving on
// nonnegative reals, so min/max/comparisons behave identically, and for
// integer coordinates with |x|,|y| <= 2^20 every squared distance is an
// integer <= 2^43, hence exact in a double.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rsp {

using PointIndex = std::uint32_t;
using SqDist = double;

inline constexpr PointIndex kNoPoint = std::numeric_limits<PointIndex>::max();
inline constexpr double kCoordinateLimit = 1048576.0;  // 2^20

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline SqDist sq_dist(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

struct Instance {
  std::vector<Point> points;
  PointIndex s = 0;
  PointIndex t = 0;
  std::uint32_t lambda = 1;

  std::size_t size() const { return points.size(); }
  friend bool operator==(const Instance&, const Instance&) = default;
};

// Throws InvalidInstance unless n >= 2, s,t < n, coordinates are finite and
// lambda >= 1 (lambda = 0 is tolerated only when s == t).
void validate(const Instance& inst);

/// A squared pairwise distance together with a pair of point indices
/// realizing it. Values that did not come from a point pair (dyadic probes,
/// explicit test values) carry kNoPoint in both slots.
struct CandidateValue {
  SqDist sq = 0.0;
  PointIndex first = kNoPoint;
  PointIndex second = kNoPoint;

  bool has_witness() const { return first != kNoPoint && second != kNoPoint; }
  friend bool operator==(const CandidateValue&, const CandidateValue&) = default;
};

inline CandidateValue make_candidate(const Instance& inst, PointIndex a, PointIndex b) {
  return {sq_dist(inst.points[a], inst.points[b]), a, b};
}

// True when the witness pair realizes exactly the stored squared distance.
bool witness_matches(const Instance& inst, const CandidateValue& c);

// Hop distance along a BFS; nullopt marks "unreachable".
using HopDistance = std::optional<std::uint32_t>;
using HopVector = std::vector<HopDistance>;

/// Half-open range (lo, hi] for r*. A missing lo is the BelowAll sentinel, a
/// missing hi is AboveAll. Evidence flags record that decide(lo) = false and
/// decide(hi) = true were observed; hi_is_rstar records decide(hi) and
/// not decide_strict(hi), i.e. hi is r* itself.
struct Interval {
  std::optional<CandidateValue> lo;
  std::optional<CandidateValue> hi;
  bool lo_evidence = false;
  bool hi_evidence = false;
  bool hi_is_rstar = false;

  static Interval everything() { return {}; }
  bool contains(SqDist v) const {
    return (!lo || lo->sq < v) && (!hi || v <= hi->sq);
  }
};

// One side of what is known about r*: r* > at (open) or r* >= at (closed)
// for a lower bound, r* < at (open) or r* <= at (closed) for an upper one.
struct Bound {
  CandidateValue at;
  bool closed = false;
};

/// Everything certified about the position of r* so far. Shared by the
/// decision cache and the bifurcation engine's branch assumptions.
class RStarRange {
 public:
  RStarRange() = default;
  static RStarRange from_interval(const Interval& iv);

  // Truth of "r* <= c" when the bounds already imply it.
  std::optional<bool> implies_at_most(SqDist c) const;
  // Truth of "r* < c" when the bounds already imply it.
  std::optional<bool> implies_below(SqDist c) const;
  // Truth of "c <= r*", the comparison an instrumented run asks.
  std::optional<bool> implies_reaches(SqDist c) const {
    auto below = implies_below(c);
    if (!below) return std::nullopt;
    return !*below;
  }

  void raise_lower(const Bound& b);
  void drop_upper(const Bound& b);

  const std::optional<Bound>& lower() const { return lower_; }
  const std::optional<Bound>& upper() const { return upper_; }
  bool is_point() const;
  // Every r* admitted by other is also admitted here.
  bool contains(const RStarRange& other) const;
  bool admits(SqDist v) const;
  Interval to_interval() const;

 private:
  std::optional<Bound> lower_;
  std::optional<Bound> upper_;
  // Tightest open lower bound seen; it is what an Interval can report as lo.
  std::optional<CandidateValue> open_lower_;
};

enum class GeneratorKind { uniform, cluster, grid, line };

std::string_view to_string(GeneratorKind kind);
std::optional<GeneratorKind> parse_generator_kind(std::string_view name);

// Deterministic in (kind, n, seed). Coordinates are integers within
// [0, 2^20]; s and t are the extreme points along x; lambda = ceil(sqrt(n)).
Instance generate(GeneratorKind kind, std::size_t n, std::uint64_t seed);

// O(n^2) BFS levels of G_r(P) with edge rule sq_dist <= sq_r.
HopVector bfs_exact(const Instance& inst, SqDist sq_r);

// Minimum pairwise squared distance at which t is within lambda hops of s,
// found by sorting all pairs and binary searching with bfs_exact.
CandidateValue rstar_exact(const Instance& inst);

// Number of unordered pairs {i, j} whose squared distance v has lo < v <= hi.
std::uint64_t count_candidates_in(const Instance& inst, const Interval& iv);

std::uint64_t pair_count(std::size_t n);
std::uint32_t ceil_log2(std::uint64_t n);
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace rsp

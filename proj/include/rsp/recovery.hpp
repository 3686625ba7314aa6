#pragma once

// Exact r* from banded hop estimates: a bottleneck dynamic program over
// hop levels, evaluated with a weighted nearest-neighbor structure.

#include <cstdint>
#include <span>
#include <vector>

#include "rsp/core.hpp"
#include "rsp/fast.hpp"
#include "rsp/nearest.hpp"

namespace rsp {

/// Answers min over q of max(sq_dist(p, q), w_q). Points are sorted by
/// (weight, index); every node splits its range into the lighter half and
/// the heavier half and keeps a nearest-neighbor set on the lighter half.
class WeightedNNIndex {
 public:
  struct Result {
    SqDist value = 0.0;
    PointIndex id = kNoPoint;
    std::uint32_t levels = 0;  // nodes visited
  };

  // weights[i] belongs to ids[i]. Throws EmptyIndex for an empty set.
  WeightedNNIndex(std::span<const Point> points, std::span<const PointIndex> ids, std::span<const SqDist> weights);

  Result query(const Point& p) const;
  std::size_t size() const { return order_.size(); }
  std::uint32_t depth() const { return depth_; }
  // Ids of the root's lighter half, in weight order.
  std::vector<PointIndex> root_light_half() const;

 private:
  struct Entry {
    SqDist weight;
    PointIndex id;
    Point at;
  };
  struct Node {
    std::uint32_t begin, mid, end;  // [begin, mid) lighter, [mid, end) heavier
    SqDist light_max;               // largest weight in the lighter half
    NearestSet light;
    std::int32_t left = -1, right = -1;
  };

  std::int32_t build(std::span<const Point> points, std::uint32_t begin, std::uint32_t end, std::uint32_t depth);

  std::vector<Entry> order_;
  std::vector<Node> nodes_;
  std::uint32_t depth_ = 0;
};

WeightedNNIndex wnn_build(std::span<const Point> points, std::span<const PointIndex> ids,
                          std::span<const SqDist> weights);

struct RecoveryOutcome {
  CandidateValue value;
  std::uint32_t hops = 0;        // level i attaining the minimum
  std::uint64_t entries = 0;     // total band memberships evaluated
  std::uint32_t levels = 0;      // highest level evaluated
  std::uint32_t max_query_levels = 0;
};

// Bands P_i = {p : i - slack <= est_p <= i}; the value at s on level 0 is 0
// and every later level takes the bottleneck over the previous band. Returns
// the minimum over i <= lambda of the value at t. Throws RecoveryFailure if
// t never gets a finite value.
RecoveryOutcome dp_recover(const Instance& inst, const EstimateVector& est);

}  // namespace rsp

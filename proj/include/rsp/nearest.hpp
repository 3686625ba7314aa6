#pragma once

// Exact nearest-neighbor searchable set over a subset of input points.
//
// A static 2-d tree with median splits. Distances are compared in squared
// form with no tolerance, so for lattice inputs the answer is exact. Ties
// are broken towards the lowest point index.

#include <optional>
#include <span>
#include <vector>

#include "rsp/core.hpp"

namespace rsp {

class NearestSet {
 public:
  struct Hit {
    SqDist sq;
    PointIndex id;
  };

  NearestSet() = default;
  NearestSet(std::span<const Point> points, std::span<const PointIndex> ids);

  bool empty() const { return nodes_.empty(); }
  std::size_t size() const { return nodes_.size(); }

  std::optional<Hit> nearest(const Point& q) const;
  // Nearest among points at strictly positive distance from q.
  std::optional<Hit> nearest_positive(const Point& q) const;

 private:
  struct Node {
    double x;
    double y;
    PointIndex id;
  };

  void build(std::size_t lo, std::size_t hi, int depth);
  template <bool kPositiveOnly>
  void search(std::size_t lo, std::size_t hi, int depth, const Point& q, Hit& best) const;

  std::vector<Node> nodes_;
};

}  // namespace rsp

#include "rsp/recovery.hpp"

#include <algorithm>
#include <limits>

#include "rsp/errors.hpp"

namespace rsp {

namespace {
constexpr SqDist kInf = std::numeric_limits<double>::infinity();
}

WeightedNNIndex::WeightedNNIndex(std::span<const Point> points, std::span<const PointIndex> ids,
                                 std::span<const SqDist> weights) {
  if (ids.empty()) throw EmptyIndex("weighted nearest-neighbor index over an empty set");
  if (ids.size() != weights.size()) throw std::invalid_argument("ids and weights differ in length");
  order_.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) order_.push_back({weights[i], ids[i], points[ids[i]]});
  std::sort(order_.begin(), order_.end(), [](const Entry& a, const Entry& b) {
    return a.weight != b.weight ? a.weight < b.weight : a.id < b.id;
  });
  nodes_.reserve(2 * order_.size());
  build(points, 0, static_cast<std::uint32_t>(order_.size()), 1);
}

std::int32_t WeightedNNIndex::build(std::span<const Point> points, std::uint32_t begin, std::uint32_t end,
                                    std::uint32_t depth) {
  depth_ = std::max(depth_, depth);
  const auto self = static_cast<std::int32_t>(nodes_.size());
  const std::uint32_t mid = end - begin == 1 ? end : begin + (end - begin) / 2;
  std::vector<PointIndex> light;
  light.reserve(mid - begin);
  for (std::uint32_t i = begin; i < mid; ++i) light.push_back(order_[i].id);
  nodes_.push_back({begin, mid, end, order_[mid - 1].weight, NearestSet(points, light)});
  if (end - begin > 1) {
    const auto left = build(points, begin, mid, depth + 1);
    const auto right = build(points, mid, end, depth + 1);
    nodes_[self].left = left;
    nodes_[self].right = right;
  }
  return self;
}

WeightedNNIndex::Result WeightedNNIndex::query(const Point& p) const {
  Result best{kInf, kNoPoint, 0};
  auto offer = [&best](SqDist v, PointIndex id) {
    if (best.id == kNoPoint || v < best.value || (v == best.value && id < best.id)) {
      best.value = v;
      best.id = id;
    }
  };
  std::int32_t cur = 0;
  while (cur >= 0) {
    const Node& node = nodes_[cur];
    ++best.levels;
    if (node.left < 0) {
      const Entry& e = order_[node.begin];
      offer(std::max(sq_dist(p, e.at), e.weight), e.id);
      break;
    }
    const auto hit = node.light.nearest(p);
    if (hit->sq >= node.light_max) {
      // The nearest light point already pays only its distance; only the
      // heavier half can still do better.
      offer(hit->sq, hit->id);
      cur = node.right;
    } else {
      cur = node.left;
    }
  }
  return best;
}

std::vector<PointIndex> WeightedNNIndex::root_light_half() const {
  std::vector<PointIndex> ids;
  for (std::uint32_t i = nodes_[0].begin; i < nodes_[0].mid; ++i) ids.push_back(order_[i].id);
  return ids;
}

WeightedNNIndex wnn_build(std::span<const Point> points, std::span<const PointIndex> ids,
                          std::span<const SqDist> weights) {
  return WeightedNNIndex(points, ids, weights);
}

RecoveryOutcome dp_recover(const Instance& inst, const EstimateVector& est) {
  const auto n = static_cast<PointIndex>(inst.size());
  RecoveryOutcome out;
  if (inst.s == inst.t) {
    out.value = {0.0, inst.s, inst.s};
    return out;
  }
  if (est.levels.size() != n) throw RecoveryFailure("estimate vector does not match the instance");
  const auto& dt = est.levels[inst.t];
  if (!dt) throw RecoveryFailure("target has no hop estimate");
  if (est.levels[inst.s] != 0u) throw RecoveryFailure("source estimate is not zero");

  const std::uint64_t top = std::min<std::uint64_t>(inst.lambda, static_cast<std::uint64_t>(*dt) + est.slack);
  std::uint32_t max_est = 0;
  for (const auto& e : est.levels) {
    if (e) max_est = std::max(max_est, *e);
  }
  std::vector<std::vector<PointIndex>> by_est(static_cast<std::size_t>(max_est) + 1);
  for (PointIndex p = 0; p < n; ++p) {
    if (est.levels[p]) by_est[*est.levels[p]].push_back(p);
  }
  auto band = [&](std::uint64_t i) {
    std::vector<PointIndex> members;
    const std::uint64_t from = i > est.slack ? i - est.slack : 0;
    for (std::uint64_t e = from; e <= std::min<std::uint64_t>(i, max_est); ++e) {
      members.insert(members.end(), by_est[e].begin(), by_est[e].end());
    }
    return members;
  };

  std::vector<SqDist> prev(n, kInf), cur(n, kInf);
  std::vector<CandidateValue> prev_w(n), cur_w(n);
  std::vector<PointIndex> prev_members = band(0);
  out.entries = prev_members.size();
  prev[inst.s] = 0.0;
  prev_w[inst.s] = {0.0, inst.s, inst.s};

  SqDist best = kInf;
  for (std::uint64_t i = 1; i <= top; ++i) {
    std::vector<PointIndex> ids;
    std::vector<SqDist> weights;
    for (PointIndex q : prev_members) {
      if (prev[q] < kInf) {
        ids.push_back(q);
        weights.push_back(prev[q]);
      }
    }
    if (ids.empty()) break;
    const WeightedNNIndex index(inst.points, ids, weights);
    const std::vector<PointIndex> members = band(i);
    out.entries += members.size();
    out.levels = static_cast<std::uint32_t>(i);
    for (PointIndex p : members) {
      const auto r = index.query(inst.points[p]);
      out.max_query_levels = std::max(out.max_query_levels, r.levels);
      cur[p] = r.value;
      const SqDist step = sq_dist(inst.points[p], inst.points[r.id]);
      cur_w[p] = (r.id != p && step >= prev[r.id]) ? CandidateValue{step, r.id, p} : prev_w[r.id];
    }
    if (cur[inst.t] < best) {
      best = cur[inst.t];
      out.value = cur_w[inst.t];
      out.hops = static_cast<std::uint32_t>(i);
    }
    for (PointIndex q : prev_members) prev[q] = kInf;
    for (PointIndex p : members) {
      prev[p] = cur[p];
      prev_w[p] = cur_w[p];
      cur[p] = kInf;
    }
    prev_members = members;
  }
  if (!(best < kInf)) throw RecoveryFailure("no finite bottleneck value reaches the target within the bands");
  return out;
}

}  // namespace rsp

#include "rsp/fast.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "rsp/errors.hpp"
#include "rsp/nearest.hpp"

namespace rsp {

DyadicBracket dyadic_bracket(const Instance& inst, DecisionPair& decision) {
  const auto& pts = inst.points;
  Point lo = pts.front(), hi = pts.front();
  for (const auto& p : pts) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  const SqDist diag = sq_dist(lo, hi);

  std::vector<PointIndex> all(pts.size());
  for (PointIndex i = 0; i < all.size(); ++i) all[i] = i;
  const NearestSet everyone(pts, all);
  SqDist closest = std::numeric_limits<double>::infinity();
  for (const auto& p : pts) {
    if (auto hit = everyone.nearest_positive(p)) closest = std::min(closest, hit->sq);
  }
  if (!(diag > 0.0) || !std::isfinite(closest)) throw BracketFailure("all points coincide");

  // r* is a positive pairwise distance, so 2^lo_exp < r* <= 2^hi_exp.
  int lo_exp = static_cast<int>(std::floor(0.5 * std::log2(closest))) - 1;
  int hi_exp = static_cast<int>(std::ceil(0.5 * std::log2(diag))) + 1;
  auto probe = [&](int j) { return decision.decide(std::ldexp(1.0, 2 * j)); };

  DyadicBracket out;
  ++out.decide_queries;
  if (!probe(hi_exp)) throw BracketFailure("t is not reachable at the largest pairwise distance");
  while (hi_exp - lo_exp > 1) {
    const int mid = lo_exp + (hi_exp - lo_exp) / 2;
    ++out.decide_queries;
    if (probe(mid)) {
      hi_exp = mid;
    } else {
      lo_exp = mid;
    }
  }
  out.exponent = hi_exp;
  const double side = std::ldexp(1.0, hi_exp - 1) / std::numbers::sqrt2 * (1.0 - kDefaultGridShrink);
  out.grid = build_grid_with_side(pts, side, 3);
  return out;
}

HeavyLightMap classify_heavy(const GridIndex& grid, std::uint64_t threshold) {
  HeavyLightMap hl;
  hl.threshold = threshold;
  hl.counts.resize(grid.cell_count());
  hl.heavy.resize(grid.cell_count());
  for (CellId c = 0; c < grid.cell_count(); ++c) {
    hl.counts[c] = static_cast<std::uint32_t>(grid.cell(c).points.size());
    hl.heavy[c] = hl.counts[c] >= threshold;
    if (hl.heavy[c]) ++hl.heavy_count;
  }
  return hl;
}

std::vector<SpecialDistance> special_distances(const Instance& inst, const GridIndex& grid, const HeavyLightMap& hl) {
  std::vector<SpecialDistance> out;
  std::vector<NearestSet> sets(grid.cell_count());
  auto set_of = [&](CellId c) -> const NearestSet& {
    if (sets[c].empty()) sets[c] = NearestSet(inst.points, grid.cell(c).points);
    return sets[c];
  };
  for (CellId a = 0; a < grid.cell_count(); ++a) {
    if (!hl.heavy[a]) continue;
    for (CellId b : grid.neighbors(a)) {
      if (b < a || !hl.heavy[b]) continue;
      const NearestSet& target = set_of(b);
      CandidateValue best{std::numeric_limits<double>::infinity(), kNoPoint, kNoPoint};
      for (PointIndex p : grid.cell(a).points) {
        const auto hit = target.nearest(inst.points[p]);
        if (hit->sq < best.sq || (hit->sq == best.sq && (p < best.first || (p == best.first && hit->id < best.second)))) {
          best = {hit->sq, p, hit->id};
        }
      }
      out.push_back({a, b, best});
    }
  }
  return out;
}

EstimateOutcome estimates_via_contraction(const Instance& inst, const GridIndex& grid, const HeavyLightMap& hl,
                                          const std::vector<SpecialDistance>& specials, const Interval& iv,
                                          DecisionPair& decision, const BifurcationOptions& opt) {
  EstimateOutcome out;
  Contraction con;
  con.heavy = hl.heavy;
  con.cell_points.resize(grid.cell_count());
  for (CellId c = 0; c < grid.cell_count(); ++c) {
    if (hl.heavy[c]) con.cell_points[c] = NearestSet(inst.points, grid.cell(c).points);
  }

  // Settle which special distances are <= r* with one binary search.
  std::vector<SpecialDistance> sorted = specials;
  std::sort(sorted.begin(), sorted.end(),
            [](const SpecialDistance& x, const SpecialDistance& y) { return x.value.sq < y.value.sq; });
  const auto calls_before = decision.counters().calls();
  std::size_t lo = 0, hi = sorted.size();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (!decision.decide_strict(sorted[mid].value)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  for (const auto& sd : sorted) con.heavy_adjacent.emplace(Contraction::key(sd.a, sd.b), false);
  for (std::size_t i = 0; i < lo; ++i) con.heavy_adjacent[Contraction::key(sorted[i].a, sorted[i].b)] = true;
  out.specials_within = static_cast<std::uint32_t>(lo);
  out.special_calls = decision.counters().calls() - calls_before;

  BifurcationOptions local = opt;
  auto check_light = [&grid, &hl, outer = opt.validate](const CandidateValue& c) {
    const CellId a = grid.cell_of(c.first), b = grid.cell_of(c.second);
    if (a == b || (hl.heavy[a] && hl.heavy[b])) {
      throw ProtocolViolation("contracted run compared a distance outside the light pairs");
    }
    if (outer) outer(c);
  };
  local.validate = check_light;

  auto result = bifurcate(inst, BfsRun(inst, grid, BfsLimits::full(), &con), iv, decision, local);
  out.bifurcation = result.stats;
  out.estimates.levels = result.run.take_levels();
  out.estimates.slack = 3 * hl.heavy_count;
  return out;
}

}  // namespace rsp

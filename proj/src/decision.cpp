#include "rsp/decision.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rsp {

BfsRun::BfsRun(const Instance& inst, const GridIndex& grid, BfsLimits limits, const Contraction* contraction)
    : inst_(&inst), grid_(&grid), contraction_(contraction), limits_(limits) {
  level_.assign(inst.size(), std::nullopt);
  expansions_.assign(grid.cell_count(), 0);
  const CellId home = grid.cell_of(inst.s);
  if (is_heavy(home)) {
    for (PointIndex p : grid.cell(home).points) level_[p] = 0;
    frontier_.push_back(grid.cell(home).points.front());
  } else {
    level_[inst.s] = 0;
    frontier_.push_back(inst.s);
  }
  if (limits_.target && level_[*limits_.target]) phase_ = Phase::done;
}

bool BfsRun::visit_point(PointIndex p) {
  level_[p] = depth_ + 1;
  next_.push_back(p);
  if (limits_.target == p) {
    phase_ = Phase::done;
    return true;
  }
  return false;
}

bool BfsRun::visit_cell(CellId c) {
  bool hit_target = false;
  for (PointIndex p : grid_->cell(c).points) {
    level_[p] = depth_ + 1;
    if (limits_.target == p) hit_target = true;
  }
  work_ += grid_->cell(c).points.size();
  next_.push_back(grid_->cell(c).points.front());
  if (hit_target) phase_ = Phase::done;
  return hit_target;
}

const NearestSet& BfsRun::reds() const {
  return is_heavy(group_cell_) ? contraction_->cell_points[group_cell_] : own_reds_;
}

std::optional<CandidateValue> BfsRun::advance() {
  if (awaiting_) throw std::logic_error("BfsRun::advance called with an unanswered comparison");
  const auto& pts = inst_->points;
  while (true) {
    switch (phase_) {
      case Phase::done:
        return std::nullopt;

      case Phase::level_start: {
        if (frontier_.empty() || (limits_.max_level && depth_ >= *limits_.max_level)) {
          phase_ = Phase::done;
          break;
        }
        std::sort(frontier_.begin(), frontier_.end(), [this](PointIndex a, PointIndex b) {
          const CellId ca = grid_->cell_of(a), cb = grid_->cell_of(b);
          return ca != cb ? ca < cb : a < b;
        });
        group_begin_ = 0;
        phase_ = Phase::group_start;
        break;
      }

      case Phase::group_start: {
        if (group_begin_ == frontier_.size()) {
          frontier_.swap(next_);
          next_.clear();
          ++depth_;
          phase_ = Phase::level_start;
          break;
        }
        group_cell_ = grid_->cell_of(frontier_[group_begin_]);
        group_end_ = group_begin_ + 1;
        while (group_end_ < frontier_.size() && grid_->cell_of(frontier_[group_end_]) == group_cell_) ++group_end_;
        if (expansions_[group_cell_] < std::numeric_limits<std::uint8_t>::max()) ++expansions_[group_cell_];
        work_ += group_end_ - group_begin_;

        if (!is_heavy(group_cell_)) {
          own_reds_ = NearestSet(pts, std::span<const PointIndex>(frontier_.data() + group_begin_, group_end_ - group_begin_));
          // Cell diameter is below r, so every unvisited cell-mate is adjacent.
          for (PointIndex p : grid_->cell(group_cell_).points) {
            ++work_;
            if (!level_[p] && visit_point(p)) return std::nullopt;
          }
        }
        neighbor_pos_ = 0;
        blue_pos_ = 0;
        phase_ = Phase::neighbors;
        break;
      }

      case Phase::neighbors: {
        const auto nbrs = grid_->neighbors(group_cell_);
        while (neighbor_pos_ < nbrs.size()) {
          const CellId other = nbrs[neighbor_pos_];
          if (is_heavy(other)) {
            const bool fresh = blue_pos_ == 0;
            blue_pos_ = 1;
            const bool visited = level_[grid_->cell(other).points.front()].has_value();
            if (fresh && !visited) {
              if (is_heavy(group_cell_)) {
                if (contraction_->adjacent(group_cell_, other) && visit_cell(other)) return std::nullopt;
              } else {
                // One comparison per light frontier group: the closest pair
                // between its red points and the heavy cell.
                NearestSet::Hit best{std::numeric_limits<double>::infinity(), kNoPoint};
                PointIndex best_red = kNoPoint;
                for (std::size_t k = group_begin_; k < group_end_; ++k) {
                  const PointIndex red = frontier_[k];
                  const auto hit = contraction_->cell_points[other].nearest(pts[red]);
                  ++work_;
                  if (hit && (hit->sq < best.sq || (hit->sq == best.sq && red < best_red))) {
                    best = *hit;
                    best_red = red;
                  }
                }
                awaiting_ = Pending{{best.sq, best_red, best.id}, kNoPoint, other};
                return awaiting_->value;
              }
            }
            ++neighbor_pos_;
            blue_pos_ = 0;
            continue;
          }
          const auto& blues = grid_->cell(other).points;
          while (blue_pos_ < blues.size()) {
            const PointIndex b = blues[blue_pos_++];
            ++work_;
            if (level_[b]) continue;
            const auto hit = reds().nearest(pts[b]);
            awaiting_ = Pending{{hit->sq, hit->id, b}, b, other};
            return awaiting_->value;
          }
          ++neighbor_pos_;
          blue_pos_ = 0;
        }
        group_begin_ = group_end_;
        phase_ = Phase::group_start;
        break;
      }
    }
  }
}

void BfsRun::answer(bool within) {
  if (!awaiting_) throw std::logic_error("BfsRun::answer without a pending comparison");
  const Pending pending = *awaiting_;
  awaiting_.reset();
  transcript_.push_back({pending.value, within});
  if (!within) return;
  if (pending.blue == kNoPoint) {
    visit_cell(pending.blue_cell);
  } else {
    visit_point(pending.blue);
  }
}

std::uint32_t BfsRun::max_cell_expansions() const {
  std::uint32_t m = 0;
  for (auto e : expansions_) m = std::max<std::uint32_t>(m, e);
  return m;
}

bool BfsRun::reached() const {
  if (!limits_.target) return false;
  const auto& lv = level_[*limits_.target];
  return lv && (!limits_.max_level || *lv <= *limits_.max_level);
}

HopVector BfsRun::take_levels() { return std::move(level_); }
Transcript BfsRun::take_transcript() { return std::move(transcript_); }

namespace {

DecisionOutcome zero_radius(const Instance& inst, bool inclusive) {
  DecisionOutcome out;
  out.levels.assign(inst.size(), std::nullopt);
  out.levels[inst.s] = 0;
  if (inclusive && inst.lambda >= 1) {
    for (PointIndex p = 0; p < inst.size(); ++p) {
      if (p != inst.s && inst.points[p] == inst.points[inst.s]) out.levels[p] = 1;
    }
  }
  out.reached = out.levels[inst.t] && *out.levels[inst.t] <= inst.lambda;
  return out;
}

DecisionOutcome finish(BfsRun& run) {
  DecisionOutcome out;
  out.reached = run.reached();
  out.max_cell_expansions = run.max_cell_expansions();
  out.levels = run.take_levels();
  out.transcript = run.take_transcript();
  return out;
}

}  // namespace

DecisionOutcome decide_bfs(const Instance& inst, SqDist sq_r, EdgeRule rule, const GridIndex* grid) {
  const bool inclusive = rule == EdgeRule::inclusive;
  if (inst.s == inst.t) {
    DecisionOutcome out;
    out.reached = true;
    out.levels.assign(inst.size(), std::nullopt);
    out.levels[inst.s] = 0;
    return out;
  }
  if (!(sq_r > 0.0)) return zero_radius(inst, inclusive && sq_r == 0.0);

  GridIndex own;
  if (!grid) {
    own = build_grid(inst.points, std::sqrt(sq_r));
    grid = &own;
  }
  BfsRun run(inst, *grid, BfsLimits::decision(inst));
  if (inclusive) {
    run_to_end(run, [sq_r](const CandidateValue& c) { return c.sq <= sq_r; });
  } else {
    run_to_end(run, [sq_r](const CandidateValue& c) { return c.sq < sq_r; });
  }
  return finish(run);
}

DecisionOutcome decide_bfs_instrumented(const Instance& inst, const GridIndex& grid,
                                        const std::function<bool(const CandidateValue&)>& resolver) {
  BfsRun run(inst, grid, BfsLimits::decision(inst));
  run_to_end(run, resolver);
  return finish(run);
}

bool DecisionPair::decide(const CandidateValue& c) {
  ++counters_.decide_queries;
  if (memoize_) {
    if (auto known = known_.implies_at_most(c.sq)) return *known;
  }
  ++counters_.decide_calls;
  const bool yes = decide_bfs(*inst_, c.sq, EdgeRule::inclusive).reached;
  if (yes) {
    known_.drop_upper({c, true});
  } else {
    known_.raise_lower({c, false});
  }
  return yes;
}

bool DecisionPair::decide_strict(const CandidateValue& c) {
  ++counters_.strict_queries;
  if (memoize_) {
    if (auto known = known_.implies_below(c.sq)) return *known;
  }
  ++counters_.strict_calls;
  const bool yes = decide_bfs(*inst_, c.sq, EdgeRule::strict).reached;
  if (yes) {
    known_.drop_upper({c, false});
  } else {
    known_.raise_lower({c, true});
  }
  return yes;
}

}  // namespace rsp

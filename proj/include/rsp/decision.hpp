#pragma once

// Grid-based BFS decision procedure for "is d_r(s, t) <= lambda".
//
// The BFS is written as a resumable state machine: advance() runs until the
// next comparison "c <= r?" against the (possibly unknown) radius and
// suspends; answer() supplies the outcome. Plain decisions answer from the
// known radius, instrumented runs delegate to a resolver, and the
// bifurcation engine forks copies of suspended runs.

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "rsp/core.hpp"
#include "rsp/grid.hpp"
#include "rsp/nearest.hpp"

namespace rsp {

enum class EdgeRule { inclusive, strict };

// One resolved comparison: whether value <= r held.
struct Comparison {
  CandidateValue value;
  bool within = false;

  friend bool operator==(const Comparison&, const Comparison&) = default;
};
using Transcript = std::vector<Comparison>;

struct BfsLimits {
  std::optional<std::uint32_t> max_level;
  std::optional<PointIndex> target;

  static BfsLimits decision(const Instance& inst) { return {inst.lambda, inst.t}; }
  static BfsLimits full() { return {}; }
};

/// Heavy cells of a grid collapsed into single BFS vertices. Adjacency
/// between two heavy cells is fixed upfront (resolved special distances), so
/// a contracted run never compares r against a heavy-heavy distance.
struct Contraction {
  std::vector<bool> heavy;              // per cell
  std::vector<NearestSet> cell_points;  // per cell, populated for heavy cells
  std::unordered_map<std::uint64_t, bool> heavy_adjacent;

  static std::uint64_t key(CellId a, CellId b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
  }
  bool adjacent(CellId a, CellId b) const {
    auto it = heavy_adjacent.find(key(a, b));
    return it != heavy_adjacent.end() && it->second;
  }
};

class BfsRun {
 public:
  // inst, grid and contraction must outlive the run and all of its copies.
  BfsRun(const Instance& inst, const GridIndex& grid, BfsLimits limits,
         const Contraction* contraction = nullptr);

  // Next comparison value, or nullopt once the run has halted.
  std::optional<CandidateValue> advance();
  void answer(bool within);

  bool halted() const { return phase_ == Phase::done; }
  bool awaiting() const { return awaiting_.has_value(); }
  const HopVector& levels() const { return level_; }
  const Transcript& transcript() const { return transcript_; }
  std::uint64_t work() const { return work_; }
  // Largest number of times any single cell was expanded.
  std::uint32_t max_cell_expansions() const;
  bool reached() const;
  // Move the results out; the run is unusable afterwards.
  HopVector take_levels();
  Transcript take_transcript();

 private:
  enum class Phase { level_start, group_start, neighbors, done };

  struct Pending {
    CandidateValue value;
    PointIndex blue;      // kNoPoint when the candidate is a contracted cell
    CellId blue_cell;
  };

  bool is_heavy(CellId c) const { return contraction_ && contraction_->heavy[c]; }
  bool visit_point(PointIndex p);
  bool visit_cell(CellId c);
  const NearestSet& reds() const;

  const Instance* inst_;
  const GridIndex* grid_;
  const Contraction* contraction_;
  BfsLimits limits_;

  HopVector level_;
  std::vector<std::uint8_t> expansions_;
  std::vector<PointIndex> frontier_;
  std::vector<PointIndex> next_;
  std::uint32_t depth_ = 0;

  Phase phase_ = Phase::level_start;
  std::size_t group_begin_ = 0;
  std::size_t group_end_ = 0;
  CellId group_cell_ = 0;
  std::size_t neighbor_pos_ = 0;
  std::size_t blue_pos_ = 0;
  NearestSet own_reds_;

  std::optional<Pending> awaiting_;
  Transcript transcript_;
  std::uint64_t work_ = 0;
};

// Drives a run to completion, answering every comparison with resolve.
template <typename Resolver>
void run_to_end(BfsRun& run, Resolver&& resolve) {
  while (auto c = run.advance()) run.answer(resolve(*c));
}

struct DecisionOutcome {
  bool reached = false;
  HopVector levels;
  Transcript transcript;
  std::uint32_t max_cell_expansions = 0;
};

// Whether d_r(s,t) <= lambda with edges sq_dist <= sq_r (inclusive) or
// sq_dist < sq_r (strict). With grid == nullptr a grid for radius sqrt(sq_r)
// is built; a supplied grid must have cell diameter below sqrt(sq_r) and a
// neighborhood covering that radius.
DecisionOutcome decide_bfs(const Instance& inst, SqDist sq_r, EdgeRule rule,
                           const GridIndex* grid = nullptr);

// The same BFS with every "c <= r*" comparison delegated to resolver. Any
// exception thrown by the resolver propagates.
DecisionOutcome decide_bfs_instrumented(const Instance& inst, const GridIndex& grid,
                                        const std::function<bool(const CandidateValue&)>& resolver);

/// Inclusive ("r* <= c") and strict ("r* < c") decision oracles for one
/// instance, with call counters. With memoization on, answers implied by
/// earlier answers (monotonicity) are returned without running a BFS.
class DecisionPair {
 public:
  struct Counters {
    std::uint64_t decide_calls = 0;
    std::uint64_t strict_calls = 0;
    std::uint64_t decide_queries = 0;
    std::uint64_t strict_queries = 0;

    std::uint64_t calls() const { return decide_calls + strict_calls; }
  };

  explicit DecisionPair(const Instance& inst, bool memoize = true) : inst_(&inst), memoize_(memoize) {}

  bool decide(const CandidateValue& c);
  bool decide(SqDist c) { return decide(CandidateValue{c}); }
  bool decide_strict(const CandidateValue& c);
  bool decide_strict(SqDist c) { return decide_strict(CandidateValue{c}); }

  const Instance& instance() const { return *inst_; }
  const RStarRange& knowledge() const { return known_; }
  const Counters& counters() const { return counters_; }

 private:
  const Instance* inst_;
  bool memoize_;
  RStarRange known_;
  Counters counters_;
};

}  // namespace rsp

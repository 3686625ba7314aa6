#pragma once

// Randomized interval shrinking: find (lo, hi] around r* holding few
// candidate values, using only selection and the decision oracle.

#include <cstdint>
#include <vector>

#include "rsp/core.hpp"
#include "rsp/decision.hpp"
#include "rsp/grid.hpp"
#include "rsp/selection.hpp"

namespace rsp {

/// Per level i = 1..ceil(log2 n): a "wide" sample at rate 1/ceil(L/2^i) and
/// a "narrow" sample at rate 1/2^i, independent per element and level.
struct SampleFamily {
  struct Level {
    std::uint32_t index = 0;
    double wide_rate = 1.0;
    double narrow_rate = 1.0;
    std::vector<PointIndex> wide;
    std::vector<PointIndex> narrow;
  };
  std::uint64_t seed = 0;
  std::vector<Level> levels;
};

SampleFamily sample_family(std::size_t n, std::uint64_t L, std::uint64_t seed);

// Maps a raw 64-bit draw to [0, 1) and tests it against p.
bool bernoulli(std::uint64_t raw, double p);

struct ShrinkOutcome {
  Interval interval;              // intersection over trials
  std::vector<Interval> trials;   // one per trial
  SelectionStats selection;
  std::uint64_t trials_run = 0;
  std::uint64_t levels_run = 0;
  std::uint64_t values_generated = 0;  // pair values produced for the collections
  std::uint64_t values_searched = 0;   // values left after clipping by known answers
};

// Single random subset at rate 1/sqrt(L); pairs with an endpoint in it.
ShrinkOutcome shrink_basic(const Instance& inst, std::uint64_t L, DecisionPair& decision, std::uint64_t seed);

// Two-sided level samples, binary search per level over the cross product.
ShrinkOutcome shrink_improved(const Instance& inst, std::uint64_t L, DecisionPair& decision, std::uint64_t seed);

// As shrink_improved, restricted to pairs in distinct neighboring cells of
// grid that are not both heavy. Throws NoLightPairs if the grid has none.
ShrinkOutcome shrink_light(const Instance& inst, const GridIndex& grid, const std::vector<bool>& heavy,
                           std::uint64_t L, DecisionPair& decision, std::uint64_t seed);

// Whether some pair of distinct neighboring cells has a light member.
bool has_light_pairs(const GridIndex& grid, const std::vector<bool>& heavy);

}  // namespace rsp

#pragma once

// Pieces of the heavy/light pipeline: a grid at the scale of r*, heavy cell
// classification, closest pairs between neighboring heavy cells, and hop
// estimates from the BFS with heavy cells contracted.

#include <cstdint>
#include <vector>

#include "rsp/bifurcation.hpp"
#include "rsp/core.hpp"
#include "rsp/decision.hpp"
#include "rsp/grid.hpp"

namespace rsp {

struct DyadicBracket {
  int exponent = 0;  // 2^(exponent-1) < r* <= 2^exponent
  GridIndex grid;    // side 2^(exponent-1)/sqrt(2), 7x7 neighborhood
  std::uint32_t decide_queries = 0;
};

// Requires r* > 0. Throws BracketFailure if no power of two reaches t.
DyadicBracket dyadic_bracket(const Instance& inst, DecisionPair& decision);

struct HeavyLightMap {
  std::vector<std::uint32_t> counts;  // per cell
  std::vector<bool> heavy;            // per cell
  std::uint32_t heavy_count = 0;
  std::uint64_t threshold = 0;
};

HeavyLightMap classify_heavy(const GridIndex& grid, std::uint64_t threshold);

struct SpecialDistance {
  CellId a = 0;
  CellId b = 0;  // a < b
  CandidateValue value;
};

// Closest pair between every two neighboring heavy cells.
std::vector<SpecialDistance> special_distances(const Instance& inst, const GridIndex& grid, const HeavyLightMap& hl);

struct EstimateVector {
  HopVector levels;
  std::uint32_t slack = 0;
};

struct EstimateOutcome {
  EstimateVector estimates;
  BifurcationStats bifurcation;
  std::uint64_t special_calls = 0;  // oracle calls spent on special distances
  std::uint32_t specials_within = 0;
};

// Hop levels in the graph at r* with each heavy cell merged into one vertex.
// iv must contain r*. Every runtime comparison is checked to be a distance
// between distinct cells that are not both heavy.
EstimateOutcome estimates_via_contraction(const Instance& inst, const GridIndex& grid, const HeavyLightMap& hl,
                                          const std::vector<SpecialDistance>& specials, const Interval& iv,
                                          DecisionPair& decision, const BifurcationOptions& opt = {});

}  // namespace rsp

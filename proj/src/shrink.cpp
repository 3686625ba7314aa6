#include "rsp/shrink.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "rsp/errors.hpp"

namespace rsp {

bool bernoulli(std::uint64_t raw, double p) {
  return static_cast<double>(raw >> 11) * 0x1.0p-53 < p;
}

SampleFamily sample_family(std::size_t n, std::uint64_t L, std::uint64_t seed) {
  SampleFamily fam;
  fam.seed = seed;
  std::mt19937_64 rng(splitmix64(seed));
  const std::uint32_t depth = std::max<std::uint32_t>(1, ceil_log2(n));
  const double l = static_cast<double>(std::max<std::uint64_t>(L, 1));
  for (std::uint32_t i = 1; i <= depth; ++i) {
    SampleFamily::Level lv;
    lv.index = i;
    const double scale = std::ldexp(1.0, static_cast<int>(i));
    lv.wide_rate = 1.0 / std::max(1.0, std::ceil(l / scale));
    lv.narrow_rate = 1.0 / scale;
    for (PointIndex p = 0; p < n; ++p) {
      if (bernoulli(rng(), lv.wide_rate)) lv.wide.push_back(p);
      if (bernoulli(rng(), lv.narrow_rate)) lv.narrow.push_back(p);
    }
    fam.levels.push_back(std::move(lv));
  }
  return fam;
}

namespace {

// Splits generated values into those already settled by earlier answers
// and those a search still has to look at.
class Clipper {
 public:
  explicit Clipper(const RStarRange& known) : known_(known) {}

  // True when earlier answers already decide c; records it as an extreme.
  bool settled(const CandidateValue& c) {
    const auto k = known_.implies_at_most(c.sq);
    if (!k) return false;
    if (*k) {
      if (!above || c.sq < above->sq) above = c;
    } else {
      if (!below || c.sq > below->sq) below = c;
    }
    return true;
  }

  std::optional<CandidateValue> below;  // largest value with decide false
  std::optional<CandidateValue> above;  // smallest value with decide true

 private:
  const RStarRange& known_;
};

void raise_lo(Interval& iv, const std::optional<CandidateValue>& lo) {
  if (lo && (!iv.lo || lo->sq > iv.lo->sq)) {
    iv.lo = lo;
    iv.lo_evidence = true;
  }
}

void drop_hi(Interval& iv, const std::optional<CandidateValue>& hi) {
  if (hi && (!iv.hi || hi->sq < iv.hi->sq)) {
    iv.hi = hi;
    iv.hi_evidence = true;
  }
}

void intersect(Interval& into, const Interval& other) {
  raise_lo(into, other.lo);
  drop_hi(into, other.hi);
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  return splitmix64(seed ^ (0xa0761d6478bd642fULL * (trial + 1)));
}

// Successor search over the unsettled collections plus the settled extremes.
Interval search_level(const CollectionList& cols, const Clipper& clip, DecisionPair& decision, SelectionStats& stats) {
  Interval iv = union_successor(cols, [&](const CandidateValue& c) { return decision.decide(c); }, &stats);
  raise_lo(iv, clip.below);
  drop_hi(iv, clip.above);
  return iv;
}

template <typename TrialFn>
ShrinkOutcome run_trials(const Instance& inst, std::uint64_t seed, TrialFn&& trial) {
  ShrinkOutcome out;
  const std::uint32_t trials = std::max<std::uint32_t>(1, ceil_log2(inst.size()));
  for (std::uint32_t t = 0; t < trials; ++t) {
    Interval iv = trial(trial_seed(seed, t), out);
    out.trials.push_back(iv);
    intersect(out.interval, iv);
    ++out.trials_run;
  }
  return out;
}

}  // namespace

ShrinkOutcome shrink_basic(const Instance& inst, std::uint64_t L, DecisionPair& decision, std::uint64_t seed) {
  const auto n = static_cast<PointIndex>(inst.size());
  const double rate = 1.0 / std::sqrt(static_cast<double>(std::max<std::uint64_t>(L, 1)));
  return run_trials(inst, seed, [&](std::uint64_t s, ShrinkOutcome& out) {
    std::mt19937_64 rng(splitmix64(s));
    std::vector<char> chosen(n, 0);
    for (PointIndex p = 0; p < n; ++p) chosen[p] = bernoulli(rng(), rate);

    Clipper clip(decision.knowledge());
    std::vector<CandidateValue> inside;
    for (PointIndex a = 0; a < n; ++a) {
      if (!chosen[a]) continue;
      for (PointIndex b = 0; b < n; ++b) {
        if (b == a || (chosen[b] && b < a)) continue;
        const CandidateValue c = make_candidate(inst, a, b);
        ++out.values_generated;
        if (!clip.settled(c)) inside.push_back(c);
      }
    }
    out.values_searched += inside.size();
    ++out.levels_run;
    SortedValues col(std::move(inside));
    return search_level({&col}, clip, decision, out.selection);
  });
}

ShrinkOutcome shrink_improved(const Instance& inst, std::uint64_t L, DecisionPair& decision, std::uint64_t seed) {
  return run_trials(inst, seed, [&](std::uint64_t s, ShrinkOutcome& out) {
    const SampleFamily fam = sample_family(inst.size(), L, s);
    Interval trial;
    // Small products first: their answers settle most of the larger ones.
    for (auto it = fam.levels.rbegin(); it != fam.levels.rend(); ++it) {
      Clipper clip(decision.knowledge());
      std::vector<CandidateValue> inside;
      for (PointIndex a : it->wide) {
        for (PointIndex b : it->narrow) {
          if (a == b) continue;
          const CandidateValue c = make_candidate(inst, a, b);
          ++out.values_generated;
          if (!clip.settled(c)) inside.push_back(c);
        }
      }
      out.values_searched += inside.size();
      ++out.levels_run;
      SortedValues col(std::move(inside));
      intersect(trial, search_level({&col}, clip, decision, out.selection));
    }
    return trial;
  });
}

bool has_light_pairs(const GridIndex& grid, const std::vector<bool>& heavy) {
  for (CellId c = 0; c < grid.cell_count(); ++c) {
    for (CellId nb : grid.neighbors(c)) {
      if (!(heavy[c] && heavy[nb])) return true;
    }
  }
  return false;
}

namespace {

// Members of a sample grouped by cell, CSR layout.
struct CellBuckets {
  std::vector<std::uint32_t> begin;
  std::vector<PointIndex> members;

  CellBuckets(const GridIndex& grid, const std::vector<PointIndex>& sample) : begin(grid.cell_count() + 1, 0) {
    for (PointIndex p : sample) ++begin[grid.cell_of(p) + 1];
    for (std::size_t c = 0; c < grid.cell_count(); ++c) begin[c + 1] += begin[c];
    members.resize(sample.size());
    std::vector<std::uint32_t> pos(begin.begin(), begin.end() - 1);
    for (PointIndex p : sample) members[pos[grid.cell_of(p)]++] = p;
  }
  std::span<const PointIndex> of(CellId c) const {
    return {members.data() + begin[c], members.data() + begin[c + 1]};
  }
};

}  // namespace

ShrinkOutcome shrink_light(const Instance& inst, const GridIndex& grid, const std::vector<bool>& heavy,
                           std::uint64_t L, DecisionPair& decision, std::uint64_t seed) {
  if (!has_light_pairs(grid, heavy)) throw NoLightPairs("every neighboring cell pair is heavy");
  return run_trials(inst, seed, [&](std::uint64_t s, ShrinkOutcome& out) {
    const SampleFamily fam = sample_family(inst.size(), L, s);
    Interval trial;
    for (auto it = fam.levels.rbegin(); it != fam.levels.rend(); ++it) {
      const CellBuckets wide(grid, it->wide);
      const CellBuckets narrow(grid, it->narrow);
      Clipper clip(decision.knowledge());
      std::vector<SortedValues> cols;
      for (CellId c = 0; c < grid.cell_count(); ++c) {
        const auto reds = wide.of(c);
        if (reds.empty()) continue;
        for (CellId nb : grid.neighbors(c)) {
          if (heavy[c] && heavy[nb]) continue;
          const auto blues = narrow.of(nb);
          if (blues.empty()) continue;
          std::vector<CandidateValue> inside;
          for (PointIndex a : reds) {
            for (PointIndex b : blues) {
              const CandidateValue v = make_candidate(inst, a, b);
              ++out.values_generated;
              if (!clip.settled(v)) inside.push_back(v);
            }
          }
          out.values_searched += inside.size();
          if (!inside.empty()) cols.emplace_back(std::move(inside));
        }
      }
      ++out.levels_run;
      CollectionList list;
      list.reserve(cols.size());
      for (const auto& col : cols) list.push_back(&col);
      intersect(trial, search_level(list, clip, decision, out.selection));
    }
    return trial;
  });
}

}  // namespace rsp

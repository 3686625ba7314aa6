#pragma once

// Simulation of a comparison-based computation at the unknown r*.
//
// The computation is any copyable state machine with
//   std::optional<CandidateValue> advance();   // next "c <= r*?" or nullopt
//   void answer(bool);
// Comparisons the current knowledge settles are answered in place. Any other
// comparison forks the branch: one child assumes c <= r*, the other c > r*.
// Distinct open values accumulate until a batch is full (or the step budget
// runs out, or nothing is runnable); then the batch is sorted and r* located
// among it with a binary search over the strict oracle plus one inclusive
// call, which leaves exactly one consistent branch alive.

#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "rsp/core.hpp"
#include "rsp/decision.hpp"
#include "rsp/errors.hpp"

namespace rsp {

struct BifurcationOptions {
  std::size_t batch = 0;             // 0: default_batch(L, n)
  std::uint64_t L = 1;               // interval size parameter the batch default is derived from
  std::uint64_t steps_per_point = 8; // resolve early after this many steps per input point
  // Extra protocol check on every emitted comparison; throws to abort.
  std::function<void(const CandidateValue&)> validate;
};

struct BifurcationStats {
  std::uint64_t comparisons = 0;
  std::uint64_t settled = 0;  // answered from current knowledge
  std::uint64_t forks = 0;
  std::uint64_t resolutions = 0;
  std::uint64_t decide_calls = 0;
  std::uint64_t strict_calls = 0;
  std::size_t batch = 0;
  std::size_t max_live = 0;
  std::size_t max_pending = 0;
  bool live_bound_held = true;  // live <= pending + 1 after every fork

  std::uint64_t calls() const { return decide_calls + strict_calls; }
};

template <typename Run>
struct BifurcationResult {
  Run run;             // the unique surviving branch, halted
  RStarRange range;    // final knowledge about r*
  std::optional<CandidateValue> exact;
  BifurcationStats stats;
};

inline std::size_t default_batch(std::uint64_t L, std::size_t n) {
  const double lg = n > 1 ? std::log2(static_cast<double>(n)) : 1.0;
  const double b = std::ceil(std::sqrt(static_cast<double>(std::max<std::uint64_t>(L, 1)) * lg));
  return std::max<std::size_t>(1, static_cast<std::size_t>(b));
}

namespace detail {

inline void absorb_witnessed(RStarRange& range, const RStarRange& known) {
  if (known.lower() && known.lower()->at.has_witness()) range.raise_lower(*known.lower());
  if (known.upper() && known.upper()->at.has_witness()) range.drop_upper(*known.upper());
}

}  // namespace detail

template <typename Run>
BifurcationResult<Run> bifurcate(const Instance& inst, Run initial, const Interval& iv, DecisionPair& decision,
                                 const BifurcationOptions& opt = {}) {
  struct Branch {
    Run run;
    RStarRange local;
  };

  BifurcationStats stats;
  stats.batch = opt.batch ? opt.batch : default_batch(opt.L, inst.size());
  const std::uint64_t step_budget = std::max<std::uint64_t>(1, opt.steps_per_point * inst.size());
  const auto calls_before = decision.counters();

  RStarRange global = RStarRange::from_interval(iv);
  detail::absorb_witnessed(global, decision.knowledge());
  std::optional<CandidateValue> exact;
  if (global.is_point()) exact = global.upper()->at;

  std::deque<Branch> runnable;
  std::vector<Branch> parked;
  std::map<SqDist, CandidateValue> pending;
  std::uint64_t steps_since = 0;
  runnable.push_back({std::move(initial), global});

  auto live = [&] { return runnable.size() + parked.size(); };

  auto resolve = [&] {
    std::vector<CandidateValue> values;
    values.reserve(pending.size());
    for (const auto& [sq, c] : pending) values.push_back(c);
    // Number of pending values <= r*.
    std::size_t lo = 0, hi = values.size();
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (!decision.decide_strict(values[mid])) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    if (lo > 0) {
      const CandidateValue& below = values[lo - 1];
      if (decision.decide(below)) {
        global.raise_lower({below, true});
        global.drop_upper({below, true});
        exact = below;
      } else {
        global.raise_lower({below, false});
      }
    }
    if (lo < values.size() && !exact) global.drop_upper({values[lo], false});
    detail::absorb_witnessed(global, decision.knowledge());

    std::optional<Branch> survivor;
    bool survivor_parked = false;
    std::size_t matches = 0;
    for (auto& b : runnable) {
      if (b.local.contains(global)) {
        ++matches;
        survivor = std::move(b);
        survivor_parked = false;
      }
    }
    for (auto& b : parked) {
      if (b.local.contains(global)) {
        ++matches;
        survivor = std::move(b);
        survivor_parked = true;
      }
    }
    if (matches != 1) throw ProtocolViolation("bifurcation resolution left " + std::to_string(matches) + " branches");
    survivor->local = global;
    runnable.clear();
    parked.clear();
    if (survivor_parked) {
      parked.push_back(std::move(*survivor));
    } else {
      runnable.push_back(std::move(*survivor));
    }
    pending.clear();
    steps_since = 0;
    ++stats.resolutions;
  };

  while (true) {
    if (!pending.empty() && (pending.size() >= stats.batch || steps_since >= step_budget || runnable.empty())) {
      resolve();
      continue;
    }
    if (runnable.empty()) break;

    Branch branch = std::move(runnable.front());
    runnable.pop_front();
    while (true) {
      auto c = branch.run.advance();
      if (!c) {
        parked.push_back(std::move(branch));
        break;
      }
      if (!witness_matches(inst, *c)) throw ProtocolViolation("comparison value is not a pairwise distance");
      if (opt.validate) opt.validate(*c);
      ++stats.comparisons;
      ++steps_since;
      if (auto known = branch.local.implies_reaches(c->sq)) {
        ++stats.settled;
        branch.run.answer(*known);
        continue;
      }
      Branch other = branch;
      branch.local.raise_lower({*c, true});
      branch.run.answer(true);
      other.local.drop_upper({*c, false});
      other.run.answer(false);
      pending.emplace(c->sq, *c);
      ++stats.forks;
      runnable.push_back(std::move(branch));
      runnable.push_back(std::move(other));
      stats.max_live = std::max(stats.max_live, live());
      stats.max_pending = std::max(stats.max_pending, pending.size());
      if (live() > pending.size() + 1) stats.live_bound_held = false;
      break;
    }
  }

  if (parked.size() != 1) throw ProtocolViolation("bifurcation ended with " + std::to_string(parked.size()) + " branches");
  stats.max_live = std::max<std::size_t>(stats.max_live, 1);
  const auto& after = decision.counters();
  stats.decide_calls = after.decide_calls - calls_before.decide_calls;
  stats.strict_calls = after.strict_calls - calls_before.strict_calls;
  return {std::move(parked.front().run), global, exact, stats};
}

}  // namespace rsp

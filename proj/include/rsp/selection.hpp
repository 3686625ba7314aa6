#pragma once

// Rank selection over squared pairwise distances.
//
// Collections expose select/rank so a faster selection oracle can replace the
// materialized ones later. Duplicates are handled purely by rank arithmetic.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "rsp/core.hpp"

namespace rsp {

inline constexpr std::uint64_t kDefaultSelectionBudget = 100'000'000;

struct SelectionStats {
  std::uint64_t select_probes = 0;
  std::uint64_t rank_probes = 0;
  std::uint64_t union_selects = 0;
  std::uint64_t decide_probes = 0;
};

class SelectableCollection {
 public:
  virtual ~SelectableCollection() = default;
  virtual std::uint64_t size() const = 0;
  // k-th smallest value, 1-indexed. Throws RankOutOfRange.
  virtual CandidateValue select(std::uint64_t k) const = 0;
  // Number of values <= v.
  virtual std::uint64_t rank(SqDist v) const = 0;
  // Number of values < v.
  virtual std::uint64_t rank_below(SqDist v) const = 0;
};

/// An explicitly stored multiset of candidate values, kept sorted.
class SortedValues final : public SelectableCollection {
 public:
  SortedValues() = default;
  explicit SortedValues(std::vector<CandidateValue> values);

  std::uint64_t size() const override { return values_.size(); }
  CandidateValue select(std::uint64_t k) const override;
  std::uint64_t rank(SqDist v) const override;
  std::uint64_t rank_below(SqDist v) const override;
  const std::vector<CandidateValue>& values() const { return values_; }

 private:
  std::vector<CandidateValue> values_;
};

// All sq_dist(a, b) for a in first, b in second, a != b, as ordered pairs.
// Throws BudgetExceeded when |first|*|second| > budget.
SortedValues cross_product(const Instance& inst, std::span<const PointIndex> first,
                           std::span<const PointIndex> second,
                           std::uint64_t budget = kDefaultSelectionBudget);

// k-th smallest of the multiset {sq_dist(a, b) : a in A, b in B}.
SqDist select_bruteforce(std::span<const Point> a, std::span<const Point> b, std::uint64_t k,
                         std::uint64_t budget = kDefaultSelectionBudget);

using CollectionList = std::vector<const SelectableCollection*>;

// k-th smallest value of the disjoint union. Narrows one rank window per
// collection around the weighted median of the window medians.
CandidateValue union_select(const CollectionList& cols, std::uint64_t k, SelectionStats* stats = nullptr);

// (lo, hi] where hi is the smallest union value with decide true and lo the
// largest with decide false; missing ends are the sentinels.
Interval union_successor(const CollectionList& cols, const std::function<bool(const CandidateValue&)>& decide,
                         SelectionStats* stats = nullptr);

/// Selection over the C(n,2) unordered pair distances of an instance,
/// restricted to a value window (lo, hi]. Small windows are materialized and
/// cached; large ones are handled by sampling passes over all pairs.
class PairSelector {
 public:
  struct Pick {
    CandidateValue value;
    std::uint64_t below = 0;    // window values < value
    std::uint64_t at_most = 0;  // window values <= value
  };

  explicit PairSelector(const Instance& inst, std::uint64_t materialize_limit = 1u << 22,
                        std::uint64_t seed = 0x5eed);

  std::uint64_t size() const;
  // k-th smallest among the `count` pair values in (lo, hi]; count must be
  // the exact number of pairs in that window.
  Pick select_in(std::optional<SqDist> lo, std::optional<SqDist> hi, std::uint64_t count, std::uint64_t k);
  std::uint64_t passes() const { return passes_; }

 private:
  template <typename Fn>
  void for_each_pair(Fn&& fn);
  Pick pick_sorted(const std::vector<CandidateValue>& sorted, std::size_t begin, std::size_t end, std::uint64_t k) const;

  const Instance* inst_;
  std::uint64_t limit_;
  std::uint64_t seed_;
  std::uint64_t passes_ = 0;
  // Cached sorted window (cache_lo_, cache_hi_].
  std::vector<CandidateValue> cache_;
  std::optional<SqDist> cache_lo_;
  std::optional<SqDist> cache_hi_;
  bool cached_ = false;
};

}  // namespace rsp

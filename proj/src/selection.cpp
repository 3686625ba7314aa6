#include "rsp/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "rsp/errors.hpp"

namespace rsp {

namespace {

bool value_less(const CandidateValue& a, const CandidateValue& b) {
  if (a.sq != b.sq) return a.sq < b.sq;
  if (a.first != b.first) return a.first < b.first;
  return a.second < b.second;
}

}  // namespace

SortedValues::SortedValues(std::vector<CandidateValue> values) : values_(std::move(values)) {
  std::sort(values_.begin(), values_.end(), value_less);
}

CandidateValue SortedValues::select(std::uint64_t k) const {
  if (k < 1 || k > values_.size()) throw RankOutOfRange("rank " + std::to_string(k) + " outside collection");
  return values_[k - 1];
}

std::uint64_t SortedValues::rank(SqDist v) const {
  return std::upper_bound(values_.begin(), values_.end(), v,
                          [](SqDist x, const CandidateValue& c) { return x < c.sq; }) -
         values_.begin();
}

std::uint64_t SortedValues::rank_below(SqDist v) const {
  return std::lower_bound(values_.begin(), values_.end(), v,
                          [](const CandidateValue& c, SqDist x) { return c.sq < x; }) -
         values_.begin();
}

SortedValues cross_product(const Instance& inst, std::span<const PointIndex> first,
                           std::span<const PointIndex> second, std::uint64_t budget) {
  const std::uint64_t total = static_cast<std::uint64_t>(first.size()) * second.size();
  if (total > budget) throw BudgetExceeded("cross product of " + std::to_string(total) + " pairs exceeds budget");
  std::vector<CandidateValue> values;
  values.reserve(total);
  for (PointIndex a : first) {
    for (PointIndex b : second) {
      if (a != b) values.push_back(make_candidate(inst, a, b));
    }
  }
  return SortedValues(std::move(values));
}

SqDist select_bruteforce(std::span<const Point> a, std::span<const Point> b, std::uint64_t k,
                         std::uint64_t budget) {
  const std::uint64_t total = static_cast<std::uint64_t>(a.size()) * b.size();
  if (total > budget) throw BudgetExceeded("cross product of " + std::to_string(total) + " pairs exceeds budget");
  if (k < 1 || k > total) throw RankOutOfRange("rank " + std::to_string(k) + " outside cross product");
  std::vector<SqDist> values;
  values.reserve(total);
  for (const auto& p : a) {
    for (const auto& q : b) values.push_back(sq_dist(p, q));
  }
  std::nth_element(values.begin(), values.begin() + (k - 1), values.end());
  return values[k - 1];
}

CandidateValue union_select(const CollectionList& cols, std::uint64_t k, SelectionStats* stats) {
  SelectionStats local;
  SelectionStats& st = stats ? *stats : local;
  ++st.union_selects;

  std::uint64_t total = 0;
  for (const auto* c : cols) total += c->size();
  if (k < 1 || k > total) throw RankOutOfRange("rank " + std::to_string(k) + " outside union of size " + std::to_string(total));

  if (cols.size() == 1) {
    ++st.select_probes;
    return cols.front()->select(k);
  }

  // Window of still-possible ranks [lo, hi] per collection, 1-indexed.
  std::vector<std::uint64_t> lo(cols.size(), 1), hi(cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) hi[c] = cols[c]->size();
  std::vector<std::uint64_t> below(cols.size()), at_most(cols.size());

  struct Median {
    CandidateValue value;
    std::uint64_t weight;
  };
  std::vector<Median> medians;
  while (true) {
    medians.clear();
    std::uint64_t weight = 0;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (lo[c] > hi[c]) continue;
      ++st.select_probes;
      medians.push_back({cols[c]->select(lo[c] + (hi[c] - lo[c]) / 2), hi[c] - lo[c] + 1});
      weight += medians.back().weight;
    }
    std::sort(medians.begin(), medians.end(), [](const Median& a, const Median& b) { return value_less(a.value, b.value); });
    std::uint64_t acc = 0;
    CandidateValue pivot = medians.back().value;
    for (const auto& m : medians) {
      acc += m.weight;
      if (2 * acc >= weight) {
        pivot = m.value;
        break;
      }
    }

    std::uint64_t lt = 0, le = 0;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      st.rank_probes += 2;
      below[c] = cols[c]->rank_below(pivot.sq);
      at_most[c] = cols[c]->rank(pivot.sq);
      lt += below[c];
      le += at_most[c];
    }
    if (lt < k && k <= le) return pivot;
    if (k <= lt) {
      for (std::size_t c = 0; c < cols.size(); ++c) hi[c] = std::min(hi[c], below[c]);
    } else {
      for (std::size_t c = 0; c < cols.size(); ++c) lo[c] = std::max(lo[c], at_most[c] + 1);
    }
  }
}

Interval union_successor(const CollectionList& cols, const std::function<bool(const CandidateValue&)>& decide,
                         SelectionStats* stats) {
  std::uint64_t total = 0;
  for (const auto* c : cols) total += c->size();
  Interval iv;
  std::uint64_t lo = 0, hi = total + 1;
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    const CandidateValue v = union_select(cols, mid, stats);
    if (stats) ++stats->decide_probes;
    if (decide(v)) {
      hi = mid;
      iv.hi = v;
    } else {
      lo = mid;
      iv.lo = v;
    }
  }
  iv.lo_evidence = iv.lo.has_value();
  iv.hi_evidence = iv.hi.has_value();
  return iv;
}

// ---------------------------------------------------------------------------
// PairSelector

PairSelector::PairSelector(const Instance& inst, std::uint64_t materialize_limit, std::uint64_t seed)
    : inst_(&inst), limit_(std::max<std::uint64_t>(materialize_limit, 1024)), seed_(seed) {}

std::uint64_t PairSelector::size() const { return pair_count(inst_->size()); }

template <typename Fn>
void PairSelector::for_each_pair(Fn&& fn) {
  ++passes_;
  const auto& pts = inst_->points;
  const auto n = static_cast<PointIndex>(pts.size());
  for (PointIndex i = 0; i < n; ++i) {
    const Point p = pts[i];
    for (PointIndex j = i + 1; j < n; ++j) fn(sq_dist(p, pts[j]), i, j);
  }
}

PairSelector::Pick PairSelector::pick_sorted(const std::vector<CandidateValue>& sorted, std::size_t begin,
                                             std::size_t end, std::uint64_t k) const {
  const auto first = sorted.begin() + begin;
  const auto last = sorted.begin() + end;
  Pick pick;
  pick.value = *(first + (k - 1));
  const SqDist v = pick.value.sq;
  pick.below = std::lower_bound(first, last, v, [](const CandidateValue& c, SqDist x) { return c.sq < x; }) - first;
  pick.at_most = std::upper_bound(first, last, v, [](SqDist x, const CandidateValue& c) { return x < c.sq; }) - first;
  return pick;
}

PairSelector::Pick PairSelector::select_in(std::optional<SqDist> lo, std::optional<SqDist> hi, std::uint64_t count,
                                           std::uint64_t k) {
  if (k < 1 || k > count) throw RankOutOfRange("rank " + std::to_string(k) + " outside window of " + std::to_string(count));
  auto inside = [&](SqDist v) { return (!lo || v > *lo) && (!hi || v <= *hi); };

  const bool covered = cached_ && (!cache_lo_ || (lo && *lo >= *cache_lo_)) && (!cache_hi_ || (hi && *hi <= *cache_hi_));
  if (covered) {
    auto begin = lo ? std::upper_bound(cache_.begin(), cache_.end(), *lo,
                                       [](SqDist x, const CandidateValue& c) { return x < c.sq; })
                    : cache_.begin();
    auto end = hi ? std::upper_bound(cache_.begin(), cache_.end(), *hi,
                                     [](SqDist x, const CandidateValue& c) { return x < c.sq; })
                  : cache_.end();
    if (static_cast<std::uint64_t>(end - begin) != count) throw std::logic_error("PairSelector window count mismatch");
    return pick_sorted(cache_, begin - cache_.begin(), end - cache_.begin(), k);
  }

  if (count <= limit_) {
    std::vector<CandidateValue> window;
    window.reserve(count);
    for_each_pair([&](SqDist v, PointIndex i, PointIndex j) {
      if (inside(v)) window.push_back({v, i, j});
    });
    if (window.size() != count) throw std::logic_error("PairSelector window count mismatch");
    std::sort(window.begin(), window.end(), value_less);
    cache_ = std::move(window);
    cache_lo_ = lo;
    cache_hi_ = hi;
    cached_ = true;
    return pick_sorted(cache_, 0, cache_.size(), k);
  }

  // Sampling pass: bracket the k-th value between two sample order statistics.
  constexpr double kSampleTarget = 1 << 18;
  const double q = std::min(1.0, kSampleTarget / static_cast<double>(count));
  std::mt19937_64 rng(splitmix64(seed_ ^ (passes_ * 0x9e3779b97f4a7c15ULL)));
  std::geometric_distribution<std::uint64_t> gap(q);
  std::uint64_t skip = gap(rng);
  std::vector<SqDist> sample;
  for_each_pair([&](SqDist v, PointIndex, PointIndex) {
    if (!inside(v)) return;
    if (skip == 0) {
      sample.push_back(v);
      skip = gap(rng);
    } else {
      --skip;
    }
  });
  std::sort(sample.begin(), sample.end());

  std::optional<SqDist> a = lo, b = hi;
  if (sample.size() >= 2) {
    const double m = static_cast<double>(sample.size());
    const double pos = static_cast<double>(k) / static_cast<double>(count) * m;
    const double spread = 3.0 * std::sqrt(m) + 1.0;
    const auto lo_idx = static_cast<std::int64_t>(std::floor(pos - spread));
    const auto hi_idx = static_cast<std::int64_t>(std::ceil(pos + spread));
    if (lo_idx > 0) a = sample[static_cast<std::size_t>(lo_idx)];
    if (hi_idx < static_cast<std::int64_t>(sample.size()) - 1) b = sample[static_cast<std::size_t>(hi_idx)];
    if (a == lo && b == hi) b = sample[sample.size() / 2];
  }

  std::uint64_t le_a = 0, mid_count = 0;
  std::vector<CandidateValue> middle;
  bool overflow = false;
  for_each_pair([&](SqDist v, PointIndex i, PointIndex j) {
    if (!inside(v)) return;
    if (a && v <= *a) {
      ++le_a;
    } else if (!b || v <= *b) {
      ++mid_count;
      if (!overflow) {
        if (middle.size() < limit_) {
          middle.push_back({v, i, j});
        } else {
          overflow = true;
          middle.clear();
          middle.shrink_to_fit();
        }
      }
    }
  });

  auto offset = [](Pick p, std::uint64_t by) {
    p.below += by;
    p.at_most += by;
    return p;
  };
  if (k <= le_a) return select_in(lo, a, le_a, k);
  if (k > le_a + mid_count) {
    return offset(select_in(b, hi, count - le_a - mid_count, k - le_a - mid_count), le_a + mid_count);
  }
  if (overflow) return offset(select_in(a, b, mid_count, k - le_a), le_a);
  std::sort(middle.begin(), middle.end(), value_less);
  cache_ = std::move(middle);
  cache_lo_ = a;
  cache_hi_ = b;
  cached_ = true;
  return offset(pick_sorted(cache_, 0, cache_.size(), k - le_a), le_a);
}

}  // namespace rsp

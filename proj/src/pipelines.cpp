#include "rsp/pipelines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "rsp/bifurcation.hpp"
#include "rsp/decision.hpp"
#include "rsp/errors.hpp"
#include "rsp/fast.hpp"
#include "rsp/recovery.hpp"
#include "rsp/selection.hpp"
#include "rsp/shrink.hpp"

namespace rsp {

namespace {

std::uint64_t ceil_root(std::size_t n, double exponent) {
  const double v = std::pow(static_cast<double>(n), exponent);
  // Guard against pow landing a hair above an exact integer.
  const double r = std::round(v);
  const double c = std::abs(v - r) < 1e-9 ? r : std::ceil(v);
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(c));
}

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void absorb_counters(SolveReport& r, const DecisionPair& dp) {
  const auto& c = dp.counters();
  r.counters.decide_calls += c.decide_calls;
  r.counters.strict_calls += c.strict_calls;
  r.counters.decide_queries += c.decide_queries;
  r.counters.strict_queries += c.strict_queries;
}

void certify(SolveReport& r, DecisionPair& dp) {
  if (dp.instance().s == dp.instance().t) {
    // Zero hops reach t at every radius, and no radius lies below 0.
    r.certified_at_most = r.certified_not_below = true;
    return;
  }
  r.certified_at_most = dp.decide(r.r_star);
  r.certified_not_below = !dp.decide_strict(r.r_star);
}

// s == t, or t coincides with s: r* is 0 without any search.
bool settle_trivial(const Instance& inst, DecisionPair& dp, SolveReport& r) {
  if (inst.s == inst.t) {
    r.r_star = {0.0, inst.s, inst.s};
    return true;
  }
  if (dp.decide(0.0)) {
    r.r_star = {0.0, inst.s, inst.t};
    return true;
  }
  return false;
}

// Locates r* among the comparison values of a finished simulation.
std::optional<CandidateValue> certify_from(const Transcript& transcript, const RStarRange& range, DecisionPair& dp) {
  std::vector<CandidateValue> values;
  for (const auto& cmp : transcript) {
    if (range.admits(cmp.value.sq)) values.push_back(cmp.value);
  }
  std::sort(values.begin(), values.end(), [](const auto& a, const auto& b) { return a.sq < b.sq; });
  values.erase(std::unique(values.begin(), values.end(), [](const auto& a, const auto& b) { return a.sq == b.sq; }),
               values.end());
  std::size_t lo = 0, hi = values.size();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (!dp.decide_strict(values[mid])) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo == 0 || !dp.decide(values[lo - 1])) return std::nullopt;
  return values[lo - 1];
}

}  // namespace

std::uint64_t default_generic_L(std::size_t n) { return ceil_root(n, 2.0 / 7.0); }
std::uint64_t default_fast_L(std::size_t n) { return ceil_root(n, 0.25); }
std::uint64_t default_fast_delta(std::size_t n) { return ceil_root(n, 7.0 / 8.0); }

SolveReport solve_brute(const Instance& inst) {
  validate(inst);
  Stopwatch clock;
  SolveReport r;
  r.algorithm = "brute";
  r.r_star = rstar_exact(inst);
  r.counters.wall_ms = clock.ms();
  DecisionPair dp(inst);
  certify(r, dp);
  return r;
}

SolveReport solve_distsel_binary(const Instance& inst, const SolveOptions& opt) {
  validate(inst);
  Stopwatch clock;
  SolveReport r;
  r.algorithm = "distsel";
  r.params.seed = opt.seed;
  DecisionPair dp(inst);
  if (!settle_trivial(inst, dp, r)) {
    PairSelector sel(inst, opt.materialize_limit, opt.seed);
    std::optional<SqDist> lo, hi;
    std::uint64_t count = sel.size();
    std::optional<CandidateValue> best;
    while (count > 0) {
      const auto pick = sel.select_in(lo, hi, count, (count + 1) / 2);
      ++r.counters.selection_probes;
      if (dp.decide(pick.value)) {
        best = pick.value;
        hi = std::nextafter(pick.value.sq, -std::numeric_limits<double>::infinity());
        count = pick.below;
      } else {
        lo = pick.value.sq;
        count -= pick.at_most;
      }
    }
    if (!best) throw CertificationFailure("no pair distance reaches the target");
    r.r_star = *best;
    r.counters.pair_passes = sel.passes();
  }
  certify(r, dp);
  absorb_counters(r, dp);
  r.counters.wall_ms = clock.ms();
  return r;
}

SolveReport solve_generic(const Instance& inst, const SolveOptions& opt) {
  validate(inst);
  Stopwatch clock;
  SolveReport r;
  r.algorithm = "generic";
  r.params.seed = opt.seed;
  const std::uint64_t L = opt.L.value_or(default_generic_L(inst.size()));
  r.params.L = L;
  DecisionPair dp(inst);
  if (!settle_trivial(inst, dp, r)) {
    const ShrinkOutcome shrunk = shrink_improved(inst, L, dp, opt.seed);
    r.counters.selection_probes = shrunk.selection.select_probes + shrunk.selection.rank_probes;
    Interval iv = shrunk.interval;
    if (iv.hi && !dp.decide_strict(*iv.hi)) {
      r.r_star = *iv.hi;
    } else {
      const DyadicBracket br = dyadic_bracket(inst, dp);
      r.params.grid_exponent = br.exponent;
      BifurcationOptions bo;
      bo.L = L;
      bo.batch = opt.batch.value_or(0);
      auto res = bifurcate(inst, BfsRun(inst, br.grid, BfsLimits::decision(inst)), iv, dp, bo);
      r.params.batch = res.stats.batch;
      r.counters.forks = res.stats.forks;
      r.counters.resolutions = res.stats.resolutions;
      r.counters.comparisons = res.stats.comparisons;
      auto exact = res.exact ? res.exact : certify_from(res.run.transcript(), res.range, dp);
      if (!exact) throw CertificationFailure("simulation never met r* among its comparisons");
      r.r_star = *exact;
    }
  }
  certify(r, dp);
  if (!r.certified_at_most || !r.certified_not_below) throw CertificationFailure("generic result fails its certificate");
  absorb_counters(r, dp);
  r.counters.wall_ms = clock.ms();
  return r;
}

SolveReport solve_fast(const Instance& inst, const SolveOptions& opt) {
  validate(inst);
  Stopwatch clock;
  SolveReport r;
  r.algorithm = "fast";
  r.params.seed = opt.seed;
  const std::uint64_t L = opt.L.value_or(default_fast_L(inst.size()));
  const std::uint64_t delta = opt.delta.value_or(default_fast_delta(inst.size()));
  r.params.L = L;
  r.params.delta = delta;
  DecisionPair dp(inst);
  if (settle_trivial(inst, dp, r)) {
    certify(r, dp);
    absorb_counters(r, dp);
    r.counters.wall_ms = clock.ms();
    return r;
  }

  std::string reason;
  try {
    const DyadicBracket br = dyadic_bracket(inst, dp);
    r.params.grid_exponent = br.exponent;
    const HeavyLightMap hl = classify_heavy(br.grid, delta);
    r.params.heavy_cells = hl.heavy_count;
    const auto specials = special_distances(inst, br.grid, hl);
    const ShrinkOutcome shrunk = shrink_light(inst, br.grid, hl.heavy, L, dp, opt.seed);
    r.counters.selection_probes = shrunk.selection.select_probes + shrunk.selection.rank_probes;

    BifurcationOptions bo;
    bo.L = L;
    bo.batch = opt.batch.value_or(0);
    const EstimateOutcome est = estimates_via_contraction(inst, br.grid, hl, specials, shrunk.interval, dp, bo);
    r.params.batch = est.bifurcation.batch;
    r.params.slack = est.estimates.slack;
    r.counters.forks = est.bifurcation.forks;
    r.counters.resolutions = est.bifurcation.resolutions;
    r.counters.comparisons = est.bifurcation.comparisons;

    const RecoveryOutcome rec = dp_recover(inst, est.estimates);
    r.counters.dp_entries = rec.entries;
    r.r_star = rec.value;
    certify(r, dp);
    if (r.certified_at_most && r.certified_not_below) {
      absorb_counters(r, dp);
      r.counters.wall_ms = clock.ms();
      return r;
    }
    reason = "certificate";
  } catch (const NoLightPairs&) {
    reason = "no light pairs";
  } catch (const RecoveryFailure& e) {
    reason = std::string("recovery: ") + e.what();
  } catch (const ProtocolViolation& e) {
    reason = std::string("protocol: ") + e.what();
  }

  SolveOptions generic_opt = opt;
  generic_opt.L.reset();
  SolveReport g = solve_generic(inst, generic_opt);
  g.algorithm = "fast";
  g.fallback = true;
  g.fallback_reason = reason;
  g.params.delta = delta;
  g.params.heavy_cells = r.params.heavy_cells;
  absorb_counters(g, dp);
  g.counters.selection_probes += r.counters.selection_probes;
  g.counters.wall_ms = clock.ms();
  return g;
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  if (name == "brute") return Algorithm::brute;
  if (name == "distsel") return Algorithm::distsel;
  if (name == "generic") return Algorithm::generic;
  if (name == "fast") return Algorithm::fast;
  return std::nullopt;
}

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::brute: return "brute";
    case Algorithm::distsel: return "distsel";
    case Algorithm::generic: return "generic";
    case Algorithm::fast: return "fast";
  }
  return "?";
}

SolveReport solve(Algorithm a, const Instance& inst, const SolveOptions& opt) {
  switch (a) {
    case Algorithm::brute: return solve_brute(inst);
    case Algorithm::distsel: return solve_distsel_binary(inst, opt);
    case Algorithm::generic: return solve_generic(inst, opt);
    case Algorithm::fast: return solve_fast(inst, opt);
  }
  throw std::invalid_argument("unknown algorithm");
}

}  // namespace rsp

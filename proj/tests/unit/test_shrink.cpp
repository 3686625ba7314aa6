#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rsp/errors.hpp"
#include "rsp/fast.hpp"
#include "rsp/shrink.hpp"

using namespace rsp;

namespace {

void check_evidence(const Instance& inst, const Interval& iv) {
  if (iv.lo) {
    CHECK(iv.lo_evidence);
    CHECK_FALSE(oracle::reaches(inst, iv.lo->sq));
    CHECK(witness_matches(inst, *iv.lo));
  }
  if (iv.hi) {
    CHECK(iv.hi_evidence);
    CHECK(oracle::reaches(inst, iv.hi->sq));
    CHECK(witness_matches(inst, *iv.hi));
  }
}

bool is_light_pair(const GridIndex& g, const std::vector<bool>& heavy, const CandidateValue& c) {
  const CellId a = g.cell_of(c.first), b = g.cell_of(c.second);
  if (a == b || (heavy[a] && heavy[b])) return false;
  for (CellId nb : g.neighbors(a)) {
    if (nb == b) return true;
  }
  return false;
}

std::vector<SqDist> light_values(const Instance& inst, const GridIndex& g, const std::vector<bool>& heavy) {
  std::vector<SqDist> out;
  for (PointIndex i = 0; i < inst.size(); ++i) {
    for (PointIndex j = i + 1; j < inst.size(); ++j) {
      const auto c = make_candidate(inst, i, j);
      if (is_light_pair(g, heavy, c)) out.push_back(c.sq);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("sample_family rates and determinism") {
  const auto f = sample_family(1000, 64, 3);
  REQUIRE(f.levels.size() == 10);
  CHECK(f.levels[0].wide_rate == doctest::Approx(1.0 / 32));
  CHECK(f.levels[0].narrow_rate == doctest::Approx(0.5));
  CHECK(f.levels[5].wide_rate == 1.0);
  CHECK(f.levels[9].narrow_rate == doctest::Approx(1.0 / 1024));
  const auto g = sample_family(1000, 64, 3);
  for (std::size_t i = 0; i < f.levels.size(); ++i) {
    CHECK(f.levels[i].wide == g.levels[i].wide);
    CHECK(f.levels[i].narrow == g.levels[i].narrow);
  }
  CHECK(f.levels[0].narrow != sample_family(1000, 64, 4).levels[0].narrow);
  // Empirical rate of the narrow sample at level 1 over many seeds.
  std::size_t hits = 0;
  for (std::uint64_t s = 0; s < 40; ++s) hits += sample_family(1000, 64, s).levels[0].narrow.size();
  CHECK(static_cast<double>(hits) / 40000.0 == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("shrinking on the line always contains r*") {
  Instance inst = generate(GeneratorKind::line, 3, 0);
  inst.lambda = 2;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    DecisionPair dp(inst);
    const auto basic = shrink_basic(inst, 1, dp, seed).interval;
    CHECK(basic.contains(1.0));
    check_evidence(inst, basic);
    DecisionPair dp2(inst);
    const auto improved = shrink_improved(inst, 1, dp2, seed).interval;
    CHECK(improved.contains(1.0));
    check_evidence(inst, improved);
  }
}

TEST_CASE("shrinking with a vacuous size bound") {
  const Instance inst = generate(GeneratorKind::uniform, 40, 2);
  const auto r = rstar_exact(inst);
  DecisionPair dp(inst);
  const auto out = shrink_improved(inst, pair_count(40) * 2, dp, 1);
  CHECK(out.interval.contains(r.sq));
  check_evidence(inst, out.interval);
}

TEST_CASE("shrinking: evidence, size and probe counts") {
  std::mt19937_64 rng(8);
  for (int rep = 0; rep < 30; ++rep) {
    const auto kind = static_cast<GeneratorKind>(rep % 4);
    Instance inst = generate(kind, 64 + rng() % 200, rng());
    inst.lambda = 1 + static_cast<std::uint32_t>(rng() % (inst.size() - 1));
    const auto r = rstar_exact(inst);
    const auto pairs = oracle::sorted_pairs(inst);
    const std::uint64_t L = 1 + rng() % 32;
    const double lg = std::log2(static_cast<double>(inst.size()));

    DecisionPair dp(inst);
    const auto out = shrink_improved(inst, L, dp, rng());
    CHECK(out.interval.contains(r.sq));
    check_evidence(inst, out.interval);
    for (const auto& t : out.trials) check_evidence(inst, t);
    const auto lo = out.interval.lo ? std::optional<SqDist>(out.interval.lo->sq) : std::nullopt;
    const auto hi = out.interval.hi ? std::optional<SqDist>(out.interval.hi->sq) : std::nullopt;
    // Lattice kinds repeat values heavily, so distinct values are what shrink.
    if (kind == GeneratorKind::uniform) CHECK(oracle::count_in(pairs, lo, hi) <= L * lg * lg);
    CHECK(oracle::count_distinct_in(pairs, lo, hi) <= L * lg * lg);
    const std::uint64_t levels = ceil_log2(inst.size());
    const std::uint64_t per_level = ceil_log2(pair_count(inst.size())) + 2;
    CHECK(out.selection.union_selects <= out.trials_run * levels * per_level);

    DecisionPair dp2(inst);
    const auto basic = shrink_basic(inst, L, dp2, rng());
    CHECK(basic.interval.contains(r.sq));
    check_evidence(inst, basic.interval);
  }
}

TEST_CASE("shrink_light restricts to light pairs") {
  const Instance inst = generate(GeneratorKind::cluster, 2048, 9);
  const auto r = rstar_exact(inst);
  DecisionPair dp(inst);
  const DyadicBracket br = dyadic_bracket(inst, dp);
  const HeavyLightMap hl = classify_heavy(br.grid, 64);
  REQUIRE(hl.heavy_count >= 1);
  const auto values = light_values(inst, br.grid, hl.heavy);
  const auto out = shrink_light(inst, br.grid, hl.heavy, 16, dp, 3);
  check_evidence(inst, out.interval);
  CHECK(out.interval.contains(r.sq));
  const auto lo = out.interval.lo ? std::optional<SqDist>(out.interval.lo->sq) : std::nullopt;
  const auto hi = out.interval.hi ? std::optional<SqDist>(out.interval.hi->sq) : std::nullopt;
  CHECK(oracle::count_in(values, lo, hi) <= 16 * 11 * 11);
  for (const auto& t : out.trials) {
    if (t.lo) CHECK(is_light_pair(br.grid, hl.heavy, *t.lo));
    if (t.hi) CHECK(is_light_pair(br.grid, hl.heavy, *t.hi));
  }
}

TEST_CASE("shrink_light without heavy cells searches all neighboring pairs") {
  const Instance inst = generate(GeneratorKind::uniform, 300, 5);
  DecisionPair dp(inst);
  const DyadicBracket br = dyadic_bracket(inst, dp);
  const HeavyLightMap hl = classify_heavy(br.grid, inst.size() + 1);
  CHECK(hl.heavy_count == 0);
  const auto out = shrink_light(inst, br.grid, hl.heavy, 4, dp, 1);
  check_evidence(inst, out.interval);
  CHECK(out.interval.contains(rstar_exact(inst).sq));
}

TEST_CASE("shrink_light with every cell heavy") {
  const Instance inst = generate(GeneratorKind::uniform, 100, 5);
  DecisionPair dp(inst);
  const DyadicBracket br = dyadic_bracket(inst, dp);
  const HeavyLightMap hl = classify_heavy(br.grid, 1);
  CHECK(hl.heavy_count == br.grid.cell_count());
  CHECK_THROWS_AS(shrink_light(inst, br.grid, hl.heavy, 4, dp, 1), NoLightPairs);
}

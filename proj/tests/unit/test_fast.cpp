#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rsp/errors.hpp"
#include "rsp/fast.hpp"

using namespace rsp;

namespace {

struct Prepared {
  DyadicBracket br;
  HeavyLightMap hl;
  std::vector<SpecialDistance> specials;
};

Prepared prepare(const Instance& inst, DecisionPair& dp, std::uint64_t delta) {
  Prepared p{dyadic_bracket(inst, dp), {}, {}};
  p.hl = classify_heavy(p.br.grid, delta);
  p.specials = special_distances(inst, p.br.grid, p.hl);
  return p;
}

void check_band(const Instance& inst, const EstimateVector& est, std::uint32_t heavy) {
  const auto truth = bfs_exact(inst, rstar_exact(inst).sq);
  REQUIRE(est.levels.size() == inst.size());
  CHECK(est.slack == 3 * heavy);
  for (std::size_t p = 0; p < inst.size(); ++p) {
    REQUIRE(truth[p].has_value() == est.levels[p].has_value());
    if (!truth[p]) continue;
    CHECK(*est.levels[p] <= *truth[p]);
    CHECK(static_cast<std::int64_t>(*est.levels[p]) >= static_cast<std::int64_t>(*truth[p]) - est.slack);
  }
}

}  // namespace

TEST_CASE("dyadic bracket on the line") {
  Instance inst = generate(GeneratorKind::line, 3, 0);
  inst.lambda = 2;
  DecisionPair dp(inst);
  CHECK(dyadic_bracket(inst, dp).exponent == 0);
  inst.lambda = 1;
  DecisionPair dp1(inst);
  CHECK(dyadic_bracket(inst, dp1).exponent == 1);
}

TEST_CASE("dyadic bracket encloses r*") {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 100; ++rep) {
    Instance inst = oracle::random_instance(rng, 4 + rng() % 120, 1 + static_cast<int>(rng() % 400));
    const SqDist r = oracle::rstar_scan(inst);
    if (r == 0.0) continue;
    DecisionPair dp(inst);
    const auto br = dyadic_bracket(inst, dp);
    CHECK(std::ldexp(1.0, 2 * (br.exponent - 1)) < r);
    CHECK(r <= std::ldexp(1.0, 2 * br.exponent));
    CHECK(br.grid.reach() == 3);
    CHECK(br.grid.side() * std::sqrt(2.0) < std::ldexp(1.0, br.exponent - 1));
  }
}

TEST_CASE("dyadic bracket rejects coincident points") {
  Instance inst;
  inst.points = {{1, 1}, {1, 1}};
  inst.s = 0;
  inst.t = 1;
  inst.lambda = 1;
  DecisionPair dp(inst);
  CHECK_THROWS_AS(dyadic_bracket(inst, dp), BracketFailure);
}

TEST_CASE("cluster instances produce dense cells") {
  Instance inst = generate(GeneratorKind::cluster, 200, 3);
  DecisionPair dp(inst);
  const auto br = dyadic_bracket(inst, dp);
  std::size_t densest = 0;
  for (const auto& c : br.grid.cells()) densest = std::max(densest, c.points.size());
  CHECK(densest >= 20);
}

TEST_CASE("heavy classification thresholds") {
  Instance inst = generate(GeneratorKind::cluster, 2048, 9);
  DecisionPair dp(inst);
  const auto br = dyadic_bracket(inst, dp);
  const auto all = classify_heavy(br.grid, 1);
  CHECK(all.heavy_count == br.grid.cell_count());
  const auto none = classify_heavy(br.grid, inst.size() + 1);
  CHECK(none.heavy_count == 0);
  const auto mid = classify_heavy(br.grid, 64);
  std::uint32_t expect = 0;
  std::uint64_t total = 0;
  for (CellId c = 0; c < br.grid.cell_count(); ++c) {
    const auto sz = br.grid.cell(c).points.size();
    total += sz;
    CHECK(mid.counts[c] == sz);
    CHECK(mid.heavy[c] == (sz >= 64));
    expect += sz >= 64;
  }
  CHECK(total == inst.size());
  CHECK(mid.heavy_count == expect);
  CHECK(mid.heavy_count >= 1);
}

TEST_CASE("special distances are exact closest pairs") {
  std::mt19937_64 rng(8);
  for (int rep = 0; rep < 20; ++rep) {
    Instance inst = generate(GeneratorKind::cluster, 300 + rng() % 300, rng());
    DecisionPair dp(inst);
    const auto p = prepare(inst, dp, 8);
    const auto& g = p.br.grid;
    std::size_t expected_pairs = 0;
    for (CellId a = 0; a < g.cell_count(); ++a) {
      for (CellId b : g.neighbors(a)) expected_pairs += a < b && p.hl.heavy[a] && p.hl.heavy[b];
    }
    CHECK(p.specials.size() == expected_pairs);
    for (const auto& sd : p.specials) {
      CHECK(sd.a < sd.b);
      SqDist best = std::numeric_limits<double>::infinity();
      for (auto x : g.cell(sd.a).points) {
        for (auto y : g.cell(sd.b).points) best = std::min(best, oracle::d2(inst.points[x], inst.points[y]));
      }
      CHECK(sd.value.sq == best);
      CHECK(witness_matches(inst, sd.value));
      CHECK(g.cell_of(sd.value.first) == sd.a);
      CHECK(g.cell_of(sd.value.second) == sd.b);
    }
  }
}

TEST_CASE("estimates are exact without heavy cells") {
  std::mt19937_64 rng(12);
  for (int rep = 0; rep < 30; ++rep) {
    Instance inst = generate(GeneratorKind::uniform, 16 + rng() % 200, rng());
    DecisionPair dp(inst);
    const auto p = prepare(inst, dp, inst.size() + 1);
    const auto out = estimates_via_contraction(inst, p.br.grid, p.hl, p.specials, Interval::everything(), dp);
    CHECK(out.estimates.slack == 0);
    CHECK(out.estimates.levels == bfs_exact(inst, rstar_exact(inst).sq));
  }
}

TEST_CASE("estimates stay within the band") {
  std::mt19937_64 rng(13);
  const GeneratorKind kinds[] = {GeneratorKind::uniform, GeneratorKind::cluster, GeneratorKind::grid,
                                 GeneratorKind::line};
  for (int rep = 0; rep < 60; ++rep) {
    const auto kind = kinds[rep % 4];
    Instance inst = generate(kind, 32 + rng() % 400, rng());
    DecisionPair dp(inst);
    if (dp.decide(0.0)) continue;
    const std::uint64_t deltas[] = {1, 4, 16};
    const auto p = prepare(inst, dp, deltas[rep % 3]);
    const auto out = estimates_via_contraction(inst, p.br.grid, p.hl, p.specials, Interval::everything(), dp);
    check_band(inst, out.estimates, p.hl.heavy_count);
    CHECK(out.bifurcation.live_bound_held);
  }
}

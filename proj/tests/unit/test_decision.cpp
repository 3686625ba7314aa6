#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rsp/decision.hpp"
#include "rsp/errors.hpp"
#include "rsp/fast.hpp"
#include "rsp/grid.hpp"

using namespace rsp;

namespace {

Instance line3(std::uint32_t lambda) {
  Instance inst = generate(GeneratorKind::line, 3, 0);
  inst.lambda = lambda;
  return inst;
}

Instance varied(std::mt19937_64& rng, int rep) {
  static const GeneratorKind kinds[] = {GeneratorKind::uniform, GeneratorKind::cluster, GeneratorKind::grid,
                                        GeneratorKind::line};
  if (rep % 5 == 4) return oracle::random_instance(rng, 8 + rng() % 40, 12);
  Instance inst = generate(kinds[rep % 4], 8 + rng() % 90, rng());
  inst.lambda = 1 + static_cast<std::uint32_t>(rng() % (inst.size() - 1));
  return inst;
}

}  // namespace

TEST_CASE("build_grid basics") {
  const std::vector<Point> pts{{0, 0}, {1, 0}, {2, 0}};
  const GridIndex g = build_grid(pts, 1.0);
  CHECK(g.cell_count() == 3);
  CHECK(g.cell_of(0) != g.cell_of(1));
  CHECK(g.side() < 1.0 / std::sqrt(2.0));
  CHECK(g.reach() == 2);
  const GridIndex one = build_grid(pts, 10.0);
  CHECK(one.cell_count() == 1);
  CHECK_THROWS_AS(build_grid(pts, 0.0), InvalidRadius);
  CHECK_THROWS_AS(build_grid(pts, -1.0), InvalidRadius);
}

TEST_CASE("grid neighborhood load at r*") {
  const Instance inst = generate(GeneratorKind::uniform, 512, 1);
  const auto r = rstar_exact(inst);
  const GridIndex g = build_grid(inst.points, std::sqrt(r.sq));
  std::uint64_t load = 0;
  std::size_t total = 0;
  for (CellId c = 0; c < g.cell_count(); ++c) {
    total += g.cell(c).points.size();
    for (CellId nb : g.neighbors(c)) {
      CHECK(std::abs(g.cell(nb).cx - g.cell(c).cx) <= 2);
      CHECK(std::abs(g.cell(nb).cy - g.cell(c).cy) <= 2);
      if (nb > c) load += g.cell(c).points.size() + g.cell(nb).points.size();
    }
  }
  CHECK(total == inst.size());
  CHECK(load <= 25 * inst.size());
}

TEST_CASE("decide_bfs on the line") {
  const Instance inst = line3(2);
  CHECK(decide_bfs(inst, 1.0, EdgeRule::inclusive).reached);
  CHECK_FALSE(decide_bfs(inst, 1.0, EdgeRule::strict).reached);
  CHECK(decide_bfs(inst, 1.0, EdgeRule::inclusive).levels == HopVector{0u, 1u, 2u});
  CHECK_FALSE(decide_bfs(line3(1), 1.0, EdgeRule::inclusive).reached);
  CHECK(decide_bfs(line3(1), 4.0, EdgeRule::inclusive).reached);
}

TEST_CASE("decide_bfs at zero radius") {
  Instance inst;
  inst.points = {{0, 0}, {0, 0}, {5, 5}};
  inst.s = 0;
  inst.t = 1;
  inst.lambda = 1;
  CHECK(decide_bfs(inst, 0.0, EdgeRule::inclusive).reached);
  CHECK_FALSE(decide_bfs(inst, 0.0, EdgeRule::strict).reached);
  inst.t = 2;
  CHECK_FALSE(decide_bfs(inst, 0.0, EdgeRule::inclusive).reached);
}

TEST_CASE("decide_bfs matches brute force") {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 500; ++rep) {
    const Instance inst = varied(rng, rep);
    const auto pairs = oracle::sorted_pairs(inst);
    SqDist sq = pairs[rng() % pairs.size()];
    if (rep % 3 == 0) sq += 0.5;
    const auto inc = decide_bfs(inst, sq, EdgeRule::inclusive);
    const auto str = decide_bfs(inst, sq, EdgeRule::strict);
    CHECK(inc.reached == oracle::reaches(inst, sq));
    CHECK(str.reached == oracle::reaches(inst, sq, true));
    CHECK(inc.max_cell_expansions <= 3);
    if (str.reached) CHECK(inc.reached);
    for (const auto& cmp : inc.transcript) CHECK(witness_matches(inst, cmp.value));
  }
}

TEST_CASE("decide_bfs is monotone and its threshold is r*") {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 40; ++rep) {
    const Instance inst = varied(rng, rep);
    auto pairs = oracle::sorted_pairs(inst);
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    bool seen_true = false;
    SqDist first_true = -1;
    for (SqDist v : pairs) {
      const bool r = decide_bfs(inst, v, EdgeRule::inclusive).reached;
      if (seen_true) CHECK(r);
      if (r && !seen_true) first_true = v;
      seen_true = seen_true || r;
    }
    CHECK(first_true == rstar_exact(inst).sq);
  }
}

TEST_CASE("instrumented run with a known radius") {
  const Instance inst = line3(2);
  const GridIndex g = build_grid(inst.points, 1.0);
  const auto out = decide_bfs_instrumented(inst, g, [](const CandidateValue& c) { return c.sq <= 1.0; });
  CHECK(out.reached);
  CHECK(out.levels == HopVector{0u, 1u, 2u});
}

TEST_CASE("instrumented transcript equals the direct run on the same grid") {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 60; ++rep) {
    const Instance inst = varied(rng, rep);
    const auto r = rstar_exact(inst);
    if (r.sq == 0) continue;
    DecisionPair dp(inst);
    const DyadicBracket br = dyadic_bracket(inst, dp);
    const auto direct = decide_bfs(inst, r.sq, EdgeRule::inclusive, &br.grid);
    const auto inst_run =
        decide_bfs_instrumented(inst, br.grid, [&](const CandidateValue& c) { return c.sq <= r.sq; });
    CHECK(direct.transcript == inst_run.transcript);
    CHECK(direct.levels == inst_run.levels);
    CHECK(inst_run.reached);
    CHECK(inst_run.max_cell_expansions <= 3);
  }
}

TEST_CASE("full BFS driven by the decision pair reproduces exact levels") {
  std::mt19937_64 rng(37);
  for (int rep = 0; rep < 100; ++rep) {
    const Instance inst = varied(rng, rep);
    const auto r = rstar_exact(inst);
    if (r.sq == 0) continue;
    DecisionPair dp(inst);
    const DyadicBracket br = dyadic_bracket(inst, dp);
    BfsRun run(inst, br.grid, BfsLimits::full());
    run_to_end(run, [&](const CandidateValue& c) { return !dp.decide_strict(c); });
    CHECK(run.levels() == bfs_exact(inst, r.sq));
  }
}

TEST_CASE("DecisionPair memoizes by monotonicity") {
  const Instance inst = generate(GeneratorKind::uniform, 200, 4);
  const auto r = rstar_exact(inst);
  DecisionPair dp(inst);
  CHECK(dp.decide(r));
  CHECK_FALSE(dp.decide_strict(r));
  CHECK(dp.counters().calls() == 2);
  CHECK(dp.decide(r.sq * 2));
  CHECK_FALSE(dp.decide(r.sq / 2));
  CHECK(dp.decide_strict(r.sq * 2));
  CHECK_FALSE(dp.decide_strict(r.sq));
  CHECK(dp.counters().calls() == 2);
  CHECK(dp.counters().decide_queries == 3);
  CHECK(dp.knowledge().is_point());

  DecisionPair raw(inst, false);
  raw.decide(r);
  raw.decide(r);
  CHECK(raw.counters().decide_calls == 2);
}

#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rsp/bifurcation.hpp"
#include "rsp/errors.hpp"
#include "rsp/fast.hpp"

using namespace rsp;

namespace {

// Emits a fixed list of comparisons and records the answers.
struct ScriptRun {
  std::vector<CandidateValue> script;
  std::size_t pos = 0;
  bool awaiting = false;
  std::vector<bool> answers;

  std::optional<CandidateValue> advance() {
    if (pos == script.size()) return std::nullopt;
    awaiting = true;
    return script[pos];
  }
  void answer(bool within) {
    answers.push_back(within);
    awaiting = false;
    ++pos;
  }
};

std::uint32_t ceil_log2_size(std::size_t b) { return ceil_log2(std::max<std::size_t>(b, 1)); }

}  // namespace

TEST_CASE("pre-certified interval needs no forks") {
  Instance inst = generate(GeneratorKind::line, 3, 0);
  inst.lambda = 2;
  DecisionPair dp(inst);
  const auto r = rstar_exact(inst);
  Interval iv;
  iv.hi = r;
  iv.hi_evidence = true;
  iv.hi_is_rstar = true;
  const GridIndex g = build_grid(inst.points, 1.0);
  auto res = bifurcate(inst, BfsRun(inst, g, BfsLimits::decision(inst)), iv, dp);
  CHECK(res.stats.forks == 0);
  REQUIRE(res.exact);
  CHECK(res.exact->sq == 1.0);
  CHECK(res.stats.calls() == 0);
}

TEST_CASE("line simulation with a wide interval") {
  Instance inst = generate(GeneratorKind::line, 3, 0);
  inst.lambda = 2;
  DecisionPair dp(inst);
  const DyadicBracket br = dyadic_bracket(inst, dp);
  auto res = bifurcate(inst, BfsRun(inst, br.grid, BfsLimits::decision(inst)), Interval::everything(), dp);
  const auto direct = decide_bfs_instrumented(inst, br.grid, [](const CandidateValue& c) { return c.sq <= 1.0; });
  CHECK(res.run.transcript() == direct.transcript);
  CHECK(res.run.levels() == HopVector{0u, 1u, 2u});
}

TEST_CASE("script run: comparisons resolve consistently with r*") {
  Instance inst = generate(GeneratorKind::uniform, 40, 6);
  const auto r = rstar_exact(inst);
  std::vector<CandidateValue> script;
  for (PointIndex i = 0; i < 40; ++i) script.push_back(make_candidate(inst, i, (i * 7 + 3) % 40 == i ? (i + 1) % 40 : (i * 7 + 3) % 40));
  script.push_back(r);
  DecisionPair dp(inst);
  BifurcationOptions opt;
  opt.batch = 4;
  auto res = bifurcate(inst, ScriptRun{script}, Interval::everything(), dp, opt);
  REQUIRE(res.run.answers.size() == script.size());
  for (std::size_t i = 0; i < script.size(); ++i) CHECK(res.run.answers[i] == (script[i].sq <= r.sq));
  CHECK(res.stats.live_bound_held);
  CHECK(res.stats.max_pending <= 4);
  REQUIRE(res.exact);
  CHECK(res.exact->sq == r.sq);
}

TEST_CASE("non-candidate comparisons are rejected") {
  Instance inst = generate(GeneratorKind::uniform, 10, 1);
  DecisionPair dp(inst);
  ScriptRun bad{{CandidateValue{12345.0}}};
  CHECK_THROWS_AS(bifurcate(inst, bad, Interval::everything(), dp), ProtocolViolation);
  ScriptRun wrong{{CandidateValue{1.0, 0, 1}}};
  CHECK_THROWS_AS(bifurcate(inst, wrong, Interval::everything(), dp), ProtocolViolation);
}

TEST_CASE("engine invariants on uniform instances") {
  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 100; ++rep) {
    Instance inst = generate(GeneratorKind::uniform, 16 + rng() % 497, rng());
    inst.lambda = 1 + static_cast<std::uint32_t>(rng() % (inst.size() - 1));
    const auto r = rstar_exact(inst);
    DecisionPair dp(inst);
    const DyadicBracket br = dyadic_bracket(inst, dp);
    BifurcationOptions opt;
    opt.L = 1 + rng() % 64;
    auto res = bifurcate(inst, BfsRun(inst, br.grid, BfsLimits::decision(inst)), Interval::everything(), dp, opt);
    const auto direct = decide_bfs_instrumented(inst, br.grid, [&](const CandidateValue& c) { return c.sq <= r.sq; });
    CHECK(res.run.transcript() == direct.transcript);
    CHECK(res.stats.live_bound_held);
    CHECK(res.stats.max_live <= res.stats.max_pending + 1);
    CHECK(res.stats.calls() <= res.stats.resolutions * (ceil_log2_size(res.stats.batch) + 2));
    CHECK(res.stats.forks >= res.stats.max_pending);
    CHECK(res.range.admits(r.sq));
    if (res.exact) CHECK(res.exact->sq == r.sq);
  }
}

TEST_CASE("bifurcation is deterministic") {
  Instance inst = generate(GeneratorKind::cluster, 300, 12);
  auto once = [&] {
    DecisionPair dp(inst);
    const DyadicBracket br = dyadic_bracket(inst, dp);
    auto res = bifurcate(inst, BfsRun(inst, br.grid, BfsLimits::decision(inst)), Interval::everything(), dp);
    return std::make_pair(res.run.transcript(), dp.counters().calls());
  };
  const auto a = once();
  const auto b = once();
  CHECK(a.first == b.first);
  CHECK(a.second == b.second);
}

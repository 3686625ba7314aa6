#pragma once

#include <cstdint>
#include <vector>

#include "rsp/core.hpp"
#include "rsp/pipelines.hpp"

namespace rsp {

struct BenchRow {
  Algorithm algorithm;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  SolveReport report;
};

// One solve per (algorithm, n, repeat) on uniform instances seeded by repeat.
std::vector<BenchRow> run_bench(const std::vector<Algorithm>& algos, const std::vector<std::size_t>& sizes,
                                std::uint32_t repeats, std::uint64_t seed, const SolveOptions& opt = {});

// Least-squares slope of log(y) against log(x); nonpositive points are skipped.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct BenchSlopes {
  Algorithm algorithm;
  double calls_slope = 0.0;
  double time_slope = 0.0;
};

std::vector<BenchSlopes> bench_slopes(const std::vector<BenchRow>& rows);

}  // namespace rsp

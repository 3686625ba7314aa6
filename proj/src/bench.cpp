#include "rsp/bench.hpp"

#include <cmath>
#include <map>

namespace rsp {

std::vector<BenchRow> run_bench(const std::vector<Algorithm>& algos, const std::vector<std::size_t>& sizes,
                                std::uint32_t repeats, std::uint64_t seed, const SolveOptions& opt) {
  std::vector<BenchRow> rows;
  for (std::size_t n : sizes) {
    for (std::uint32_t rep = 0; rep < repeats; ++rep) {
      const std::uint64_t s = seed + rep;
      const Instance inst = generate(GeneratorKind::uniform, n, s);
      for (Algorithm a : algos) {
        SolveOptions o = opt;
        o.seed = s;
        rows.push_back({a, n, s, solve(a, inst, o)});
      }
    }
  }
  return rows;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) continue;
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  if (m < 2) return 0.0;
  const double den = m * sxx - sx * sx;
  return den == 0.0 ? 0.0 : (m * sxy - sx * sy) / den;
}

std::vector<BenchSlopes> bench_slopes(const std::vector<BenchRow>& rows) {
  // Mean per (algorithm, n), then one fit per algorithm.
  std::map<int, std::map<std::size_t, std::pair<double, double>>> sums;
  std::map<int, std::map<std::size_t, int>> counts;
  for (const auto& r : rows) {
    auto& cell = sums[static_cast<int>(r.algorithm)][r.n];
    cell.first += static_cast<double>(r.report.counters.calls());
    cell.second += r.report.counters.wall_ms;
    ++counts[static_cast<int>(r.algorithm)][r.n];
  }
  std::vector<BenchSlopes> out;
  for (const auto& [algo, by_n] : sums) {
    std::vector<double> xs, calls, times;
    for (const auto& [n, s] : by_n) {
      const double c = counts[algo][n];
      xs.push_back(static_cast<double>(n));
      calls.push_back(s.first / c);
      times.push_back(s.second / c);
    }
    out.push_back({static_cast<Algorithm>(algo), loglog_slope(xs, calls), loglog_slope(xs, times)});
  }
  return out;
}

}  // namespace rsp

#pragma once

// End-to-end solvers for r*: a brute-force reference, a selection-driven
// binary search, the generic shrink-and-simulate solver and the heavy/light
// solver.

#include <cstdint>
#include <optional>
#include <string>

#include "rsp/core.hpp"

namespace rsp {

struct SolveCounters {
  std::uint64_t decide_calls = 0;
  std::uint64_t strict_calls = 0;
  std::uint64_t decide_queries = 0;
  std::uint64_t strict_queries = 0;
  std::uint64_t selection_probes = 0;
  std::uint64_t forks = 0;
  std::uint64_t resolutions = 0;
  std::uint64_t comparisons = 0;
  std::uint64_t pair_passes = 0;
  std::uint64_t dp_entries = 0;
  double wall_ms = 0.0;

  std::uint64_t calls() const { return decide_calls + strict_calls; }
};

struct SolveParams {
  std::uint64_t L = 0;
  std::uint64_t delta = 0;
  std::uint64_t batch = 0;
  std::uint64_t seed = 0;
  std::uint32_t heavy_cells = 0;
  std::uint32_t slack = 0;
  int grid_exponent = 0;
};

struct SolveReport {
  CandidateValue r_star;
  std::string algorithm;
  SolveCounters counters;
  SolveParams params;
  bool fallback = false;
  std::string fallback_reason;
  bool certified_at_most = false;  // decide(r*) held
  bool certified_not_below = false;  // decide_strict(r*) failed
};

struct SolveOptions {
  std::optional<std::uint64_t> L;
  std::optional<std::uint64_t> delta;
  std::optional<std::uint64_t> batch;
  std::uint64_t seed = 1;
  // Pair windows up to this size are sorted in memory by the selection
  // baseline; larger windows are handled by sampling passes.
  std::uint64_t materialize_limit = 1u << 22;
};

std::uint64_t default_generic_L(std::size_t n);
std::uint64_t default_fast_L(std::size_t n);
std::uint64_t default_fast_delta(std::size_t n);

SolveReport solve_brute(const Instance& inst);
SolveReport solve_distsel_binary(const Instance& inst, const SolveOptions& opt = {});
SolveReport solve_generic(const Instance& inst, const SolveOptions& opt = {});
SolveReport solve_fast(const Instance& inst, const SolveOptions& opt = {});

enum class Algorithm { brute, distsel, generic, fast };
std::optional<Algorithm> parse_algorithm(std::string_view name);
std::string_view to_string(Algorithm a);
SolveReport solve(Algorithm a, const Instance& inst, const SolveOptions& opt = {});

}  // namespace rsp

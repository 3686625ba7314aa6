#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rsp/bench.hpp"
#include "rsp/core.hpp"
#include "rsp/errors.hpp"
#include "rsp/io.hpp"
#include "rsp/pipelines.hpp"

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

std::vector<rsp::Algorithm> parse_algorithms(const std::string& list) {
  std::vector<rsp::Algorithm> out;
  for (const auto& name : split(list, ',')) {
    auto a = rsp::parse_algorithm(name);
    if (!a) throw CLI::ValidationError("--algo", "unknown algorithm '" + name + "'");
    out.push_back(*a);
  }
  return out;
}

std::vector<rsp::GeneratorKind> parse_kinds(const std::string& list) {
  std::vector<rsp::GeneratorKind> out;
  for (const auto& name : split(list, ',')) {
    auto k = rsp::parse_generator_kind(name);
    if (!k) throw CLI::ValidationError("--kinds", "unknown generator '" + name + "'");
    out.push_back(*k);
  }
  return out;
}

int run_verify(const std::string& range, std::uint32_t seeds, const std::string& kinds_list) {
  const auto bounds = split(range, ':');
  if (bounds.size() != 2) throw CLI::ValidationError("--n-range", "expected MIN:MAX");
  const std::size_t lo = std::stoul(bounds[0]), hi = std::stoul(bounds[1]);
  const auto kinds = parse_kinds(kinds_list);
  std::uint64_t checked = 0, mismatches = 0;
  for (auto kind : kinds) {
    for (std::size_t n = std::max<std::size_t>(lo, 2); n <= hi; n *= 2) {
      const std::uint32_t sqrt_n = static_cast<std::uint32_t>(std::ceil(std::sqrt(static_cast<double>(n))));
      const std::uint32_t lambdas[] = {1, 2, sqrt_n, static_cast<std::uint32_t>(n - 1)};
      for (std::uint32_t seed = 1; seed <= seeds; ++seed) {
        rsp::Instance inst = rsp::generate(kind, n, seed);
        inst.lambda = lambdas[seed % 4];
        const auto truth = rsp::rstar_exact(inst).sq;
        for (auto algo : {rsp::Algorithm::distsel, rsp::Algorithm::generic, rsp::Algorithm::fast}) {
          rsp::SolveOptions opt;
          opt.seed = seed;
          const auto rep = rsp::solve(algo, inst, opt);
          ++checked;
          if (rep.r_star.sq != truth) {
            ++mismatches;
            std::cerr << "mismatch: " << rsp::to_string(algo) << " kind=" << rsp::to_string(kind) << " n=" << n
                      << " seed=" << seed << " lambda=" << inst.lambda << " got " << rep.r_star.sq << " want "
                      << truth << '\n';
          }
        }
      }
    }
  }
  std::cout << "checked " << checked << " solves, " << mismatches << " mismatches\n";
  return mismatches == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reverse shortest path solver for unit-disk graphs"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "Generate a seeded instance");
  std::string kind_name = "uniform", out_path;
  std::size_t gen_n = 64;
  std::uint64_t gen_seed = 1;
  std::optional<std::uint32_t> gen_lambda;
  gen->add_option("--kind", kind_name, "uniform|cluster|grid|line")->capture_default_str();
  gen->add_option("--n", gen_n, "Number of points")->capture_default_str();
  gen->add_option("--seed", gen_seed)->capture_default_str();
  gen->add_option("--lambda", gen_lambda, "Hop budget (default ceil(sqrt n))");
  gen->add_option("--out", out_path, "Output file (stdout if omitted)");

  auto* solve = app.add_subcommand("solve", "Solve an instance file");
  std::string algo_name = "fast", in_path, report_format = "json";
  rsp::SolveOptions solve_opt;
  solve->add_option("--algo", algo_name, "brute|distsel|generic|fast")->capture_default_str();
  solve->add_option("--in", in_path, "Instance JSON")->required();
  solve->add_option("--L", solve_opt.L, "Interval size parameter");
  solve->add_option("--delta", solve_opt.delta, "Heavy cell threshold");
  solve->add_option("--batch", solve_opt.batch, "Bifurcation batch size");
  solve->add_option("--seed", solve_opt.seed)->capture_default_str();
  solve->add_option("--report", report_format, "json|csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Cross-check all solvers against brute force");
  std::string n_range = "8:256", kinds_list = "uniform,cluster,grid,line";
  std::uint32_t verify_seeds = 5;
  verify->add_option("--n-range", n_range, "MIN:MAX, n doubles from MIN")->capture_default_str();
  verify->add_option("--seeds", verify_seeds, "Seeds per (kind, n)")->capture_default_str();
  verify->add_option("--kinds", kinds_list)->capture_default_str();

  auto* bench = app.add_subcommand("bench", "Benchmark solvers on uniform instances");
  std::string bench_algos = "fast,distsel", n_list = "1024,2048,4096", bench_out;
  std::uint32_t repeats = 1;
  std::uint64_t bench_seed = 1;
  bench->add_option("--algo", bench_algos, "Comma separated algorithms")->capture_default_str();
  bench->add_option("--n-list", n_list, "Comma separated sizes")->capture_default_str();
  bench->add_option("--repeats", repeats)->capture_default_str();
  bench->add_option("--seed", bench_seed)->capture_default_str();
  bench->add_option("--out", bench_out, "CSV output (stdout if omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      auto kind = rsp::parse_generator_kind(kind_name);
      if (!kind) throw CLI::ValidationError("--kind", "unknown generator '" + kind_name + "'");
      rsp::Instance inst = rsp::generate(*kind, gen_n, gen_seed);
      if (gen_lambda) inst.lambda = *gen_lambda;
      rsp::validate(inst);
      if (out_path.empty()) {
        std::cout << rsp::instance_to_json(inst) << '\n';
      } else {
        rsp::write_instance(inst, out_path);
      }
      return 0;
    }
    if (*solve) {
      auto algo = rsp::parse_algorithm(algo_name);
      if (!algo) throw CLI::ValidationError("--algo", "unknown algorithm '" + algo_name + "'");
      const rsp::Instance inst = rsp::read_instance(in_path);
      const auto rep = rsp::solve(*algo, inst, solve_opt);
      if (report_format == "json") {
        std::cout << rsp::report_to_json(rep) << '\n';
      } else {
        std::cout << rsp::csv_header() << '\n' << rsp::report_to_csv_row(rep, inst.size()) << '\n';
      }
      return 0;
    }
    if (*verify) return run_verify(n_range, verify_seeds, kinds_list);
    if (*bench) {
      std::vector<std::size_t> sizes;
      for (const auto& s : split(n_list, ',')) sizes.push_back(std::stoul(s));
      const auto rows = rsp::run_bench(parse_algorithms(bench_algos), sizes, repeats, bench_seed);
      std::ofstream file;
      if (!bench_out.empty()) file.open(bench_out);
      std::ostream& os = bench_out.empty() ? std::cout : file;
      os << rsp::csv_header() << '\n';
      for (const auto& r : rows) os << rsp::report_to_csv_row(r.report, r.n) << '\n';
      for (const auto& s : rsp::bench_slopes(rows)) {
        std::cerr << rsp::to_string(s.algorithm) << ": log-log slope of oracle calls " << s.calls_slope
                  << ", of wall time " << s.time_slope << '\n';
      }
      return 0;
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const rsp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

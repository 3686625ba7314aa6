#include "rsp/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rsp/errors.hpp"

namespace rsp {

namespace {

using nlohmann::json;

json number(double v) {
  if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 0x1.0p53) return static_cast<std::int64_t>(v);
  return v;
}

}  // namespace

std::string instance_to_json(const Instance& inst) {
  json pts = json::array();
  for (const auto& p : inst.points) pts.push_back({number(p.x), number(p.y)});
  json doc = {{"points", std::move(pts)}, {"s", inst.s}, {"t", inst.t}, {"lambda", inst.lambda}};
  return doc.dump();
}

Instance instance_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInstance(std::string("instance is not valid JSON: ") + e.what());
  }
  Instance inst;
  try {
    for (const auto& p : doc.at("points")) {
      if (!p.is_array() || p.size() != 2) throw InvalidInstance("each point must be [x, y]");
      inst.points.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    inst.s = doc.at("s").get<PointIndex>();
    inst.t = doc.at("t").get<PointIndex>();
    inst.lambda = doc.at("lambda").get<std::uint32_t>();
  } catch (const json::exception& e) {
    throw InvalidInstance(std::string("malformed instance: ") + e.what());
  }
  validate(inst);
  return inst;
}

Instance read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInstance("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return instance_from_json(buf.str());
}

void write_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << instance_to_json(inst) << '\n';
}

std::string report_to_json(const SolveReport& r) {
  const auto& c = r.counters;
  const auto& p = r.params;
  json doc = {
      {"algorithm", r.algorithm},
      {"r_star_sq", number(r.r_star.sq)},
      {"witness", {r.r_star.first, r.r_star.second}},
      {"counters",
       {{"decide_calls", c.decide_calls},
        {"strict_calls", c.strict_calls},
        {"decide_queries", c.decide_queries},
        {"strict_queries", c.strict_queries},
        {"selection_probes", c.selection_probes},
        {"forks", c.forks},
        {"resolutions", c.resolutions},
        {"comparisons", c.comparisons},
        {"pair_passes", c.pair_passes},
        {"dp_entries", c.dp_entries},
        {"wall_ms", c.wall_ms}}},
      {"params",
       {{"L", p.L},
        {"delta", p.delta},
        {"batch", p.batch},
        {"seed", p.seed},
        {"heavy_cells", p.heavy_cells},
        {"slack", p.slack},
        {"grid_exponent", p.grid_exponent}}},
      {"fallback", r.fallback},
      {"certified", r.certified_at_most && r.certified_not_below},
  };
  if (r.fallback) doc["fallback_reason"] = r.fallback_reason;
  return doc.dump(2);
}

std::string csv_header() {
  return "algorithm,n,r_star_sq,witness_i,witness_j,decide_calls,strict_calls,selection_probes,forks,resolutions,"
         "comparisons,dp_entries,wall_ms,L,delta,batch,seed,heavy_cells,slack,fallback";
}

std::string report_to_csv_row(const SolveReport& r, std::size_t n) {
  const auto& c = r.counters;
  const auto& p = r.params;
  std::ostringstream os;
  os << r.algorithm << ',' << n << ',' << number(r.r_star.sq).dump() << ',' << r.r_star.first << ','
     << r.r_star.second << ',' << c.decide_calls << ',' << c.strict_calls << ',' << c.selection_probes << ','
     << c.forks << ',' << c.resolutions << ',' << c.comparisons << ',' << c.dp_entries << ',' << c.wall_ms << ','
     << p.L << ',' << p.delta << ',' << p.batch << ',' << p.seed << ',' << p.heavy_cells << ',' << p.slack << ','
     << (r.fallback ? 1 : 0);
  return os.str();
}

}  // namespace rsp

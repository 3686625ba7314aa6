#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rsp/core.hpp"
#include "rsp/pipelines.hpp"

namespace rsp {

// {"points": [[x, y], ...], "s": int, "t": int, "lambda": int}
std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);
Instance read_instance(const std::string& path);
void write_instance(const Instance& inst, const std::string& path);

std::string report_to_json(const SolveReport& r);
std::string csv_header();
std::string report_to_csv_row(const SolveReport& r, std::size_t n);

}  // namespace rsp

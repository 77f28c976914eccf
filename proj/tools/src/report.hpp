#pragma once

#include <string>
#include <vector>

#include "bench.hpp"

namespace aspcost::cli {

std::string report_csv(const std::vector<BenchRow>& rows);
std::string report_markdown(const std::vector<BenchRow>& rows);
std::string report_json(const std::vector<BenchRow>& rows);

}  // namespace aspcost::cli

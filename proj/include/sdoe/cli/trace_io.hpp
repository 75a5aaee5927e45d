#pragma once

#include "sdoe/core/trace.hpp"

#include <string>

namespace sdoe {

// CSV with header step,evals,best_observed,gp_min_mean,gp_min_std,reward and
// 17-significant-digit decimals, so read_trace reproduces every value
// exactly.
void write_trace(const ConvergenceTrace& trace, const std::string& path);
ConvergenceTrace read_trace(const std::string& path);

}  // namespace sdoe

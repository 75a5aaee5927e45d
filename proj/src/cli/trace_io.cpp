#include "sdoe/cli/trace_io.hpp"

#include "sdoe/core/types.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace sdoe {

namespace {
constexpr const char* kHeader =
    "step,evals,best_observed,gp_min_mean,gp_min_std,reward";
}

void write_trace(const ConvergenceTrace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ContractError("cannot open '" + path + "' for writing");
  out << kHeader << "\n";
  char buf[160];
  for (const TraceRow& r : trace.rows) {
    std::snprintf(buf, sizeof buf, "%d,%ld,%.17g,%.17g,%.17g,%.17g\n", r.step,
                  r.evals, r.best_observed, r.gp_min_mean, r.gp_min_std,
                  r.reward);
    out << buf;
  }
  if (!out) throw ContractError("write failed for '" + path + "'");
}

ConvergenceTrace read_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("missing header", 1);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader)
    throw ParseError("unexpected trace header '" + line + "'", 1);

  ConvergenceTrace trace;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (fields.size() != 6)
      throw ParseError("expected 6 fields, got " +
                           std::to_string(fields.size()),
                       line_no);
    auto num = [&](int i) {
      const char* begin = fields[static_cast<size_t>(i)].c_str();
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin || *end != '\0')
        throw ParseError("bad number '" + fields[static_cast<size_t>(i)] + "'",
                         line_no);
      return v;
    };
    TraceRow r;
    r.step = static_cast<int>(num(0));
    r.evals = static_cast<long>(num(1));
    r.best_observed = num(2);
    r.gp_min_mean = num(3);
    r.gp_min_std = num(4);
    r.reward = num(5);
    trace.rows.push_back(r);
  }
  return trace;
}

}  // namespace sdoe

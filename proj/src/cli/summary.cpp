#include "sdoe/cli/summary.hpp"

#include "sdoe/core/types.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>

namespace sdoe {

double quantile(std::vector<double> values, double p) {
  if (values.empty()) throw ContractError("quantile of an empty sample");
  if (p < 0.0 || p > 1.0) throw ContractError("quantile level outside [0,1]");
  std::sort(values.begin(), values.end());
  const double h = p * static_cast<double>(values.size() - 1);
  const size_t lo = static_cast<size_t>(std::floor(h));
  const double frac = h - std::floor(h);
  if (lo + 1 >= values.size()) return values.back();
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

namespace {

// best_observed as a step function of evaluations: the last row at or below
// `evals`. Requires the trace to start at or before `evals`.
double best_at(const ConvergenceTrace& trace, long evals) {
  const TraceRow* hit = nullptr;
  for (const TraceRow& r : trace.rows) {
    if (r.evals <= evals) hit = &r;
    else break;
  }
  if (!hit) throw ContractError("checkpoint precedes the first trace row");
  return hit->best_observed;
}

}  // namespace

ComparisonSummary compare_summary(
    const std::map<std::string, std::vector<ConvergenceTrace>>& by_method,
    double threshold) {
  if (by_method.empty()) throw ContractError("no methods to summarize");

  long start = 0;                                   // latest first-row evals
  long stop = std::numeric_limits<long>::max();     // earliest last-row evals
  std::set<long> axis;
  for (const auto& [name, traces] : by_method) {
    if (traces.empty())
      throw ContractError("method '" + name + "' has no traces");
    for (const ConvergenceTrace& t : traces) {
      if (t.rows.empty())
        throw ContractError("method '" + name + "' has an empty trace");
      start = std::max(start, t.rows.front().evals);
      stop = std::min(stop, t.rows.back().evals);
      for (const TraceRow& r : t.rows) axis.insert(r.evals);
    }
  }
  if (start > stop)
    throw ContractError("trace evaluation ranges do not overlap");

  ComparisonSummary summary;
  summary.threshold = threshold;
  for (long e : axis)
    if (e >= start && e <= stop) summary.checkpoints.push_back(e);

  for (const auto& [name, traces] : by_method) {
    MethodSummary ms;
    for (long e : summary.checkpoints) {
      std::vector<double> sample;
      sample.reserve(traces.size());
      for (const ConvergenceTrace& t : traces) sample.push_back(best_at(t, e));
      ms.median.push_back(quantile(sample, 0.5));
      ms.q1.push_back(quantile(sample, 0.25));
      ms.q3.push_back(quantile(sample, 0.75));
      if (!ms.evals_to_threshold && ms.median.back() <= threshold)
        ms.evals_to_threshold = e;
    }
    summary.methods.emplace(name, std::move(ms));
  }
  return summary;
}

void write_summary_json(const ComparisonSummary& summary,
                        const std::string& path) {
  nlohmann::json j;
  j["threshold"] = summary.threshold;
  j["checkpoints"] = summary.checkpoints;
  for (const auto& [name, ms] : summary.methods) {
    nlohmann::json m;
    m["median"] = ms.median;
    m["q1"] = ms.q1;
    m["q3"] = ms.q3;
    if (ms.evals_to_threshold)
      m["evals_to_threshold"] = *ms.evals_to_threshold;
    else
      m["evals_to_threshold"] = nullptr;
    j["methods"][name] = std::move(m);
  }
  std::ofstream out(path);
  if (!out) throw ContractError("cannot open '" + path + "' for writing");
  out << j.dump(2) << "\n";
  if (!out) throw ContractError("write failed for '" + path + "'");
}

}  // namespace sdoe

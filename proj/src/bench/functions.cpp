#include "sdoe/bench/functions.hpp"

#include <cmath>

namespace sdoe {

double linear_scale(double value, const Interval& from, const Interval& to) {
  if (from.width() == 0.0)
    throw ContractError("linear_scale: zero-width source interval");
  return to.lo + (value - from.lo) * (to.width() / from.width());
}

namespace {

void check_domain(const Vec& x, const Interval& dom, bool strict,
                  const char* name) {
  if (x.size() != 2) throw ContractError(std::string(name) + ": expected d=2");
  if (!strict) return;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] < dom.lo || x[i] > dom.hi)
      throw ContractError(std::string(name) + ": point outside domain");
  }
}

constexpr Interval kAckleyDomain{-32.768, 32.768};
constexpr Interval kBoothDomain{-10.0, 10.0};

}  // namespace

double raw_ackley(const Vec& x, bool strict) {
  check_domain(x, kAckleyDomain, strict, "ackley");
  const double two_pi = 6.283185307179586476925287;
  double sum_sq = 0.0, sum_cos = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    sum_sq += x[i] * x[i];
    sum_cos += std::cos(two_pi * x[i]);
  }
  const double n = static_cast<double>(x.size());
  return -20.0 * std::exp(-0.2 * std::sqrt(sum_sq / n)) -
         std::exp(sum_cos / n) + 20.0 + std::exp(1.0);
}

double raw_booth(const Vec& x, bool strict) {
  check_domain(x, kBoothDomain, strict, "booth");
  const double a = x[0] + 2.0 * x[1] - 7.0;
  const double b = 2.0 * x[0] + x[1] - 5.0;
  return a * a + b * b;
}

const BenchFunction& bench_function(const std::string& name) {
  static const BenchFunction ackley = {
      "ackley", 2, kAckleyDomain, (Vec(2) << 0.0, 0.0).finished(), 0.0,
      raw_ackley};
  static const BenchFunction booth = {
      "booth", 2, kBoothDomain, (Vec(2) << 1.0, 3.0).finished(), 0.0,
      raw_booth};
  if (name == "ackley") return ackley;
  if (name == "booth") return booth;
  throw ConfigError("unknown benchmark function '" + name + "'", "function");
}

}  // namespace sdoe

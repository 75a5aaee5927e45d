#pragma once

#include "sdoe/core/types.hpp"

namespace sdoe {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
};

// Affine map taking `from` onto `to` endpoint-to-endpoint. Invertible by
// swapping the intervals. Throws ContractError on a zero-width source.
double linear_scale(double value, const Interval& from, const Interval& to);

// Ackley, d=2, domain [-32.768, 32.768]^2, global minimum 0 at the origin.
// In strict mode out-of-domain points throw ContractError.
double raw_ackley(const Vec& x, bool strict = true);

// Booth, d=2, domain [-10, 10]^2, global minimum 0 at (1, 3).
double raw_booth(const Vec& x, bool strict = true);

struct BenchFunction {
  const char* name;
  int dim;
  Interval domain;           // same bounds on every dimension
  Vec raw_optimum;           // location of the global minimum, raw units
  double raw_optimum_value;  // value there
  double (*eval)(const Vec&, bool strict);
};

// Lookup by name ("ackley" / "booth"); throws ConfigError on unknown names.
const BenchFunction& bench_function(const std::string& name);

}  // namespace sdoe

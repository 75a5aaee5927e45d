#pragma once

#include "sdoe/bench/functions.hpp"
#include "sdoe/core/types.hpp"

#include <optional>
#include <string>

namespace sdoe {

// Result of evaluating a proposed batch. Implementations may substitute
// different locations (clipping, grid projection), so `points` — not the
// proposal — is what belongs in downstream datasets and state.
struct BatchResult {
  Mat points;  // n x d, normalized units, row i is the location actually used
  Vec values;  // n normalized outputs
};

// A black-box objective seen entirely in normalized units: inputs in
// [-3,3]^d, outputs (approximately) in [-3,3], minimization. Keeps an
// evaluation counter that advances by exactly one per point.
class Objective {
 public:
  virtual ~Objective() = default;

  int dim() const { return dim_; }
  const std::string& name() const { return name_; }
  // Identity of the underlying task, used to keep training and test
  // objectives apart; instances of one function class share a family.
  const std::string& family() const { return family_; }
  long evaluations_used() const { return evals_; }

  // Single-point convenience wrapper over evaluate_batch.
  double evaluate(const Vec& x);

  // Default: clip every row into the domain and evaluate pointwise.
  virtual BatchResult evaluate_batch(const Mat& proposed);

  // Finite set of admissible locations (rows, normalized), or nullptr when
  // the domain is continuous.
  virtual const Mat* fixed_candidates() const { return nullptr; }

  // Forget evaluation history: counter and any consumption bookkeeping.
  virtual void reset_state() { evals_ = 0; }

  // Best attainable normalized output, when known.
  virtual std::optional<double> normalized_optimum() const = 0;

 protected:
  Objective(std::string name, std::string family, int dim);

  // x is already clipped into the normalized domain; no counting here.
  virtual double evaluate_impl(const Vec& x) = 0;

  long evals_ = 0;

 private:
  std::string name_;
  std::string family_;
  int dim_;
};

// Analytic benchmark wrapped for normalized use. A per-dimension shift delta
// (normalized units) relocates the function: queries are shifted by -delta,
// clipped, then mapped affinely onto the raw domain. Outputs are rescaled to
// [-3,3] against the min/max observed on a dense probe grid (256 points per
// axis), computed once at construction.
class SyntheticObjective : public Objective {
 public:
  explicit SyntheticObjective(const BenchFunction& fn, Vec shift = Vec());
  SyntheticObjective(const std::string& fn_name, Vec shift = Vec());

  std::optional<double> normalized_optimum() const override;

  // Location of the true minimum in normalized units (shift included).
  Vec normalized_argmin() const;
  const Vec& shift() const { return shift_; }
  // Raw-valued shifted function at a normalized point (pre output scaling).
  double raw_at(const Vec& z) const;

 protected:
  double evaluate_impl(const Vec& x) override;

 private:
  const BenchFunction* fn_;
  Vec shift_;
  Interval out_raw_;  // probe-grid output range of the shifted function
};

}  // namespace sdoe

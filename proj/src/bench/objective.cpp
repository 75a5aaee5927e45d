#include "sdoe/bench/objective.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace sdoe {

Objective::Objective(std::string name, std::string family, int dim)
    : name_(std::move(name)), family_(std::move(family)), dim_(dim) {
  if (dim_ < 1) throw ContractError("objective dimension must be >= 1");
}

double Objective::evaluate(const Vec& x) {
  if (x.size() != dim_)
    throw ContractError("evaluate: point dimension mismatch");
  Mat row(1, dim_);
  row.row(0) = x.transpose();
  return evaluate_batch(row).values[0];
}

BatchResult Objective::evaluate_batch(const Mat& proposed) {
  if (proposed.cols() != dim_)
    throw ContractError("evaluate_batch: point dimension mismatch");
  if (proposed.rows() < 1)
    throw ContractError("evaluate_batch: empty batch");
  BatchResult out;
  out.points = proposed;
  out.values.resize(proposed.rows());
  for (Eigen::Index i = 0; i < proposed.rows(); ++i) {
    for (Eigen::Index j = 0; j < dim_; ++j)
      out.points(i, j) = clamp_to_domain(out.points(i, j));
    out.values[i] = evaluate_impl(out.points.row(i).transpose());
    ++evals_;
  }
  return out;
}

namespace {

constexpr Interval kNormalized{kDomainLo, kDomainHi};
constexpr int kProbePerDim = 256;

}  // namespace

SyntheticObjective::SyntheticObjective(const BenchFunction& fn, Vec shift)
    : Objective(fn.name, fn.name, fn.dim), fn_(&fn), shift_(std::move(shift)) {
  if (shift_.size() == 0) shift_ = Vec::Zero(fn.dim);
  if (shift_.size() != fn.dim)
    throw ContractError("shift dimension does not match function dimension");
  const Vec argmin = normalized_argmin();
  for (Eigen::Index j = 0; j < argmin.size(); ++j) {
    if (argmin[j] < kDomainLo || argmin[j] > kDomainHi)
      throw ContractError("shift pushes the optimum outside the domain");
  }

  // Probe the shifted function on a dense grid to fix the output scaling.
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  auto take = [&](const Vec& z) {
    const double v = raw_at(z);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  };
  const double step =
      kNormalized.width() / static_cast<double>(kProbePerDim - 1);
  if (fn.dim == 1) {
    Vec z(1);
    for (int i = 0; i < kProbePerDim; ++i) {
      z[0] = kDomainLo + step * i;
      take(z);
    }
  } else if (fn.dim == 2) {
    Vec z(2);
    for (int i = 0; i < kProbePerDim; ++i) {
      z[0] = kDomainLo + step * i;
      for (int k = 0; k < kProbePerDim; ++k) {
        z[1] = kDomainLo + step * k;
        take(z);
      }
    }
  } else {
    throw ContractError("probe grid supports at most 2 dimensions");
  }
  if (!(hi > lo))
    throw ContractError("degenerate output range on the probe grid");
  out_raw_ = Interval{lo, hi};
}

SyntheticObjective::SyntheticObjective(const std::string& fn_name, Vec shift)
    : SyntheticObjective(bench_function(fn_name), std::move(shift)) {}

double SyntheticObjective::raw_at(const Vec& z) const {
  Vec raw(z.size());
  const Interval dom = fn_->domain;
  for (Eigen::Index j = 0; j < z.size(); ++j)
    raw[j] = linear_scale(clamp_to_domain(z[j] - shift_[j]), kNormalized, dom);
  return fn_->eval(raw, /*strict=*/false);
}

double SyntheticObjective::evaluate_impl(const Vec& x) {
  return linear_scale(raw_at(x), out_raw_, kNormalized);
}

std::optional<double> SyntheticObjective::normalized_optimum() const {
  return linear_scale(fn_->raw_optimum_value, out_raw_, kNormalized);
}

Vec SyntheticObjective::normalized_argmin() const {
  Vec z(fn_->raw_optimum.size());
  for (Eigen::Index j = 0; j < z.size(); ++j)
    z[j] = linear_scale(fn_->raw_optimum[j], fn_->domain, kNormalized) +
           shift_[j];
  return z;
}

}  // namespace sdoe

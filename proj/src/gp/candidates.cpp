#include "sdoe/gp/candidates.hpp"

namespace sdoe {

Mat make_base_candidates(const CandidateSpec& spec, int dim, Rng& rng) {
  if (dim < 1) throw ContractError("candidates: dimension must be >= 1");
  if (dim <= 2) {
    const int g = spec.grid_per_dim;
    if (g < 2) throw ContractError("candidates: grid_per_dim must be >= 2");
    const double step = (kDomainHi - kDomainLo) / static_cast<double>(g - 1);
    if (dim == 1) {
      Mat out(g, 1);
      for (int i = 0; i < g; ++i) out(i, 0) = kDomainLo + step * i;
      return out;
    }
    Mat out(static_cast<Eigen::Index>(g) * g, 2);
    Eigen::Index r = 0;
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j, ++r) {
        out(r, 0) = kDomainLo + step * i;
        out(r, 1) = kDomainLo + step * j;
      }
    return out;
  }
  Mat out(spec.random_count, dim);
  for (Eigen::Index r = 0; r < out.rows(); ++r)
    for (int j = 0; j < dim; ++j) out(r, j) = rng.uniform(kDomainLo, kDomainHi);
  return out;
}

Mat append_rows(const Mat& base, const Mat& extra) {
  if (extra.rows() == 0) return base;
  if (base.rows() == 0) return extra;
  if (base.cols() != extra.cols())
    throw ContractError("append_rows: column mismatch");
  Mat out(base.rows() + extra.rows(), base.cols());
  out.topRows(base.rows()) = base;
  out.bottomRows(extra.rows()) = extra;
  return out;
}

}  // namespace sdoe

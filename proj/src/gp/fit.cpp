#include "sdoe/gp/fit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "sdoe/gp/model.hpp"

namespace sdoe {

namespace {

// Bound-constrained Nelder-Mead. The objective is evaluated at clamped
// points, so the simplex may wander outside the box but values come from
// inside it; the returned point is clamped.
struct NelderMead {
  const std::function<double(const Vec&)>& f;
  const Vec& lo;
  const Vec& hi;
  int max_evals;
  double tol;
  int evals = 0;

  Vec clamp(Vec z) const {
    for (Eigen::Index i = 0; i < z.size(); ++i)
      z[i] = std::min(hi[i], std::max(lo[i], z[i]));
    return z;
  }

  double eval(const Vec& z) {
    ++evals;
    return f(clamp(z));
  }

  std::pair<Vec, double> minimize(const Vec& start, double step) {
    const Eigen::Index dim = start.size();
    std::vector<Vec> pts(dim + 1, start);
    std::vector<double> val(dim + 1);
    for (Eigen::Index i = 0; i < dim; ++i) pts[i + 1][i] += step;
    for (Eigen::Index i = 0; i <= dim; ++i) val[i] = eval(pts[i]);

    std::vector<int> order(dim + 1);
    while (evals < max_evals) {
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](int a, int b) { return val[a] < val[b]; });
      const int best = order.front(), worst = order.back();
      const int second_worst = order[dim > 0 ? dim - 1 : 0];
      if (val[worst] - val[best] < tol * (std::abs(val[best]) + tol)) break;

      Vec centroid = Vec::Zero(dim);
      for (int idx : order)
        if (idx != worst) centroid += pts[idx];
      centroid /= static_cast<double>(dim);

      Vec reflected = centroid + (centroid - pts[worst]);
      double fr = eval(reflected);
      if (fr < val[best]) {
        Vec expanded = centroid + 2.0 * (centroid - pts[worst]);
        double fe = eval(expanded);
        if (fe < fr) {
          pts[worst] = expanded;
          val[worst] = fe;
        } else {
          pts[worst] = reflected;
          val[worst] = fr;
        }
      } else if (fr < val[second_worst]) {
        pts[worst] = reflected;
        val[worst] = fr;
      } else {
        Vec contracted = centroid + 0.5 * (pts[worst] - centroid);
        double fc = eval(contracted);
        if (fc < val[worst]) {
          pts[worst] = contracted;
          val[worst] = fc;
        } else {
          for (int idx : order)
            if (idx != best) {
              pts[idx] = pts[best] + 0.5 * (pts[idx] - pts[best]);
              val[idx] = eval(pts[idx]);
            }
        }
      }
    }
    int best = static_cast<int>(
        std::min_element(val.begin(), val.end()) - val.begin());
    return {clamp(pts[best]), val[best]};
  }
};

Vec to_log(const Hyperparams& hp) {
  Vec z(hp.dim() + 2);
  for (int j = 0; j < hp.dim(); ++j) z[j] = std::log(hp.lengthscales[j]);
  z[hp.dim()] = std::log(hp.signal_variance);
  z[hp.dim() + 1] = std::log(hp.noise_variance);
  return z;
}

Hyperparams from_log(const Vec& z, int d) {
  Hyperparams hp;
  hp.lengthscales = z.head(d).array().exp();
  hp.signal_variance = std::exp(z[d]);
  hp.noise_variance = std::exp(z[d + 1]);
  return hp;
}

}  // namespace

Hyperparams fit_hyperparams(const Dataset& data, const FitConfig& cfg, Rng& rng) {
  if (data.size() == 0) throw ContractError("fit_hyperparams: empty dataset");
  const int d = data.dim();

  Vec lo(d + 2), hi(d + 2);
  for (int j = 0; j < d; ++j) {
    lo[j] = std::log(cfg.lengthscale_lo);
    hi[j] = std::log(cfg.lengthscale_hi);
  }
  lo[d] = std::log(cfg.signal_lo);
  hi[d] = std::log(cfg.signal_hi);
  lo[d + 1] = std::log(cfg.noise_lo);
  hi[d + 1] = std::log(cfg.noise_hi);

  auto clamp_box = [&](Vec z) {
    for (Eigen::Index i = 0; i < z.size(); ++i)
      z[i] = std::min(hi[i], std::max(lo[i], z[i]));
    return z;
  };

  // Start points: warm start, moment heuristic, then random draws.
  std::vector<Vec> starts;
  if (cfg.warm_start && cfg.warm_start->dim() == d)
    starts.push_back(clamp_box(to_log(*cfg.warm_start)));
  {
    double var_y = 0.0;
    if (data.size() > 1) {
      double mean = data.outputs.mean();
      var_y = (data.outputs.array() - mean).square().sum() /
              static_cast<double>(data.size());
    }
    Hyperparams h0;
    h0.lengthscales = Vec::Constant(d, 1.0);
    h0.signal_variance = std::max(var_y, cfg.signal_lo);
    h0.noise_variance = std::max(1e-4 * std::max(var_y, 1e-4), cfg.noise_lo);
    starts.push_back(clamp_box(to_log(h0)));
  }
  while (static_cast<int>(starts.size()) < std::max(1, cfg.restarts)) {
    Vec z(d + 2);
    for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = rng.uniform(lo[i], hi[i]);
    starts.push_back(z);
  }
  starts.resize(std::max(1, cfg.restarts));

  std::function<double(const Vec&)> objective = [&](const Vec& z) {
    return neg_log_marginal_likelihood(data, from_log(z, d));
  };

  Vec best_z;
  double best_val = std::numeric_limits<double>::infinity();
  std::string last_error = "no restarts attempted";
  for (const Vec& s : starts) {
    try {
      NelderMead nm{objective, lo, hi, cfg.max_evals_per_restart, cfg.simplex_tol};
      auto [z, v] = nm.minimize(s, 0.5);
      if (v < best_val) {
        best_val = v;
        best_z = z;
      }
    } catch (const NumericalError& e) {
      last_error = e.what();
    }
  }
  if (!std::isfinite(best_val))
    throw NumericalError("fit_hyperparams: all restarts failed; last: " + last_error);
  return from_log(best_z, d);
}

}  // namespace sdoe

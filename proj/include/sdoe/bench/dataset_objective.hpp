#pragma once

#include "sdoe/bench/grid_dataset.hpp"
#include "sdoe/bench/objective.hpp"

namespace sdoe {

// Objective backed by a pre-evaluated pool of samples in raw units. Inputs
// are rescaled per dimension from their observed range to [-3,3]; outputs
// likewise (negated first for maximization tasks, keeping one minimization
// code path). Proposed batches are projected onto the nearest unconsumed
// rows, so every evaluation serves a distinct stored sample.
class DatasetObjective : public Objective {
 public:
  DatasetObjective(GridDataset raw, std::string name, bool maximize);

  BatchResult evaluate_batch(const Mat& proposed) override;
  const Mat* fixed_candidates() const override { return &grid_.points; }
  void reset_state() override;

  // The best stored output maps exactly onto the lower domain edge.
  std::optional<double> normalized_optimum() const override {
    return kDomainLo;
  }

  const GridDataset& normalized_grid() const { return grid_; }
  Eigen::Index remaining() const { return grid_.unconsumed_count(); }
  // Index of the best (normalized-minimum) row; ties to the lowest index.
  Eigen::Index best_row() const { return best_row_; }

 protected:
  double evaluate_impl(const Vec& x) override;  // unused; batches dominate

 private:
  GridDataset grid_;  // normalized copy; owns the consumption flags
  Eigen::Index best_row_ = 0;
};

}  // namespace sdoe

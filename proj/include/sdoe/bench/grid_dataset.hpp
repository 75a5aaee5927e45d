#pragma once

#include "sdoe/core/types.hpp"

#include <string>
#include <vector>

namespace sdoe {

// A finite pool of evaluated input/output pairs. Points are served at most
// once: projection marks them consumed and never returns them again.
struct GridDataset {
  Mat points;                  // R x d
  Vec outputs;                 // R
  std::vector<char> consumed;  // R flags

  Eigen::Index size() const { return points.rows(); }
  int dim() const { return static_cast<int>(points.cols()); }
  Eigen::Index unconsumed_count() const;
  void reset_consumption();
};

// For each row of `batch` in order: index of the nearest unconsumed grid
// point (Euclidean distance, ties to the lowest index), which is then marked
// consumed. The returned indices are pairwise distinct. Throws ContractError
// when fewer unconsumed points remain than batch rows.
std::vector<Eigen::Index> nn_project_batch(const Mat& batch, GridDataset& grid);

// File format: first line `d=<int>`, then one row per sample with d input
// coordinates followed by the output, comma-separated decimals. Parse
// failures (bad header, wrong field count, non-numeric or non-finite values)
// throw ParseError carrying the 1-based line number.
GridDataset load_pregen_dataset(const std::string& path);
void save_pregen_dataset(const GridDataset& grid, const std::string& path);

}  // namespace sdoe

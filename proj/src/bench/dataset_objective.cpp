#include "sdoe/bench/dataset_objective.hpp"

#include "sdoe/bench/functions.hpp"

namespace sdoe {

DatasetObjective::DatasetObjective(GridDataset raw, std::string name,
                                   bool maximize)
    : Objective(name, "dataset:" + name, raw.dim()) {
  if (raw.size() < 1) throw ConfigError("dataset has no rows");
  grid_.points.resize(raw.size(), raw.dim());
  grid_.outputs.resize(raw.size());

  const Interval to{kDomainLo, kDomainHi};
  for (Eigen::Index j = 0; j < raw.points.cols(); ++j) {
    const Interval from{raw.points.col(j).minCoeff(),
                        raw.points.col(j).maxCoeff()};
    if (from.width() == 0.0)
      throw ConfigError("dataset input column " + std::to_string(j + 1) +
                        " has zero range; cannot normalize");
    for (Eigen::Index i = 0; i < raw.points.rows(); ++i)
      grid_.points(i, j) = linear_scale(raw.points(i, j), from, to);
  }

  Vec y = maximize ? Vec(-raw.outputs) : raw.outputs;
  const Interval from{y.minCoeff(), y.maxCoeff()};
  if (from.width() == 0.0)
    throw ConfigError("dataset outputs are constant; cannot normalize");
  for (Eigen::Index i = 0; i < y.size(); ++i)
    grid_.outputs[i] = linear_scale(y[i], from, to);
  grid_.reset_consumption();

  grid_.outputs.minCoeff(&best_row_);
}

BatchResult DatasetObjective::evaluate_batch(const Mat& proposed) {
  if (proposed.cols() != dim())
    throw ContractError("evaluate_batch: point dimension mismatch");
  if (proposed.rows() < 1)
    throw ContractError("evaluate_batch: empty batch");
  const std::vector<Eigen::Index> idx = nn_project_batch(proposed, grid_);
  BatchResult out;
  out.points.resize(proposed.rows(), dim());
  out.values.resize(proposed.rows());
  for (Eigen::Index i = 0; i < proposed.rows(); ++i) {
    out.points.row(i) = grid_.points.row(idx[static_cast<size_t>(i)]);
    out.values[i] = grid_.outputs[idx[static_cast<size_t>(i)]];
    ++evals_;
  }
  return out;
}

void DatasetObjective::reset_state() {
  evals_ = 0;
  grid_.reset_consumption();
}

double DatasetObjective::evaluate_impl(const Vec&) {
  throw ContractError("dataset objectives are evaluated through batches");
}

}  // namespace sdoe

#include "sdoe/bench/grid_dataset.hpp"

#include "sdoe/simd/kernels.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

namespace sdoe {

Eigen::Index GridDataset::unconsumed_count() const {
  Eigen::Index n = 0;
  for (char c : consumed)
    if (!c) ++n;
  return n;
}

void GridDataset::reset_consumption() {
  consumed.assign(static_cast<size_t>(size()), 0);
}

std::vector<Eigen::Index> nn_project_batch(const Mat& batch,
                                           GridDataset& grid) {
  if (batch.cols() != grid.dim())
    throw ContractError("nn_project_batch: dimension mismatch");
  if (grid.unconsumed_count() < batch.rows())
    throw ContractError("nn_project_batch: not enough unconsumed grid points");

  const Eigen::Index rows = grid.size();
  std::vector<Eigen::Index> picked;
  picked.reserve(static_cast<size_t>(batch.rows()));
  Vec sq(rows);
  for (Eigen::Index b = 0; b < batch.rows(); ++b) {
    sq.setZero();
    for (Eigen::Index j = 0; j < batch.cols(); ++j)
      simd::weighted_sq_diff_accum(sq.data(), grid.points.col(j).data(),
                                   batch(b, j), 1.0,
                                   static_cast<size_t>(rows));
    Eigen::Index best = -1;
    double best_sq = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (grid.consumed[static_cast<size_t>(i)]) continue;
      if (sq[i] < best_sq) {  // strict: first minimum wins, lowest index
        best_sq = sq[i];
        best = i;
      }
    }
    grid.consumed[static_cast<size_t>(best)] = 1;
    picked.push_back(best);
  }
  return picked;
}

namespace {

double parse_field(const std::string& field, int line) {
  const char* begin = field.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  while (end && *end == ' ') ++end;
  if (end == begin || (end && *end != '\0'))
    throw ParseError("expected a decimal number, got '" + field + "'", line);
  if (!std::isfinite(v))
    throw ParseError("non-finite value '" + field + "'", line);
  return v;
}

}  // namespace

GridDataset load_pregen_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);

  std::string line;
  if (!std::getline(in, line)) throw ParseError("missing header line", 1);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line.rfind("d=", 0) != 0)
    throw ParseError("header must start with 'd='", 1);
  int d = 0;
  try {
    size_t used = 0;
    d = std::stoi(line.substr(2), &used);
    if (used != line.size() - 2) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw ParseError("malformed dimension in header '" + line + "'", 1);
  }
  if (d < 1) throw ParseError("dimension must be >= 1", 1);

  std::vector<std::vector<double>> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
      size_t first = field.find_first_not_of(' ');
      if (first == std::string::npos) first = field.size();
      fields.push_back(parse_field(field.substr(first), line_no));
    }
    if (static_cast<int>(fields.size()) != d + 1)
      throw ParseError("expected " + std::to_string(d + 1) + " fields, got " +
                           std::to_string(fields.size()),
                       line_no);
    rows.push_back(std::move(fields));
  }
  if (rows.empty()) throw ParseError("no data rows", line_no);

  GridDataset grid;
  grid.points.resize(static_cast<Eigen::Index>(rows.size()), d);
  grid.outputs.resize(static_cast<Eigen::Index>(rows.size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    for (int j = 0; j < d; ++j)
      grid.points(static_cast<Eigen::Index>(i), j) = rows[i][static_cast<size_t>(j)];
    grid.outputs[static_cast<Eigen::Index>(i)] = rows[i][static_cast<size_t>(d)];
  }
  grid.reset_consumption();
  return grid;
}

void save_pregen_dataset(const GridDataset& grid, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ContractError("cannot open '" + path + "' for writing");
  out << "d=" << grid.dim() << "\n";
  char buf[40];
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    for (Eigen::Index j = 0; j < grid.points.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", grid.points(i, j));
      out << buf << ",";
    }
    std::snprintf(buf, sizeof buf, "%.17g", grid.outputs[i]);
    out << buf << "\n";
  }
  if (!out) throw ContractError("write failed for '" + path + "'");
}

}  // namespace sdoe

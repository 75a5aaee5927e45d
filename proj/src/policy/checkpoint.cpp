#include "sdoe/policy/checkpoint.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace sdoe {

namespace {

constexpr const char* kMagic = "sdoe-policy-v1";

void write_matrix(std::ofstream& out, const char* tag, const Mat& m) {
  out << tag << " " << m.rows() << " " << m.cols() << "\n";
  char buf[40];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      out << buf << (j + 1 == m.cols() ? "\n" : " ");
    }
  }
}

class Reader {
 public:
  explicit Reader(const std::string& path) : in_(path), path_(path) {
    if (!in_) throw ParseError("cannot open '" + path + "'", 0);
  }

  std::string next_line() {
    std::string line;
    if (!std::getline(in_, line))
      throw ParseError("unexpected end of checkpoint '" + path_ + "'", line_);
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  }

  Mat read_matrix(const char* tag) {
    std::istringstream head(next_line());
    std::string got;
    Eigen::Index rows = 0, cols = 0;
    if (!(head >> got >> rows >> cols) || got != tag || rows < 1 || cols < 1)
      throw ParseError("expected '" + std::string(tag) + " <rows> <cols>'",
                       line_);
    Mat m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      std::istringstream row(next_line());
      std::string field;
      for (Eigen::Index j = 0; j < cols; ++j) {
        if (!(row >> field))
          throw ParseError("short row in matrix " + std::string(tag), line_);
        const char* begin = field.c_str();
        char* end = nullptr;
        m(i, j) = std::strtod(begin, &end);
        if (end == begin || *end != '\0')
          throw ParseError("bad number '" + field + "'", line_);
      }
      std::string extra;
      if (row >> extra)
        throw ParseError("trailing fields in matrix " + std::string(tag),
                         line_);
    }
    return m;
  }

  Vec read_vector(const char* tag) {
    const Mat m = read_matrix(tag);
    if (m.cols() != 1)
      throw ParseError("bias " + std::string(tag) + " must have one column",
                       line_);
    return m.col(0);
  }

  int line() const { return line_; }

 private:
  std::ifstream in_;
  std::string path_;
  int line_ = 0;
};

}  // namespace

void save_checkpoint(const PolicyNet& net, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ContractError("cannot open '" + path + "' for writing");
  out << kMagic << "\n";
  write_matrix(out, "W1", net.W1);
  write_matrix(out, "b1", net.b1);
  write_matrix(out, "W2", net.W2);
  write_matrix(out, "b2", net.b2);
  write_matrix(out, "W3", net.W3);
  write_matrix(out, "b3", net.b3);
  if (!out) throw ContractError("write failed for '" + path + "'");
}

PolicyNet load_checkpoint(const std::string& path) {
  Reader r(path);
  if (r.next_line() != kMagic)
    throw ParseError("not a policy checkpoint (bad magic)", 1);
  PolicyNet net;
  net.W1 = r.read_matrix("W1");
  net.b1 = r.read_vector("b1");
  net.W2 = r.read_matrix("W2");
  net.b2 = r.read_vector("b2");
  net.W3 = r.read_matrix("W3");
  net.b3 = r.read_vector("b3");

  if (net.b1.size() != net.W1.rows() || net.W2.rows() != net.W2.cols() ||
      net.W2.cols() != net.W1.rows() || net.b2.size() != net.W2.rows() ||
      net.W3.cols() != net.W2.rows() || net.b3.size() != net.W3.rows() ||
      net.b3.size() % 2 != 0)
    throw ParseError("inconsistent layer shapes in '" + path + "'", r.line());
  return net;
}

}  // namespace sdoe

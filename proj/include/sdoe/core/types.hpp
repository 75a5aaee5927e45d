#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sdoe {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Normalized design domain: after input scaling every coordinate lies in
// [kDomainLo, kDomainHi]. Outputs are scaled into the same interval.
inline constexpr double kDomainLo = -3.0;
inline constexpr double kDomainHi = 3.0;

inline double clamp_to_domain(double v) {
  return std::clamp(v, kDomainLo, kDomainHi);
}

// Caller broke a documented precondition.
struct ContractError : std::logic_error {
  using std::logic_error::logic_error;
};

// A numerical routine could not produce a usable result (e.g. factorization
// failed after jitter escalation). Message carries diagnostics.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed external file; line is 1-based, 0 when no line applies.
struct ParseError : std::runtime_error {
  int line;
  ParseError(const std::string& msg, int line_num)
      : std::runtime_error(
            line_num > 0 ? msg + " (line " + std::to_string(line_num) + ")"
                         : msg),
        line(line_num) {}
};

// Invalid experiment configuration; maps to exit code 2 in the CLI.
struct ConfigError : std::runtime_error {
  std::string key;
  int line;  // 0 when not tied to a config line
  ConfigError(const std::string& msg, std::string key_name = "", int line_num = 0)
      : std::runtime_error(line_num > 0 ? msg + " (line " + std::to_string(line_num) + ")"
                                        : msg),
        key(std::move(key_name)),
        line(line_num) {}
};

// External objective evaluation failed; raw_reply holds whatever the child
// process sent back, verbatim.
struct EvalError : std::runtime_error {
  std::string raw_reply;
  EvalError(const std::string& msg, std::string reply = "")
      : std::runtime_error(msg), raw_reply(std::move(reply)) {}
};

}  // namespace sdoe

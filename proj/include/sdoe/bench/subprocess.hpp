#pragma once

#include "sdoe/bench/objective.hpp"

#include <string>
#include <sys/types.h>

namespace sdoe {

struct SubprocessSpec {
  std::string command;       // run once via /bin/sh -c, kept alive across calls
  int dim = 0;               // coordinates per query line
  long timeout_ms = 10000;   // per-evaluation reply deadline
};

// External black-box adapter. Per evaluation one line of d space-separated
// decimals goes to the child's stdin; one decimal line is read back from its
// stdout (the child must flush after each reply). Child death, deadline
// expiry, or an unparseable/non-finite reply raise EvalError carrying the
// raw reply text.
class SubprocessObjective : public Objective {
 public:
  explicit SubprocessObjective(SubprocessSpec spec);
  ~SubprocessObjective() override;

  SubprocessObjective(const SubprocessObjective&) = delete;
  SubprocessObjective& operator=(const SubprocessObjective&) = delete;

  std::optional<double> normalized_optimum() const override {
    return std::nullopt;
  }
  bool child_alive() const;

 protected:
  double evaluate_impl(const Vec& x) override;

 private:
  void spawn();
  void teardown() noexcept;
  std::string read_reply_line();

  SubprocessSpec spec_;
  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string rx_;  // bytes received but not yet consumed as a line
};

}  // namespace sdoe

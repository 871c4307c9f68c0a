// SPDX-License-Identifier: Apache-2.0
#ifndef PRW_PROC_HPP
#define PRW_PROC_HPP

#include <array>
#include <string>

#include "prw/model.hpp"
#include "prw/term.hpp"

namespace prw {

/// A suspended fuel-sliced evaluation. Resumption is deterministic and
/// Done/Rejected are absorbing. Each step grants an additional budget; the
/// evaluation is replayed against the accumulated budget, which observes the
/// same outcomes as a genuinely suspended run.
class SlicedProcess {
public:
  enum class Status { Running, Done, Rejected };

  SlicedProcess(const PpcaModel& model, std::string param, Expr e);

  Status step(long long budget);
  Status status() const { return status_; }
  const std::string& value() const { return value_; }
  long long slices() const { return slices_; }

private:
  const PpcaModel* model_;
  std::string param_;
  Expr expr_;
  long long total_budget_ = 0;
  long long slices_ = 0;
  Status status_ = Status::Running;
  std::string value_;
};

struct MajorityResult {
  enum class Kind { Done, Rejected, Unresolved };
  Kind kind;
  std::string value;                    // the agreed answer
  std::string detail;
  std::array<long long, 3> slices{0, 0, 0};
};

/// Runs three decision processes round-robin with equal slice budgets and
/// returns the first answer confirmed by two of them. Rejected when all
/// three decide without any two agreeing (the at-most-one-corrupted premise
/// is violated); Unresolved when the round cap is hit first.
MajorityResult majority_decide(SlicedProcess& p1, SlicedProcess& p2, SlicedProcess& p3,
                               long long slice_budget = 64,
                               long long max_rounds = 4096);

}  // namespace prw

#endif

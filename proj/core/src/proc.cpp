// SPDX-License-Identifier: Apache-2.0
#include "prw/proc.hpp"

namespace prw {

SlicedProcess::SlicedProcess(const PpcaModel& model, std::string param, Expr e)
    : model_(&model), param_(std::move(param)), expr_(std::move(e)) {}

SlicedProcess::Status SlicedProcess::step(long long budget) {
  if (status_ != Status::Running) return status_;
  total_budget_ += budget;
  ++slices_;
  Fuel fuel(total_budget_);
  EvalOutcome out = eval_at(*model_, param_, expr_, fuel);
  switch (out.kind) {
    case EvalOutcome::Kind::Value:
      status_ = Status::Done;
      value_ = out.value;
      break;
    case EvalOutcome::Kind::Undefined:
      status_ = Status::Rejected;
      break;
    case EvalOutcome::Kind::FuelExhausted:
      break;
  }
  return status_;
}

MajorityResult majority_decide(SlicedProcess& p1, SlicedProcess& p2, SlicedProcess& p3,
                               long long slice_budget, long long max_rounds) {
  SlicedProcess* ps[3] = {&p1, &p2, &p3};
  auto result_now = [&]() -> MajorityResult {
    // two agreeing Done values win
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (ps[i]->status() == SlicedProcess::Status::Done &&
            ps[j]->status() == SlicedProcess::Status::Done &&
            ps[i]->value() == ps[j]->value()) {
          return {MajorityResult::Kind::Done, ps[i]->value(), {},
                  {p1.slices(), p2.slices(), p3.slices()}};
        }
    bool all_decided = true;
    for (auto* p : ps)
      if (p->status() == SlicedProcess::Status::Running) all_decided = false;
    if (all_decided) {
      return {MajorityResult::Kind::Rejected, {},
              "no two processes agree; the at-most-one-corrupted premise fails",
              {p1.slices(), p2.slices(), p3.slices()}};
    }
    return {MajorityResult::Kind::Unresolved, {}, {}, {}};
  };

  MajorityResult r = result_now();
  if (r.kind != MajorityResult::Kind::Unresolved) return r;
  for (long long round = 0; round < max_rounds; ++round) {
    for (auto* p : ps) {
      if (p->status() != SlicedProcess::Status::Running) continue;
      p->step(slice_budget);
      r = result_now();
      if (r.kind != MajorityResult::Kind::Unresolved) return r;
    }
  }
  return {MajorityResult::Kind::Unresolved, {}, "round cap reached",
          {p1.slices(), p2.slices(), p3.slices()}};
}

}  // namespace prw

// SPDX-License-Identifier: Apache-2.0
#ifndef PRW_MODEL_HPP
#define PRW_MODEL_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "prw/oracle.hpp"
#include "prw/term.hpp"

namespace prw {

/// Shared step budget. Models draw from it during application; an exhausted
/// budget surfaces as EvalOutcome::FuelExhausted, kept distinct from definite
/// undefinedness so the pca laws are only judged on decided outcomes.
struct Fuel {
  long long left = 100000;
  long long limit = 100000;
  explicit Fuel(long long n = 100000) : left(n), limit(n) {}
  long long used() const { return limit - left; }
};

struct EvalOutcome {
  enum class Kind { Value, Undefined, FuelExhausted };
  Kind kind;
  std::string value;      // carrier element text when kind == Value
  long long steps = 0;    // fuel consumed so far when exhausted

  static EvalOutcome val(std::string v) { return {Kind::Value, std::move(v), 0}; }
  static EvalOutcome undefined() { return {Kind::Undefined, {}, 0}; }
  static EvalOutcome fuel(long long steps) { return {Kind::FuelExhausted, {}, steps}; }
  bool is_value() const { return kind == Kind::Value; }
};

/// A parameterized partial combinatory algebra: carrier and parameter codecs
/// plus fuel-bounded partial application. Elements travel as canonical text
/// at the boundaries; the Val form is the model's own representation, which
/// evaluation threads through without re-encoding.
class PpcaModel {
public:
  struct Val {
    std::shared_ptr<const void> h;
    bool ok() const { return h != nullptr; }
  };

  struct AppOutcome {
    EvalOutcome::Kind kind;
    Val value;
  };

  virtual ~PpcaModel() = default;
  virtual std::string name() const = 0;

  virtual Val k_val() const = 0;
  virtual Val s_val() const = 0;
  std::string k() const { return to_text(k_val()); }
  std::string s() const { return to_text(s_val()); }

  /// All parameters of the model, canonical text form.
  virtual std::vector<std::string> params() const = 0;

  virtual std::optional<Val> from_text(const std::string& text) const = 0;
  virtual std::string to_text(const Val& v) const = 0;
  virtual bool val_eq(const Val& a, const Val& b) const = 0;
  virtual std::optional<std::string> canon_param(const std::string& text) const = 0;

  std::optional<std::string> canon_elem(const std::string& text) const {
    auto v = from_text(text);
    if (!v) return std::nullopt;
    return to_text(*v);
  }

  virtual AppOutcome apply_val(const std::string& param, const Val& a, const Val& b,
                               Fuel& fuel) const = 0;

  EvalOutcome apply(const std::string& param, const std::string& a,
                    const std::string& b, Fuel& fuel) const;
};

/// The closed-term S/K model: carrier is applicative normal forms over K, S
/// and inert atoms; application normalizes (a b) leftmost-outermost. The
/// parameter set is the singleton ".".
std::unique_ptr<PpcaModel> term_model();

/// The oracle-machine model: carrier is N (program codes as decimal text),
/// parameters are oracles, application runs the coded machine.
std::unique_ptr<PpcaModel> oracle_model(std::vector<Oracle> oracles,
                                        long long default_fuel = 100000);

/// p | e evaluated with the recursive clauses: constants are themselves,
/// applications evaluate left then right then apply, all sharing one budget.
/// `e` must be closed.
EvalOutcome eval_at(const PpcaModel& model, const std::string& param,
                    const Expr& e, Fuel& fuel);
PpcaModel::AppOutcome eval_at_val(const PpcaModel& model, const std::string& param,
                                  const Expr& e, Fuel& fuel);

struct UniformResult {
  enum class Verdict { Uniform, NotUniform, Inconclusive };
  Verdict verdict;
  std::string value;    // the common value [[e]] when uniform
  std::string detail;   // offending parameters when not
};

/// Checks p | e agree across the sampled parameters; each sample gets a
/// fresh copy of the budget.
UniformResult is_uniform(const PpcaModel& model, const Expr& e,
                         const std::vector<std::string>& param_samples,
                         long long fuel_per_sample);

}  // namespace prw

#endif

// SPDX-License-Identifier: Apache-2.0
#ifndef PRW_KIT_HPP
#define PRW_KIT_HPP

#include <map>
#include <string>
#include <vector>

#include "prw/model.hpp"
#include "prw/term.hpp"

namespace prw::kit {

/// The standard programming-kit expressions, all closed and built from K/S
/// by bracket abstraction: id, pair, fst, snd, if, true, false, succ,
/// iszero, pred, Y, Z, primrec.
const Expr& expr(const std::string& name);
std::vector<std::string> names();

/// Curry numeral expressions: numeral(0) = S K K,
/// numeral(n+1) = pair false numeral(n).
Expr numeral_expr(unsigned n);

/// Resolver for the CLI syntax `kit:pair`, `kit:numeral:7`.
Expr resolve_name(const std::string& token);

/// Compile-only showcase terms: the partial fixed-point realizer built on Z
/// and the identity realizer. They compile and are uniform; their meaning is
/// internal to the topos, so no semantic test applies.
std::map<std::string, Expr> showcase_terms();

/// Kit constants evaluated to carrier elements in one model, with uniformity
/// checked across the model's parameters. Values are cached in the model's
/// own representation; text is derived on demand.
class KitTable {
public:
  explicit KitTable(const PpcaModel& model, long long fuel_per_eval = 200000);

  const PpcaModel& model() const { return model_; }

  /// Uniform value of a kit constant ("pair", "succ", ...).
  PpcaModel::Val value_val(const std::string& name);
  const std::string& value(const std::string& name);

  /// Value of the n-th Curry numeral, computed incrementally.
  PpcaModel::Val numeral_val(unsigned n);
  const std::string& numeral_value(unsigned n);

  long long fuel_per_eval() const { return fuel_; }

private:
  const PpcaModel& model_;
  long long fuel_;
  std::map<std::string, PpcaModel::Val> vals_;
  std::map<std::string, std::string> texts_;
  std::vector<PpcaModel::Val> numeral_vals_;
  std::vector<std::string> numeral_texts_;
};

/// primrec a f n-bar evaluated in the model; n is given as a number and
/// converted to its numeral.
EvalOutcome primrec_apply(KitTable& kit, const std::string& param,
                          const std::string& a, const std::string& f,
                          unsigned n, long long fuel);

/// Searches for the least n with f . numeral(n) = numeral(1), probing
/// n = 0, 1, 2, ... against a single shared fuel pool. Returns the witness
/// as a numeral; FuelExhausted when the pool drains first; Undefined when
/// f strays outside {numeral(0), numeral(1)} or rejects.
EvalOutcome markov_search(KitTable& kit, const std::string& param,
                          const std::string& f, long long fuel);

/// Number/numeral converters for the oracle model (combNum / combCur):
/// num . numeral(n) = n and cur . n = numeral(n). The num closure embeds the
/// primitive recursor and is large, so it travels as a model value.
struct NumeralConverters {
  PpcaModel::Val num;
  PpcaModel::Val cur;
};
NumeralConverters numeral_converters(KitTable& kit);

}  // namespace prw::kit

#endif

// SPDX-License-Identifier: Apache-2.0
#ifndef PRW_FORMULA_HPP
#define PRW_FORMULA_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "prw/tripos.hpp"

namespace prw::tripos {

/// Formulas over typed variables ranging over finite universes, with atoms
/// naming tripos predicates. Concrete syntax is s-expressions:
///   top | bot | (and F G) | (or F G) | (imp F G) | (not F)
///   | (forall x X F) | (exists x X F) | (atom phi x y ...)
struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  enum class Kind { Top, Bot, And, Or, Imp, Not, Forall, Exists, Atom };
  Kind kind;
  FormulaPtr l, r;
  std::string var, uni;            // quantifier binder and its universe
  std::string atom;                // atom name
  std::vector<std::string> args;   // atom arguments (variables)
};

FormulaPtr parse_formula(const std::string& text);  // throws ParseError

struct AtomDef {
  std::vector<std::string> arg_universes;
  TriposPredicate pred;  // over the product universe of the arguments
};

struct FormulaEnv {
  std::map<std::string, std::vector<std::string>> universes;
  std::map<std::string, AtomDef> atoms;
};

/// Points of product universes are comma-joined label tuples; the empty
/// context has the single point "()".
std::vector<std::string> product_universe(const FormulaEnv& env,
                                          const std::vector<std::pair<std::string, std::string>>& vars);

/// Interprets the formula as a tripos predicate over the product of the
/// given typed context variables. Connectives become Heyting operations,
/// quantifiers quantification along projections.
TriposPredicate interpret(Ctx& ctx, const FormulaEnv& env, const FormulaPtr& f,
                          const std::vector<std::pair<std::string, std::string>>& vars);

struct ValidityResult {
  enum class Kind { Valid, Invalid, Inconclusive };
  Kind kind;
  std::string witness;
  std::string detail;
};

/// A formula is valid when a single element realizes it uniformly: some a
/// with a . b realizing the interpretation at every point, every pooled b,
/// every sampled parameter. Candidates are tried in code order (shortlex).
ValidityResult is_valid(Ctx& ctx, const FormulaEnv& env, const FormulaPtr& f,
                        const std::vector<std::pair<std::string, std::string>>& vars = {});

}  // namespace prw::tripos

#endif

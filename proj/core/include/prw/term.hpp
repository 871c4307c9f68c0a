// SPDX-License-Identifier: Apache-2.0
#ifndef PRW_TERM_HPP
#define PRW_TERM_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace prw {

struct CombExpr;
using Expr = std::shared_ptr<const CombExpr>;

/// Applicative expressions over a ppca: variables, the basic combinators
/// K and S, carrier literals, and formal application. `lam` in the concrete
/// syntax is parse-time sugar eliminated by abstract().
struct CombExpr {
  enum class Kind { Var, K, S, Lit, App };
  Kind kind;
  std::string name;  // Var name or Lit carrier text
  Expr l, r;
};

Expr ce_var(const std::string& name);
Expr ce_k();
Expr ce_s();
Expr ce_lit(const std::string& carrier_text);
Expr ce_app(Expr l, Expr r);
Expr ce_app(std::initializer_list<Expr> chain);  // left-associated

bool expr_eq(const Expr& a, const Expr& b);
bool is_closed(const Expr& e);
int expr_depth(const Expr& e);
void free_vars(const Expr& e, std::vector<std::string>& out);

/// Canonical print: application by juxtaposition, left associative,
/// parentheses only where needed; literals backtick-quoted. Parsing the
/// output yields an equal expression.
std::string print_expr(const Expr& e);

struct ParseError {
  std::string message;
  int line = 1, col = 1;
};

/// Grammar:  expr  ::= item+                  (left-assoc application)
///           item  ::= K | S | ident | `lit | `(raw text) | (expr)
///                   | (lam ident expr)
/// `lam` compiles to the bracket abstraction immediately.
/// `resolve` (optional) maps names like "kit:pair" to expressions.
Expr parse_expr(const std::string& text,
                const std::function<Expr(const std::string&)>* resolve = nullptr);
// Throws ParseError on malformed input.

/// Substitution of carrier elements for variables; unbound variables pass
/// through unchanged.
Expr substitute(const Expr& e,
                const std::vector<std::pair<std::string, std::string>>& bindings);

/// Bracket abstraction <x>e:
///   <x>x = S K K,  <x>y = K y,  <x>a = K a,  <x>(e1 e2) = S (<x>e1) (<x>e2).
/// The result contains no occurrence of x.
Expr abstract(const std::string& var, const Expr& e);

}  // namespace prw

#endif

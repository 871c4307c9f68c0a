// SPDX-License-Identifier: Apache-2.0
#include "prw/term.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace prw {

namespace {
Expr mk(CombExpr::Kind k, std::string name = {}, Expr l = nullptr, Expr r = nullptr) {
  auto e = std::make_shared<CombExpr>();
  e->kind = k;
  e->name = std::move(name);
  e->l = std::move(l);
  e->r = std::move(r);
  return e;
}
}  // namespace

Expr ce_var(const std::string& name) { return mk(CombExpr::Kind::Var, name); }
Expr ce_k() { static Expr k = mk(CombExpr::Kind::K); return k; }
Expr ce_s() { static Expr s = mk(CombExpr::Kind::S); return s; }
Expr ce_lit(const std::string& t) { return mk(CombExpr::Kind::Lit, t); }
Expr ce_app(Expr l, Expr r) { return mk(CombExpr::Kind::App, {}, std::move(l), std::move(r)); }

Expr ce_app(std::initializer_list<Expr> chain) {
  Expr acc = nullptr;
  for (const Expr& e : chain) acc = acc ? ce_app(acc, e) : e;
  if (!acc) throw std::invalid_argument("ce_app: empty chain");
  return acc;
}

bool expr_eq(const Expr& a, const Expr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case CombExpr::Kind::Var:
    case CombExpr::Kind::Lit:
      return a->name == b->name;
    case CombExpr::Kind::K:
    case CombExpr::Kind::S:
      return true;
    case CombExpr::Kind::App:
      return expr_eq(a->l, b->l) && expr_eq(a->r, b->r);
  }
  return false;
}

bool is_closed(const Expr& e) {
  switch (e->kind) {
    case CombExpr::Kind::Var: return false;
    case CombExpr::Kind::App: return is_closed(e->l) && is_closed(e->r);
    default: return true;
  }
}

int expr_depth(const Expr& e) {
  if (e->kind == CombExpr::Kind::App)
    return 1 + std::max(expr_depth(e->l), expr_depth(e->r));
  return 0;
}

void free_vars(const Expr& e, std::vector<std::string>& out) {
  switch (e->kind) {
    case CombExpr::Kind::Var:
      if (std::find(out.begin(), out.end(), e->name) == out.end()) out.push_back(e->name);
      break;
    case CombExpr::Kind::App:
      free_vars(e->l, out);
      free_vars(e->r, out);
      break;
    default: break;
  }
}

namespace {

bool lit_is_token(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c == ' ' || c == '(' || c == ')' || c == '`') return false;
  return true;
}

void print_rec(const Expr& e, bool right_child, std::string& out) {
  switch (e->kind) {
    case CombExpr::Kind::Var: out += e->name; return;
    case CombExpr::Kind::K: out += 'K'; return;
    case CombExpr::Kind::S: out += 'S'; return;
    case CombExpr::Kind::Lit:
      out += '`';
      if (lit_is_token(e->name)) {
        out += e->name;
      } else {
        out += '(';
        out += e->name;
        out += ')';
      }
      return;
    case CombExpr::Kind::App: {
      bool parens = right_child;
      if (parens) out += '(';
      print_rec(e->l, false, out);
      out += ' ';
      print_rec(e->r, true, out);
      if (parens) out += ')';
      return;
    }
  }
}

}  // namespace

std::string print_expr(const Expr& e) {
  std::string out;
  print_rec(e, false, out);
  return out;
}

namespace {

struct Parser {
  const std::string& s;
  const std::function<Expr(const std::string&)>* resolve;
  size_t i = 0;
  int line = 1, col = 1;

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError{msg, line, col};
  }

  void advance() {
    if (s[i] == '\n') { ++line; col = 1; } else { ++col; }
    ++i;
  }

  void skip_ws() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n' || s[i] == '\r'))
      advance();
  }

  bool at_end() { skip_ws(); return i >= s.size(); }

  char peek() { return s[i]; }

  static bool ident_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_' || c == ':' || c == '-' || c == '/';
  }

  std::string read_ident() {
    std::string w;
    while (i < s.size() && ident_char(s[i])) { w += s[i]; advance(); }
    if (w.empty()) fail("expected identifier");
    return w;
  }

  Expr parse_item() {
    skip_ws();
    if (i >= s.size()) fail("unexpected end of input");
    char c = peek();
    if (c == '(') {
      advance();
      skip_ws();
      // (lam x y ... body)
      size_t save_i = i; int save_line = line, save_col = col;
      if (i < s.size() && ident_char(s[i])) {
        std::string w = read_ident();
        if (w == "lam") {
          skip_ws();
          if (i >= s.size() || !ident_char(s[i])) fail("lam needs a variable");
          std::string v = read_ident();
          if (v == "K" || v == "S") fail("lam variable cannot be K or S");
          Expr body = parse_seq();
          skip_ws();
          if (i >= s.size() || s[i] != ')') fail("expected ')'");
          advance();
          return abstract(v, body);
        }
        // not lam: rewind
        i = save_i; line = save_line; col = save_col;
      }
      Expr e = parse_seq();
      skip_ws();
      if (i >= s.size() || s[i] != ')') fail("expected ')'");
      advance();
      return e;
    }
    if (c == '`') {
      advance();
      if (i >= s.size()) fail("dangling '`'");
      if (s[i] == '(') {
        advance();
        std::string raw;
        int depth = 1;
        while (i < s.size()) {
          if (s[i] == '(') ++depth;
          if (s[i] == ')') {
            --depth;
            if (depth == 0) break;
          }
          raw += s[i];
          advance();
        }
        if (depth != 0) fail("unterminated `(...) literal");
        advance();  // closing ')'
        return ce_lit(raw);
      }
      std::string w;
      while (i < s.size() && ident_char(s[i])) { w += s[i]; advance(); }
      if (w.empty()) fail("empty literal after '`'");
      return ce_lit(w);
    }
    if (ident_char(c)) {
      std::string w = read_ident();
      if (w == "K") return ce_k();
      if (w == "S") return ce_s();
      if (resolve && *resolve) {
        if (Expr r = (*resolve)(w)) return r;
      }
      if (w.rfind("kit:", 0) == 0) fail("unknown kit constant: " + w);
      return ce_var(w);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  Expr parse_seq() {
    Expr acc = parse_item();
    for (;;) {
      skip_ws();
      if (i >= s.size() || s[i] == ')') break;
      acc = ce_app(acc, parse_item());
    }
    return acc;
  }
};

}  // namespace

Expr parse_expr(const std::string& text,
                const std::function<Expr(const std::string&)>* resolve) {
  Parser p{text, resolve};
  Expr e = p.parse_seq();
  if (!p.at_end()) p.fail("trailing input");
  return e;
}

Expr substitute(const Expr& e,
                const std::vector<std::pair<std::string, std::string>>& bindings) {
  switch (e->kind) {
    case CombExpr::Kind::Var:
      for (const auto& [v, a] : bindings)
        if (v == e->name) return ce_lit(a);
      return e;
    case CombExpr::Kind::App: {
      Expr l = substitute(e->l, bindings);
      Expr r = substitute(e->r, bindings);
      if (l == e->l && r == e->r) return e;
      return ce_app(l, r);
    }
    default:
      return e;
  }
}

namespace {

// shared subterms compile once; the result is the same tree, shared
Expr abstract_memo(const std::string& var, const Expr& e,
                   std::map<const CombExpr*, Expr>& memo) {
  auto it = memo.find(e.get());
  if (it != memo.end()) return it->second;
  Expr out;
  switch (e->kind) {
    case CombExpr::Kind::Var:
      out = (e->name == var) ? ce_app(ce_app(ce_s(), ce_k()), ce_k())
                             : ce_app(ce_k(), e);
      break;
    case CombExpr::Kind::App:
      out = ce_app(ce_app(ce_s(), abstract_memo(var, e->l, memo)),
                   abstract_memo(var, e->r, memo));
      break;
    default:
      out = ce_app(ce_k(), e);
      break;
  }
  memo.emplace(e.get(), out);
  return out;
}

}  // namespace

Expr abstract(const std::string& var, const Expr& e) {
  std::map<const CombExpr*, Expr> memo;
  return abstract_memo(var, e, memo);
}

}  // namespace prw

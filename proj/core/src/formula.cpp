// SPDX-License-Identifier: Apache-2.0
#include "prw/formula.hpp"

#include <algorithm>
#include <stdexcept>

#include "prw/term.hpp"

namespace prw::tripos {

namespace {

FormulaPtr mk(Formula f) { return std::make_shared<Formula>(std::move(f)); }

struct SToken {
  enum class T { LPar, RPar, Sym } t;
  std::string s;
};

std::vector<SToken> slex(const std::string& text) {
  std::vector<SToken> out;
  size_t i = 0;
  int line = 1, col = 1;
  auto adv = [&](char c) { if (c == '\n') { ++line; col = 1; } else ++col; ++i; };
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') { adv(c); continue; }
    if (c == ';') {  // comment to end of line
      while (i < text.size() && text[i] != '\n') adv(text[i]);
      continue;
    }
    if (c == '(') { out.push_back({SToken::T::LPar, "("}); adv(c); continue; }
    if (c == ')') { out.push_back({SToken::T::RPar, ")"}); adv(c); continue; }
    std::string w;
    while (i < text.size() && !strchr(" \t\n\r()", text[i])) { w += text[i]; adv(text[i]); }
    out.push_back({SToken::T::Sym, w});
  }
  return out;
}

FormulaPtr parse_form(const std::vector<SToken>& tk, size_t& i);

std::vector<FormulaPtr> parse_args_until_rpar(const std::vector<SToken>& tk, size_t& i,
                                              size_t want) {
  std::vector<FormulaPtr> out;
  while (i < tk.size() && tk[i].t != SToken::T::RPar) out.push_back(parse_form(tk, i));
  if (i >= tk.size()) throw ParseError{"unterminated form", 1, 1};
  ++i;  // consume ')'
  if (want && out.size() != want)
    throw ParseError{"wrong number of subformulas", 1, 1};
  return out;
}

FormulaPtr parse_form(const std::vector<SToken>& tk, size_t& i) {
  if (i >= tk.size()) throw ParseError{"unexpected end of formula", 1, 1};
  if (tk[i].t == SToken::T::Sym) {
    std::string w = tk[i].s;
    ++i;
    if (w == "top") return mk({Formula::Kind::Top, {}, {}, {}, {}, {}, {}});
    if (w == "bot") return mk({Formula::Kind::Bot, {}, {}, {}, {}, {}, {}});
    throw ParseError{"unexpected symbol '" + w + "' (formulas are parenthesized)", 1, 1};
  }
  if (tk[i].t == SToken::T::RPar) throw ParseError{"unexpected ')'", 1, 1};
  ++i;  // '('
  if (i >= tk.size() || tk[i].t != SToken::T::Sym)
    throw ParseError{"expected a form head", 1, 1};
  std::string head = tk[i].s;
  ++i;
  auto sym = [&]() {
    if (i >= tk.size() || tk[i].t != SToken::T::Sym)
      throw ParseError{"expected a symbol in (" + head + " ...)", 1, 1};
    return tk[i++].s;
  };
  if (head == "top" || head == "bot") {
    parse_args_until_rpar(tk, i, 0);
    return mk({head == "top" ? Formula::Kind::Top : Formula::Kind::Bot,
               {}, {}, {}, {}, {}, {}});
  }
  if (head == "and" || head == "or" || head == "imp") {
    auto args = parse_args_until_rpar(tk, i, 2);
    Formula::Kind k = head == "and"  ? Formula::Kind::And
                      : head == "or" ? Formula::Kind::Or
                                     : Formula::Kind::Imp;
    return mk({k, args[0], args[1], {}, {}, {}, {}});
  }
  if (head == "not") {
    auto args = parse_args_until_rpar(tk, i, 1);
    return mk({Formula::Kind::Not, args[0], {}, {}, {}, {}, {}});
  }
  if (head == "forall" || head == "exists") {
    std::string v = sym(), u = sym();
    auto args = parse_args_until_rpar(tk, i, 1);
    Formula::Kind k = head == "forall" ? Formula::Kind::Forall : Formula::Kind::Exists;
    return mk({k, args[0], {}, v, u, {}, {}});
  }
  if (head == "atom") {
    std::string name = sym();
    std::vector<std::string> args;
    while (i < tk.size() && tk[i].t == SToken::T::Sym) args.push_back(tk[i++].s);
    if (i >= tk.size() || tk[i].t != SToken::T::RPar)
      throw ParseError{"expected ')' after atom arguments", 1, 1};
    ++i;
    return mk({Formula::Kind::Atom, {}, {}, {}, {}, name, args});
  }
  throw ParseError{"unknown form head '" + head + "'", 1, 1};
}

std::string join_tuple(const std::vector<std::string>& parts) {
  if (parts.empty()) return "()";
  std::string out = parts[0];
  for (size_t i = 1; i < parts.size(); ++i) out += "," + parts[i];
  return out;
}

std::vector<std::string> split_tuple(const std::string& s, size_t arity) {
  if (arity == 0) return {};
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') { out.push_back(cur); cur.clear(); } else cur += c;
  }
  out.push_back(cur);
  if (out.size() != arity) throw std::logic_error("tuple arity mismatch");
  return out;
}

void tuples_rec(const FormulaEnv& env,
                const std::vector<std::pair<std::string, std::string>>& vars, size_t i,
                std::vector<std::string>& cur, std::vector<std::string>& out) {
  if (i == vars.size()) {
    out.push_back(join_tuple(cur));
    return;
  }
  auto it = env.universes.find(vars[i].second);
  if (it == env.universes.end())
    throw std::invalid_argument("unknown universe " + vars[i].second);
  for (const auto& lbl : it->second) {
    cur.push_back(lbl);
    tuples_rec(env, vars, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

FormulaPtr parse_formula(const std::string& text) {
  auto tk = slex(text);
  size_t i = 0;
  FormulaPtr f = parse_form(tk, i);
  if (i != tk.size()) throw ParseError{"trailing tokens after formula", 1, 1};
  return f;
}

std::vector<std::string> product_universe(
    const FormulaEnv& env, const std::vector<std::pair<std::string, std::string>>& vars) {
  std::vector<std::string> out, cur;
  tuples_rec(env, vars, 0, cur, out);
  return out;
}

TriposPredicate interpret(Ctx& ctx, const FormulaEnv& env, const FormulaPtr& f,
                          const std::vector<std::pair<std::string, std::string>>& vars) {
  std::vector<std::string> universe = product_universe(env, vars);
  switch (f->kind) {
    case Formula::Kind::Top: return h_top(universe);
    case Formula::Kind::Bot: return h_bot(universe);
    case Formula::Kind::And:
      return h_and(ctx, interpret(ctx, env, f->l, vars), interpret(ctx, env, f->r, vars));
    case Formula::Kind::Or:
      return h_or(ctx, interpret(ctx, env, f->l, vars), interpret(ctx, env, f->r, vars));
    case Formula::Kind::Imp:
      return h_imp(ctx, interpret(ctx, env, f->l, vars), interpret(ctx, env, f->r, vars));
    case Formula::Kind::Not:
      return h_neg(ctx, interpret(ctx, env, f->l, vars));
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      auto inner_vars = vars;
      inner_vars.emplace_back(f->var, f->uni);
      TriposPredicate inner = interpret(ctx, env, f->l, inner_vars);
      FiniteMap proj;
      proj.dom = product_universe(env, inner_vars);
      proj.cod = universe;
      for (const auto& t : proj.dom) {
        auto parts = split_tuple(t, inner_vars.size());
        parts.pop_back();
        proj.fn[t] = join_tuple(parts);
      }
      return f->kind == Formula::Kind::Forall ? forall_along(ctx, proj, inner)
                                              : exists_along(ctx, proj, inner);
    }
    case Formula::Kind::Atom: {
      auto it = env.atoms.find(f->atom);
      if (it == env.atoms.end())
        throw std::invalid_argument("unknown atom " + f->atom);
      const AtomDef& def = it->second;
      if (def.arg_universes.size() != f->args.size())
        throw std::invalid_argument("atom " + f->atom + " arity mismatch");
      // the reindexing map: context tuple -> atom argument tuple
      std::vector<size_t> idx;
      for (size_t k = 0; k < f->args.size(); ++k) {
        bool found = false;
        for (size_t j = 0; j < vars.size(); ++j) {
          if (vars[j].first == f->args[k]) {
            if (vars[j].second != def.arg_universes[k])
              throw std::invalid_argument("atom " + f->atom + " argument " +
                                          f->args[k] + " has the wrong universe");
            idx.push_back(j);
            found = true;
            break;
          }
        }
        if (!found)
          throw std::invalid_argument("unbound variable " + f->args[k] + " in atom");
      }
      FiniteMap m;
      m.dom = universe;
      std::vector<std::pair<std::string, std::string>> atom_vars;
      for (size_t k = 0; k < f->args.size(); ++k)
        atom_vars.emplace_back("_" + std::to_string(k), def.arg_universes[k]);
      m.cod = product_universe(env, atom_vars);
      for (const auto& t : universe) {
        auto parts = split_tuple(t, vars.size());
        std::vector<std::string> sel;
        for (size_t k : idx) sel.push_back(parts[k]);
        m.fn[t] = join_tuple(sel);
      }
      return reindex(def.pred, m);
    }
  }
  throw std::logic_error("interpret: unreachable");
}

ValidityResult is_valid(Ctx& ctx, const FormulaEnv& env, const FormulaPtr& f,
                        const std::vector<std::pair<std::string, std::string>>& vars) {
  TriposPredicate interp = interpret(ctx, env, f, vars);

  // top predicate with the pool as enumerable support
  TriposPredicate top = make_predicate(interp.universe);
  for (const auto& x : top.universe) top.set(x, RSet::all(ctx.pool));

  // candidate witnesses in code order (shortlex on canonical element text):
  // the pool, the atoms' realizers, and their constant liftings K x and
  // K (K x), which witness formulas whose realizers ignore their inputs
  std::vector<std::string> cands = ctx.pool;
  std::vector<std::string> seeds;
  for (const auto& [name, def] : env.atoms)
    for (const auto& x : def.pred.universe)
      for (const auto& b : def.pred(x).support()) seeds.push_back(b);
  seeds.push_back(ctx.kit->value("id"));
  seeds.push_back(ctx.kit->value("true"));
  seeds.push_back(ctx.kit->value("false"));
  const std::string p0 = ctx.params.front();
  for (const auto& s : seeds) {
    cands.push_back(s);
    EvalOutcome k1 = ctx.apply1(p0, ctx.model().k(), s);
    if (!k1.is_value()) continue;
    cands.push_back(k1.value);
    EvalOutcome k2 = ctx.apply1(p0, ctx.model().k(), k1.value);
    if (k2.is_value()) cands.push_back(k2.value);
  }
  std::sort(cands.begin(), cands.end(), [](const std::string& a, const std::string& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

  bool any_unknown = false;
  std::string unk;
  for (const auto& a : cands) {
    EntailmentCert cert = check_entailment(ctx, top, interp, a);
    if (cert.verdict == EntailmentCert::Verdict::Verified)
      return {ValidityResult::Kind::Valid, a, {}};
    if (cert.verdict == EntailmentCert::Verdict::Inconclusive) {
      any_unknown = true;
      unk = cert.detail;
    }
  }
  if (any_unknown) return {ValidityResult::Kind::Inconclusive, {}, unk};
  return {ValidityResult::Kind::Invalid, {}, "no candidate witness realizes the formula"};
}

}  // namespace prw::tripos

// SPDX-License-Identifier: Apache-2.0
#include "prw/kit.hpp"

#include <stdexcept>

#include "prw/machine.hpp"

namespace prw::kit {

namespace {

Expr lam(const std::string& v, const Expr& body) { return abstract(v, body); }
Expr v(const std::string& n) { return ce_var(n); }
Expr a(Expr x, Expr y) { return ce_app(std::move(x), std::move(y)); }
Expr a3(Expr x, Expr y, Expr z) { return a(a(std::move(x), std::move(y)), std::move(z)); }

std::map<std::string, Expr> build_kit() {
  std::map<std::string, Expr> k;
  k["id"] = lam("x", v("x"));
  k["pair"] = lam("x", lam("y", lam("z", a3(v("z"), v("x"), v("y")))));
  k["true"] = lam("x", lam("y", v("x")));
  k["false"] = lam("x", lam("y", v("y")));
  k["fst"] = lam("z", a(v("z"), k["true"]));
  k["snd"] = lam("z", a(v("z"), k["false"]));
  k["if"] = lam("x", v("x"));
  k["succ"] = lam("x", a3(k["pair"], k["false"], v("x")));
  k["iszero"] = k["fst"];
  Expr zero = a3(ce_s(), ce_k(), ce_k());
  k["pred"] = lam("x", a(a3(k["if"], a(k["iszero"], v("x")), zero), a(k["snd"], v("x"))));
  Expr w = lam("x", lam("y", a(v("y"), a3(v("x"), v("x"), v("y")))));
  k["Y"] = a(w, w);
  Expr xx = lam("x", lam("y", lam("z", a(a(v("y"), a3(v("x"), v("x"), v("y"))), v("z")))));
  k["Z"] = a(xx, xx);
  // R r x f m = if (iszero m) (K x) (<y> f (pred m) (r x f (pred m) id));
  // the inner abstraction defers the recursive call until after the branch.
  Expr rec_call = a(a(a(a(v("r"), v("x")), v("f")), a(k["pred"], v("m"))), k["id"]);
  Expr else_arm = lam("y", a(a(v("f"), a(k["pred"], v("m"))), rec_call));
  Expr r_body = a(a3(k["if"], a(k["iszero"], v("m")), a(ce_k(), v("x"))), else_arm);
  Expr big_r = lam("r", lam("x", lam("f", lam("m", r_body))));
  k["primrec"] =
      lam("x", lam("f", lam("m", a(a(a(a(a(k["Z"], big_r), v("x")), v("f")), v("m")), k["id"]))));
  return k;
}

const std::map<std::string, Expr>& kit_map() {
  static std::map<std::string, Expr> k = build_kit();
  return k;
}

}  // namespace

const Expr& expr(const std::string& name) {
  auto it = kit_map().find(name);
  if (it == kit_map().end()) throw std::invalid_argument("unknown kit constant: " + name);
  return it->second;
}

std::vector<std::string> names() {
  std::vector<std::string> out;
  for (const auto& [n, e] : kit_map()) out.push_back(n);
  return out;
}

Expr numeral_expr(unsigned n) {
  Expr acc = a3(ce_s(), ce_k(), ce_k());
  for (unsigned i = 0; i < n; ++i) acc = a3(expr("pair"), expr("false"), acc);
  return acc;
}

Expr resolve_name(const std::string& token) {
  if (token.rfind("kit:", 0) != 0) return nullptr;
  std::string rest = token.substr(4);
  if (rest.rfind("numeral:", 0) == 0) {
    return numeral_expr(unsigned(std::stoul(rest.substr(8))));
  }
  auto it = kit_map().find(rest);
  if (it == kit_map().end()) return nullptr;
  return it->second;
}

std::map<std::string, Expr> showcase_terms() {
  std::map<std::string, Expr> out;
  // Z (<s><g> g (pair (<k> fst (s g) k) (<k> snd (s g) k)))
  Expr sg = a(v("s"), v("g"));
  Expr left = lam("k", a(a(expr("fst"), sg), v("k")));
  Expr right = lam("k", a(a(expr("snd"), sg), v("k")));
  Expr body = a(v("g"), a3(expr("pair"), left, right));
  out["fixpoint_pair"] = a(expr("Z"), lam("s", lam("g", body)));
  out["enum_ident"] = lam("m", v("m"));
  return out;
}

KitTable::KitTable(const PpcaModel& model, long long fuel_per_eval)
    : model_(model), fuel_(fuel_per_eval) {}

PpcaModel::Val KitTable::value_val(const std::string& name) {
  auto it = vals_.find(name);
  if (it != vals_.end()) return it->second;
  // kit entries are closed abstractions over K and S only, hence uniform;
  // one parameter determines the value (the invariant itself is exercised
  // by is_uniform in the test suite)
  Fuel fuel(fuel_);
  PpcaModel::AppOutcome out =
      eval_at_val(model_, model_.params().front(), expr(name), fuel);
  if (out.kind != EvalOutcome::Kind::Value)
    throw std::runtime_error("kit constant " + name + " failed to evaluate");
  vals_[name] = out.value;
  return out.value;
}

const std::string& KitTable::value(const std::string& name) {
  auto it = texts_.find(name);
  if (it != texts_.end()) return it->second;
  return texts_.emplace(name, model_.to_text(value_val(name))).first->second;
}

PpcaModel::Val KitTable::numeral_val(unsigned n) {
  if (numeral_vals_.empty()) {
    Fuel fuel(fuel_);
    PpcaModel::AppOutcome out =
        eval_at_val(model_, model_.params().front(), numeral_expr(0), fuel);
    if (out.kind != EvalOutcome::Kind::Value)
      throw std::runtime_error("numeral 0 failed to evaluate");
    numeral_vals_.push_back(out.value);
  }
  PpcaModel::Val pairv = value_val("pair");
  PpcaModel::Val falsev = value_val("false");
  const std::string p0 = model_.params().front();
  while (numeral_vals_.size() <= n) {
    Fuel fuel(fuel_);
    PpcaModel::AppOutcome c1 = model_.apply_val(p0, pairv, falsev, fuel);
    if (c1.kind != EvalOutcome::Kind::Value)
      throw std::runtime_error("numeral chain: pair false failed");
    PpcaModel::AppOutcome c2 = model_.apply_val(p0, c1.value, numeral_vals_.back(), fuel);
    if (c2.kind != EvalOutcome::Kind::Value)
      throw std::runtime_error("numeral chain failed");
    numeral_vals_.push_back(c2.value);
  }
  return numeral_vals_[n];
}

const std::string& KitTable::numeral_value(unsigned n) {
  while (numeral_texts_.size() <= n) {
    unsigned i = unsigned(numeral_texts_.size());
    numeral_texts_.push_back(model_.to_text(numeral_val(i)));
  }
  return numeral_texts_[n];
}

EvalOutcome primrec_apply(KitTable& kit, const std::string& param,
                          const std::string& a_, const std::string& f,
                          unsigned n, long long fuel) {
  const PpcaModel& m = kit.model();
  auto av = m.from_text(a_);
  auto fv = m.from_text(f);
  if (!av || !fv) throw std::invalid_argument("primrec_apply: bad element");
  Fuel fu(fuel);
  PpcaModel::Val cur = kit.value_val("primrec");
  PpcaModel::AppOutcome out{EvalOutcome::Kind::Value, cur};
  for (const PpcaModel::Val& arg : {*av, *fv, kit.numeral_val(n)}) {
    out = m.apply_val(param, out.value, arg, fu);
    if (out.kind != EvalOutcome::Kind::Value) break;
  }
  switch (out.kind) {
    case EvalOutcome::Kind::Value: return EvalOutcome::val(m.to_text(out.value));
    case EvalOutcome::Kind::Undefined: return EvalOutcome::undefined();
    case EvalOutcome::Kind::FuelExhausted: return EvalOutcome::fuel(fu.used());
  }
  return EvalOutcome::undefined();
}

EvalOutcome markov_search(KitTable& kit, const std::string& param,
                          const std::string& f, long long fuel) {
  const PpcaModel& m = kit.model();
  auto fv = m.from_text(f);
  if (!fv) throw std::invalid_argument("markov_search: bad element");
  Fuel pool(fuel);
  PpcaModel::Val one = kit.numeral_val(1);
  PpcaModel::Val zero = kit.numeral_val(0);
  for (unsigned n = 0;; ++n) {
    PpcaModel::AppOutcome out = m.apply_val(param, *fv, kit.numeral_val(n), pool);
    if (out.kind == EvalOutcome::Kind::FuelExhausted) return EvalOutcome::fuel(pool.used());
    if (out.kind == EvalOutcome::Kind::Undefined) return EvalOutcome::undefined();
    if (m.val_eq(out.value, one)) return EvalOutcome::val(kit.numeral_value(n));
    if (!m.val_eq(out.value, zero)) return EvalOutcome::undefined();
  }
}

NumeralConverters numeral_converters(KitTable& kit) {
  using namespace prw::machine;
  const PpcaModel& m = kit.model();
  if (m.name() != "oracle")
    throw std::invalid_argument("numeral converters live in the oracle model");

  Nat succ_v(kit.value("succ"));
  Nat zero_v(kit.numeral_value(0));

  // num = [[ primrec 0 (K s) ]] with phi_s(n) = n + 1; built by applying the
  // evaluated kit closures, which are uniform, so one parameter determines it
  Nat s_prog = encode(t_succ(t_var()));
  const std::string p0 = m.params().front();
  Fuel fuel(kit.fuel_per_eval());
  auto ks = m.apply_val(p0, m.k_val(), *m.from_text(s_prog.get_str()), fuel);
  auto chain1 = m.apply_val(p0, kit.value_val("primrec"), *m.from_text("0"), fuel);
  if (ks.kind != EvalOutcome::Kind::Value || chain1.kind != EvalOutcome::Kind::Value)
    throw std::runtime_error("combNum construction failed");
  auto num = m.apply_val(p0, chain1.value, ks.value, fuel);
  if (num.kind != EvalOutcome::Kind::Value)
    throw std::runtime_error("combNum construction failed");

  // cur by the recursion theorem. EB on <<r,n>, dummy> runs succ.(r.(n-1));
  // C2 on <r,n> dispatches on iszero n between the zero thunk and
  // smn(EB, <r,n>); the transformer maps r to smn(C2, r).
  Nat eb = encode(t_app(t_num(succ_v),
                        t_app(t_fst(t_fst(t_var())), t_pred(t_snd(t_fst(t_var()))))));
  Nat then_thunk = encode(t_num(zero_v));
  TermPtr c2_term =
      t_app(t_app(t_app(t_iszero(t_snd(t_var())), t_num(then_thunk)),
                  t_smnp(t_num(eb), t_var())),
            t_num(0));
  Nat c2 = encode(c2_term);
  Nat t_cur = encode(t_smnp(t_num(c2), t_var()));
  Nat cur = kleene_fix(t_cur);

  auto cur_val = m.from_text(cur.get_str());
  return {num.value, *cur_val};
}

}  // namespace prw::kit

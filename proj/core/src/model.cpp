// SPDX-License-Identifier: Apache-2.0
#include "prw/model.hpp"

#include <atomic>
#include <map>
#include <stdexcept>

#include "prw/machine.hpp"

namespace prw {

EvalOutcome PpcaModel::apply(const std::string& param, const std::string& a,
                             const std::string& b, Fuel& fuel) const {
  auto va = from_text(a);
  auto vb = from_text(b);
  if (!va || !vb) throw std::invalid_argument(name() + " model: bad element");
  AppOutcome out = apply_val(param, *va, *vb, fuel);
  switch (out.kind) {
    case EvalOutcome::Kind::Value: return EvalOutcome::val(to_text(out.value));
    case EvalOutcome::Kind::Undefined: return EvalOutcome::undefined();
    case EvalOutcome::Kind::FuelExhausted: return EvalOutcome::fuel(fuel.used());
  }
  return EvalOutcome::undefined();
}

// ---------------------------------------------------------------------------
// closed-term S/K model

namespace {

struct TTerm;
using TP = std::shared_ptr<const TTerm>;

struct TTerm {
  enum class K { K, S, Atom, App };
  K k;
  std::string name;
  TP l, r;
  // memoized "already in normal form": sound because nodes are immutable
  mutable std::atomic<bool> nf{false};
};

TP tt(TTerm::K k, std::string name = {}, TP l = nullptr, TP r = nullptr) {
  auto t = std::make_shared<TTerm>();
  t->k = k;
  t->name = std::move(name);
  t->l = std::move(l);
  t->r = std::move(r);
  return t;
}

const TP& tt_k() { static TP t = tt(TTerm::K::K); return t; }
const TP& tt_s() { static TP t = tt(TTerm::K::S); return t; }

bool tt_atom_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_';
}

TP tt_parse_item(const std::string& s, size_t& i);

TP tt_parse_seq(const std::string& s, size_t& i) {
  TP acc = nullptr;
  for (;;) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    if (i >= s.size() || s[i] == ')') break;
    TP item = tt_parse_item(s, i);
    if (!item) return nullptr;
    acc = acc ? tt(TTerm::K::App, {}, acc, item) : item;
  }
  return acc;
}

TP tt_parse_item(const std::string& s, size_t& i) {
  if (s[i] == '(') {
    ++i;
    TP e = tt_parse_seq(s, i);
    if (!e || i >= s.size() || s[i] != ')') return nullptr;
    ++i;
    return e;
  }
  if (!tt_atom_char(s[i])) return nullptr;
  std::string w;
  while (i < s.size() && tt_atom_char(s[i])) w += s[i++];
  if (w == "K") return tt_k();
  if (w == "S") return tt_s();
  return tt(TTerm::K::Atom, w);
}

TP tt_parse(const std::string& s) {
  size_t i = 0;
  TP e = tt_parse_seq(s, i);
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  if (!e || i != s.size()) return nullptr;
  return e;
}

void tt_print(const TP& t, bool right_child, std::string& out) {
  switch (t->k) {
    case TTerm::K::K: out += 'K'; return;
    case TTerm::K::S: out += 'S'; return;
    case TTerm::K::Atom: out += t->name; return;
    case TTerm::K::App:
      if (right_child) out += '(';
      tt_print(t->l, false, out);
      out += ' ';
      tt_print(t->r, true, out);
      if (right_child) out += ')';
      return;
  }
}

std::string tt_str(const TP& t) {
  std::string out;
  tt_print(t, false, out);
  return out;
}

// one leftmost-outermost step; false when t is normal
bool tt_step(const TP& t, TP& out) {
  if (t->k != TTerm::K::App) return false;
  if (t->nf.load(std::memory_order_relaxed)) return false;
  const TP& l = t->l;
  if (l->k == TTerm::K::App && l->l->k == TTerm::K::K) {  // K x y -> x
    out = l->r;
    return true;
  }
  if (l->k == TTerm::K::App && l->l->k == TTerm::K::App &&
      l->l->l->k == TTerm::K::S) {  // S x y z -> (x z)(y z)
    const TP& x = l->l->r;
    const TP& y = l->r;
    const TP& z = t->r;
    out = tt(TTerm::K::App, {}, tt(TTerm::K::App, {}, x, z), tt(TTerm::K::App, {}, y, z));
    return true;
  }
  TP nl;
  if (tt_step(l, nl)) {
    out = tt(TTerm::K::App, {}, nl, t->r);
    return true;
  }
  TP nr;
  if (tt_step(t->r, nr)) {
    out = tt(TTerm::K::App, {}, l, nr);
    return true;
  }
  t->nf.store(true, std::memory_order_relaxed);
  return false;
}

bool tt_normal(const TP& t) {
  TP dummy;
  return !tt_step(t, dummy);
}

bool tt_eq(const TP& a, const TP& b) {
  if (a.get() == b.get()) return true;
  if (a->k != b->k) return false;
  switch (a->k) {
    case TTerm::K::K: case TTerm::K::S: return true;
    case TTerm::K::Atom: return a->name == b->name;
    case TTerm::K::App: return tt_eq(a->l, b->l) && tt_eq(a->r, b->r);
  }
  return false;
}

TP val_term(const PpcaModel::Val& v) {
  return std::static_pointer_cast<const TTerm>(v.h);
}

PpcaModel::Val term_val(TP t) { return {std::move(t)}; }

class TermModel final : public PpcaModel {
public:
  std::string name() const override { return "term"; }
  Val k_val() const override { return term_val(tt_k()); }
  Val s_val() const override { return term_val(tt_s()); }
  std::vector<std::string> params() const override { return {"."}; }

  std::optional<Val> from_text(const std::string& text) const override {
    TP t = tt_parse(text);
    if (!t || !tt_normal(t)) return std::nullopt;
    return term_val(std::move(t));
  }

  std::string to_text(const Val& v) const override { return tt_str(val_term(v)); }

  bool val_eq(const Val& a, const Val& b) const override {
    return tt_eq(val_term(a), val_term(b));
  }

  std::optional<std::string> canon_param(const std::string& text) const override {
    if (text == "." || text.empty()) return ".";
    return std::nullopt;
  }

  AppOutcome apply_val(const std::string& param, const Val& a, const Val& b,
                       Fuel& fuel) const override {
    (void)param;
    TP t = tt(TTerm::K::App, {}, val_term(a), val_term(b));
    for (;;) {
      TP next;
      if (!tt_step(t, next)) break;
      if (fuel.left <= 0) return {EvalOutcome::Kind::FuelExhausted, {}};
      --fuel.left;
      t = std::move(next);
    }
    return {EvalOutcome::Kind::Value, term_val(std::move(t))};
  }
};

}  // namespace

std::unique_ptr<PpcaModel> term_model() { return std::make_unique<TermModel>(); }

// ---------------------------------------------------------------------------
// oracle-machine model

namespace {

machine::ValPtr val_m(const PpcaModel::Val& v) {
  return std::static_pointer_cast<const machine::MVal>(v.h);
}

PpcaModel::Val m_val(machine::ValPtr v) { return {std::move(v)}; }

class OracleModel final : public PpcaModel {
public:
  explicit OracleModel(std::vector<Oracle> oracles, long long default_fuel)
      : oracles_(std::move(oracles)), default_fuel_(default_fuel) {
    if (oracles_.empty())
      throw std::invalid_argument("oracle model: parameter set must be non-empty");
  }

  std::string name() const override { return "oracle"; }
  Val k_val() const override { return m_val(machine::v_num(machine::k_code())); }
  Val s_val() const override { return m_val(machine::v_num(machine::s_code())); }

  std::vector<std::string> params() const override {
    std::vector<std::string> out;
    out.reserve(oracles_.size());
    for (const auto& o : oracles_) out.push_back(o.str());
    return out;
  }

  std::optional<Val> from_text(const std::string& text) const override {
    if (text.empty()) return std::nullopt;
    for (char c : text)
      if (c < '0' || c > '9') return std::nullopt;
    return m_val(machine::v_num(Int(text)));
  }

  std::string to_text(const Val& v) const override {
    return machine::force_str(val_m(v));
  }

  bool val_eq(const Val& a, const Val& b) const override {
    return machine::force(val_m(a)) == machine::force(val_m(b));
  }

  std::optional<std::string> canon_param(const std::string& text) const override {
    auto o = Oracle::parse(text);
    if (!o) return std::nullopt;
    for (const auto& known : oracles_)
      if (known == *o) return known.str();
    return std::nullopt;
  }

  AppOutcome apply_val(const std::string& param, const Val& a, const Val& b,
                       Fuel& fuel) const override {
    const Oracle* oracle = nullptr;
    for (const auto& known : oracles_)
      if (known.str() == param) oracle = &known;
    if (!oracle) throw std::invalid_argument("oracle model: unknown parameter");
    machine::OracleView ov;
    ov.full = oracle;
    machine::RunResultV r = machine::apply_vals(val_m(a), val_m(b), ov, fuel.left);
    fuel.left -= r.steps;
    switch (r.kind) {
      case machine::RunResult::Kind::Value:
        return {EvalOutcome::Kind::Value, m_val(std::move(r.value))};
      case machine::RunResult::Kind::FuelOut:
        return {EvalOutcome::Kind::FuelExhausted, {}};
      default:
        return {EvalOutcome::Kind::Undefined, {}};
    }
  }

  long long default_fuel() const { return default_fuel_; }

private:
  std::vector<Oracle> oracles_;
  long long default_fuel_;
};

}  // namespace

std::unique_ptr<PpcaModel> oracle_model(std::vector<Oracle> oracles,
                                        long long default_fuel) {
  return std::make_unique<OracleModel>(std::move(oracles), default_fuel);
}

// ---------------------------------------------------------------------------

namespace {

// Shared subexpressions evaluate once per call: application is pure and
// deterministic, so a repeated subterm has the same value.
PpcaModel::AppOutcome eval_val_memo(const PpcaModel& model, const std::string& param,
                                    const Expr& e, Fuel& fuel,
                                    std::map<const CombExpr*, PpcaModel::Val>& memo) {
  switch (e->kind) {
    case CombExpr::Kind::Var:
      throw std::logic_error("eval_at: expression is not closed (variable " +
                             e->name + ")");
    case CombExpr::Kind::K:
      return {EvalOutcome::Kind::Value, model.k_val()};
    case CombExpr::Kind::S:
      return {EvalOutcome::Kind::Value, model.s_val()};
    case CombExpr::Kind::Lit: {
      auto v = model.from_text(e->name);
      if (!v) throw std::invalid_argument("eval_at: bad carrier literal `" + e->name);
      return {EvalOutcome::Kind::Value, *v};
    }
    case CombExpr::Kind::App: {
      auto hit = memo.find(e.get());
      if (hit != memo.end()) return {EvalOutcome::Kind::Value, hit->second};
      PpcaModel::AppOutcome l = eval_val_memo(model, param, e->l, fuel, memo);
      if (l.kind != EvalOutcome::Kind::Value) return l;
      PpcaModel::AppOutcome r = eval_val_memo(model, param, e->r, fuel, memo);
      if (r.kind != EvalOutcome::Kind::Value) return r;
      PpcaModel::AppOutcome out = model.apply_val(param, l.value, r.value, fuel);
      if (out.kind == EvalOutcome::Kind::Value) memo.emplace(e.get(), out.value);
      return out;
    }
  }
  return {EvalOutcome::Kind::Undefined, {}};
}

}  // namespace

PpcaModel::AppOutcome eval_at_val(const PpcaModel& model, const std::string& param,
                                  const Expr& e, Fuel& fuel) {
  std::map<const CombExpr*, PpcaModel::Val> memo;
  return eval_val_memo(model, param, e, fuel, memo);
}

EvalOutcome eval_at(const PpcaModel& model, const std::string& param,
                    const Expr& e, Fuel& fuel) {
  PpcaModel::AppOutcome out = eval_at_val(model, param, e, fuel);
  switch (out.kind) {
    case EvalOutcome::Kind::Value:
      return EvalOutcome::val(model.to_text(out.value));
    case EvalOutcome::Kind::Undefined:
      return EvalOutcome::undefined();
    case EvalOutcome::Kind::FuelExhausted:
      return EvalOutcome::fuel(fuel.used());
  }
  return EvalOutcome::undefined();
}

UniformResult is_uniform(const PpcaModel& model, const Expr& e,
                         const std::vector<std::string>& param_samples,
                         long long fuel_per_sample) {
  if (param_samples.empty())
    throw std::invalid_argument("is_uniform: need at least one parameter sample");
  PpcaModel::Val common;
  bool have = false;
  for (const auto& p : param_samples) {
    Fuel fuel(fuel_per_sample);
    PpcaModel::AppOutcome out = eval_at_val(model, p, e, fuel);
    if (out.kind == EvalOutcome::Kind::FuelExhausted)
      return {UniformResult::Verdict::Inconclusive, {}, "fuel exhausted at " + p};
    if (out.kind == EvalOutcome::Kind::Undefined)
      return {UniformResult::Verdict::NotUniform, {}, "undefined at " + p};
    if (!have) {
      common = out.value;
      have = true;
    } else if (!model.val_eq(out.value, common)) {
      return {UniformResult::Verdict::NotUniform, {},
              "differs at " + p + ": " + model.to_text(out.value) + " vs " +
                  model.to_text(common)};
    }
  }
  return {UniformResult::Verdict::Uniform, model.to_text(common), {}};
}

}  // namespace prw

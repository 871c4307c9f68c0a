// SPDX-License-Identifier: Apache-2.0
#include "prw/tripos.hpp"

#include <algorithm>
#include <stdexcept>

namespace prw::tripos {

Trilean tri_and(Trilean a, Trilean b) {
  if (a == Trilean::No || b == Trilean::No) return Trilean::No;
  if (a == Trilean::Unknown || b == Trilean::Unknown) return Trilean::Unknown;
  return Trilean::Yes;
}

Trilean tri_not(Trilean a) {
  if (a == Trilean::Yes) return Trilean::No;
  if (a == Trilean::No) return Trilean::Yes;
  return Trilean::Unknown;
}

RSet RSet::empty() {
  RSet s;
  s.kind_ = Kind::Empty;
  s.emptiness_ = Trilean::Yes;
  return s;
}

RSet RSet::all(std::vector<std::string> support) {
  RSet s;
  s.kind_ = Kind::All;
  s.support_ = std::move(support);
  s.emptiness_ = Trilean::No;
  return s;
}

RSet RSet::finite(std::vector<std::string> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  RSet s;
  s.kind_ = Kind::Finite;
  s.emptiness_ = elems.empty() ? Trilean::Yes : Trilean::No;
  s.support_ = std::move(elems);
  return s;
}

RSet RSet::test(std::function<Trilean(const std::string&)> fn,
                std::vector<std::string> support, Trilean emptiness) {
  RSet s;
  s.kind_ = Kind::Test;
  s.fn_ = std::move(fn);
  s.support_ = std::move(support);
  s.emptiness_ = emptiness;
  return s;
}

Trilean RSet::contains(const std::string& e) const {
  switch (kind_) {
    case Kind::Empty: return Trilean::No;
    case Kind::All: return Trilean::Yes;
    case Kind::Finite:
      return std::binary_search(support_.begin(), support_.end(), e) ? Trilean::Yes
                                                                     : Trilean::No;
    case Kind::Test: return fn_(e);
  }
  return Trilean::Unknown;
}

Trilean RSet::is_empty() const { return emptiness_; }

const RSet& TriposPredicate::operator()(const std::string& x) const {
  auto it = at.find(x);
  if (it == at.end()) {
    static const RSet kEmpty = RSet::empty();
    return kEmpty;
  }
  return it->second;
}

TriposPredicate make_predicate(std::vector<std::string> universe) {
  TriposPredicate p;
  p.universe = std::move(universe);
  for (const auto& x : p.universe) p.at.emplace(x, RSet::empty());
  return p;
}

EvalOutcome Ctx::apply1(const std::string& p, const std::string& a,
                        const std::string& b) const {
  Fuel f(fuel);
  return model().apply(p, a, b, f);
}

EvalOutcome Ctx::apply1v(const std::string& p, const PpcaModel::Val& a,
                         const std::string& b) const {
  auto bv = model().from_text(b);
  if (!bv) throw std::invalid_argument("apply1v: bad element");
  Fuel f(fuel);
  PpcaModel::AppOutcome out = model().apply_val(p, a, *bv, f);
  switch (out.kind) {
    case EvalOutcome::Kind::Value:
      return EvalOutcome::val(model().to_text(out.value));
    case EvalOutcome::Kind::Undefined:
      return EvalOutcome::undefined();
    case EvalOutcome::Kind::FuelExhausted:
      return EvalOutcome::fuel(f.used());
  }
  return EvalOutcome::undefined();
}

Ctx make_ctx(kit::KitTable& kit, long long fuel) {
  Ctx ctx;
  ctx.kit = &kit;
  ctx.params = kit.model().params();
  ctx.fuel = fuel;
  ctx.pool = {kit.model().k(), kit.model().s(), kit.value("id"), kit.value("true")};
  return ctx;
}

namespace {

// b realizes phi(x) at p when defined with a value in phi(x)
Trilean realizes_applied(const Ctx& ctx, const std::string& p, const std::string& a,
                         const std::string& b, const RSet& target) {
  EvalOutcome out = ctx.apply1(p, a, b);
  if (out.kind == EvalOutcome::Kind::FuelExhausted) return Trilean::Unknown;
  if (out.kind == EvalOutcome::Kind::Undefined) return Trilean::No;
  return target.contains(out.value);
}

std::vector<std::string> check_universe(const TriposPredicate& a, const TriposPredicate& b) {
  if (a.universe != b.universe)
    throw std::invalid_argument("tripos: predicates live on different universes");
  return a.universe;
}

std::string uniform_value(Ctx& ctx, const Expr& e) {
  UniformResult u = is_uniform(ctx.model(), e, ctx.params, ctx.fuel);
  if (u.verdict != UniformResult::Verdict::Uniform)
    throw std::runtime_error("tripos: combinator not uniform: " + u.detail);
  return u.value;
}

}  // namespace

TriposPredicate h_top(const std::vector<std::string>& universe) {
  TriposPredicate p = make_predicate(universe);
  for (const auto& x : universe) p.set(x, RSet::all());
  return p;
}

TriposPredicate h_bot(const std::vector<std::string>& universe) {
  return make_predicate(universe);
}

TriposPredicate h_and(Ctx& ctx, const TriposPredicate& phi, const TriposPredicate& psi) {
  TriposPredicate out = make_predicate(check_universe(phi, psi));
  const std::string& pairv = ctx.kit->value("pair");
  const std::string& fstv = ctx.kit->value("fst");
  const std::string& sndv = ctx.kit->value("snd");
  const std::string& p0 = ctx.params.front();
  for (const auto& x : out.universe) {
    const RSet& px = phi(x);
    const RSet& sx = psi(x);
    // support: the paired realizers; pair b c is uniform so one parameter does
    std::vector<std::string> sup;
    for (const auto& b : px.support())
      for (const auto& c : sx.support()) {
        Fuel f(ctx.fuel);
        EvalOutcome c1 = ctx.model().apply(p0, pairv, b, f);
        if (!c1.is_value()) continue;
        EvalOutcome c2 = ctx.model().apply(p0, c1.value, c, f);
        if (c2.is_value()) sup.push_back(c2.value);
      }
    Ctx* cp = &ctx;
    auto fn = [cp, fstv, sndv, px, sx](const std::string& a) {
      Trilean acc = Trilean::Yes;
      for (const auto& p : cp->params) {
        acc = tri_and(acc, realizes_applied(*cp, p, fstv, a, px));
        if (acc == Trilean::No) return acc;
        acc = tri_and(acc, realizes_applied(*cp, p, sndv, a, sx));
        if (acc == Trilean::No) return acc;
      }
      return acc;
    };
    Trilean emp = tri_not(tri_and(tri_not(px.is_empty()), tri_not(sx.is_empty())));
    out.set(x, RSet::test(fn, std::move(sup), emp));
  }
  return out;
}

TriposPredicate h_or(Ctx& ctx, const TriposPredicate& phi, const TriposPredicate& psi) {
  TriposPredicate out = make_predicate(check_universe(phi, psi));
  const std::string& pairv = ctx.kit->value("pair");
  const std::string& fstv = ctx.kit->value("fst");
  const std::string& sndv = ctx.kit->value("snd");
  const std::string& truev = ctx.kit->value("true");
  const std::string& falsev = ctx.kit->value("false");
  const std::string& p0 = ctx.params.front();
  auto tag_with = [&](const std::string& tag, const std::string& b) -> std::string {
    Fuel f(ctx.fuel);
    EvalOutcome c1 = ctx.model().apply(p0, pairv, tag, f);
    if (!c1.is_value()) return {};
    EvalOutcome c2 = ctx.model().apply(p0, c1.value, b, f);
    return c2.is_value() ? c2.value : std::string{};
  };
  for (const auto& x : out.universe) {
    const RSet& px = phi(x);
    const RSet& sx = psi(x);
    std::vector<std::string> sup;
    for (const auto& b : px.support()) {
      std::string v = tag_with(truev, b);
      if (!v.empty()) sup.push_back(v);
    }
    for (const auto& c : sx.support()) {
      std::string v = tag_with(falsev, c);
      if (!v.empty()) sup.push_back(v);
    }
    Ctx* cp = &ctx;
    auto fn = [cp, fstv, sndv, truev, falsev, px, sx](const std::string& a) {
      Trilean acc = Trilean::Yes;
      for (const auto& p : cp->params) {
        EvalOutcome tag = cp->apply1(p, fstv, a);
        if (tag.kind == EvalOutcome::Kind::FuelExhausted) return Trilean::Unknown;
        if (tag.kind == EvalOutcome::Kind::Undefined) return Trilean::No;
        const RSet* target = nullptr;
        if (tag.value == truev) target = &px;
        else if (tag.value == falsev) target = &sx;
        else return Trilean::No;
        acc = tri_and(acc, realizes_applied(*cp, p, sndv, a, *target));
        if (acc == Trilean::No) return acc;
      }
      return acc;
    };
    Trilean emp = tri_and(px.is_empty(), sx.is_empty());
    out.set(x, RSet::test(fn, std::move(sup), emp));
  }
  return out;
}

TriposPredicate h_imp(Ctx& ctx, const TriposPredicate& phi, const TriposPredicate& psi) {
  TriposPredicate out = make_predicate(check_universe(phi, psi));
  for (const auto& x : out.universe) {
    const RSet px = phi(x);
    const RSet sx = psi(x);
    if (px.is_empty() == Trilean::Yes) {
      out.set(x, RSet::all());
      continue;
    }
    Ctx* cp = &ctx;
    auto fn = [cp, px, sx](const std::string& a) {
      Trilean acc = Trilean::Yes;
      for (const auto& p : cp->params)
        for (const auto& b : px.support()) {
          if (px.contains(b) == Trilean::No) continue;
          acc = tri_and(acc, realizes_applied(*cp, p, a, b, sx));
          if (acc == Trilean::No) return acc;
        }
      return acc;
    };
    out.set(x, RSet::test(fn, {}, Trilean::Unknown));
  }
  return out;
}

TriposPredicate h_neg(Ctx& ctx, const TriposPredicate& phi) {
  // (not phi)(x) = A when phi(x) is empty, otherwise {}
  TriposPredicate out = make_predicate(phi.universe);
  for (const auto& x : out.universe) {
    Trilean emp = phi(x).is_empty();
    if (emp == Trilean::Yes) {
      out.set(x, RSet::all());
    } else if (emp == Trilean::No) {
      out.set(x, RSet::empty());
    } else {
      auto fn = [](const std::string&) { return Trilean::Unknown; };
      out.set(x, RSet::test(fn, {}, Trilean::Unknown));
    }
  }
  (void)ctx;
  return out;
}

EntailmentCert check_entailment(Ctx& ctx, const TriposPredicate& phi,
                                const TriposPredicate& psi, const std::string& witness) {
  check_universe(phi, psi);
  auto wv = ctx.model().from_text(witness);
  if (!wv) throw std::invalid_argument("check_entailment: bad witness element");
  bool unknown = false;
  std::string unk_detail;
  for (const auto& x : phi.universe) {
    const RSet& px = phi(x);
    const RSet& tx = psi(x);
    for (const auto& b : px.support()) {
      Trilean member = px.contains(b);
      if (member == Trilean::No) continue;
      if (member == Trilean::Unknown) {
        unknown = true;
        unk_detail = "membership undecided at " + x;
        continue;
      }
      for (const auto& p : ctx.params) {
        EvalOutcome out = ctx.apply1v(p, *wv, b);
        if (out.kind == EvalOutcome::Kind::FuelExhausted) {
          unknown = true;
          unk_detail = "fuel exhausted at (" + x + ", " + b + ", " + p + ")";
          continue;
        }
        if (out.kind == EvalOutcome::Kind::Undefined)
          return {EntailmentCert::Verdict::Counterexample, witness, x, b, p,
                  "application undefined"};
        Trilean in = tx.contains(out.value);
        if (in == Trilean::No)
          return {EntailmentCert::Verdict::Counterexample, witness, x, b, p,
                  "value " + out.value + " not in target"};
        if (in == Trilean::Unknown) {
          unknown = true;
          unk_detail = "target membership undecided at (" + x + ", " + b + ")";
        }
      }
    }
  }
  if (unknown)
    return {EntailmentCert::Verdict::Inconclusive, witness, {}, {}, {}, unk_detail};
  return {EntailmentCert::Verdict::Verified, witness, {}, {}, {}, {}};
}

std::string synth_witness(Ctx& ctx, Rule rule, const std::vector<std::string>& inputs) {
  auto need = [&](size_t n) {
    if (inputs.size() != n)
      throw std::invalid_argument("synth_witness: wrong number of inputs");
  };
  auto lit = [&](size_t i) { return ce_lit(inputs[i]); };
  const Expr u = ce_var("u"), vv = ce_var("v"), x = ce_var("x");
  Expr e;
  switch (rule) {
    case Rule::Trans:
      need(2);
      e = abstract("x", ce_app(lit(1), ce_app(lit(0), x)));
      break;
    case Rule::AndPair:
      need(2);
      e = abstract("u", ce_app({kit::expr("pair"), ce_app(lit(0), u), ce_app(lit(1), u)}));
      break;
    case Rule::AndFst:
      need(1);
      e = abstract("u", ce_app(kit::expr("fst"), ce_app(lit(0), u)));
      break;
    case Rule::AndSnd:
      need(1);
      e = abstract("u", ce_app(kit::expr("snd"), ce_app(lit(0), u)));
      break;
    case Rule::OrElim:
      need(2);
      e = abstract("u", ce_app({kit::expr("if"), ce_app(kit::expr("fst"), u),
                                ce_app(lit(0), ce_app(kit::expr("snd"), u)),
                                ce_app(lit(1), ce_app(kit::expr("snd"), u))}));
      break;
    case Rule::OrInl:
      need(0);
      e = abstract("u", ce_app({kit::expr("pair"), kit::expr("true"), u}));
      break;
    case Rule::OrInr:
      need(0);
      e = abstract("u", ce_app({kit::expr("pair"), kit::expr("false"), u}));
      break;
    case Rule::ImpCurry:
      need(1);
      e = abstract("u", abstract("v", ce_app(lit(0), ce_app({kit::expr("pair"), u, vv}))));
      break;
    case Rule::ImpUncurry:
      need(1);
      e = abstract("x", ce_app({lit(0), ce_app(kit::expr("fst"), x),
                                ce_app(kit::expr("snd"), x)}));
      break;
    case Rule::BotElim:
    case Rule::TopIntro:
      need(0);
      e = ce_app(ce_k(), ce_k());
      break;
  }
  return uniform_value(ctx, e);
}

SynthResult synthesize(Ctx& ctx, Rule rule, const std::vector<std::string>& inputs,
                       const TriposPredicate& from, const TriposPredicate& to) {
  std::string w = synth_witness(ctx, rule, inputs);
  return {w, check_entailment(ctx, from, to, w)};
}

const std::string& FiniteMap::operator()(const std::string& y) const {
  auto it = fn.find(y);
  if (it == fn.end()) throw std::invalid_argument("FiniteMap: no image for " + y);
  return it->second;
}

bool FiniteMap::total() const {
  for (const auto& y : dom)
    if (!fn.count(y)) return false;
  return true;
}

bool FiniteMap::surjective() const {
  for (const auto& x : cod) {
    bool hit = false;
    for (const auto& y : dom)
      if ((*this)(y) == x) hit = true;
    if (!hit) return false;
  }
  return true;
}

std::vector<std::string> FiniteMap::fiber(const std::string& x) const {
  std::vector<std::string> out;
  for (const auto& y : dom)
    if ((*this)(y) == x) out.push_back(y);
  return out;
}

FiniteMap FiniteMap::identity(const std::vector<std::string>& u) {
  FiniteMap m;
  m.dom = m.cod = u;
  for (const auto& x : u) m.fn[x] = x;
  return m;
}

TriposPredicate reindex(const TriposPredicate& phi, const FiniteMap& r) {
  TriposPredicate out = make_predicate(r.dom);
  for (const auto& y : r.dom) out.set(y, phi(r(y)));
  return out;
}

TriposPredicate exists_along(Ctx& ctx, const FiniteMap& r, const TriposPredicate& phi) {
  (void)ctx;
  TriposPredicate out = make_predicate(r.cod);
  for (const auto& x : r.cod) {
    std::vector<std::string> sup;
    std::vector<const RSet*> parts;
    bool any_nonfinite = false;
    for (const auto& y : r.fiber(x)) {
      const RSet& s = phi(y);
      for (const auto& b : s.support()) sup.push_back(b);
      parts.push_back(&s);
      if (s.accepts_all()) any_nonfinite = true;
    }
    if (any_nonfinite) {
      out.set(x, RSet::all(std::move(sup)));
      continue;
    }
    // membership: in some part
    std::vector<RSet> copies;
    copies.reserve(parts.size());
    for (auto* p : parts) copies.push_back(*p);
    auto fn = [copies](const std::string& a) {
      Trilean acc = Trilean::No;
      for (const auto& s : copies) {
        Trilean t = s.contains(a);
        if (t == Trilean::Yes) return Trilean::Yes;
        if (t == Trilean::Unknown) acc = Trilean::Unknown;
      }
      return acc;
    };
    Trilean emp = Trilean::Yes;
    for (const auto& s : copies) emp = tri_and(emp, s.is_empty());
    if (copies.empty()) emp = Trilean::Yes;
    out.set(x, RSet::test(fn, std::move(sup), emp));
  }
  return out;
}

TriposPredicate forall_along(Ctx& ctx, const FiniteMap& r, const TriposPredicate& phi) {
  TriposPredicate out = make_predicate(r.cod);
  for (const auto& x : r.cod) {
    std::vector<std::string> fib = r.fiber(x);
    std::vector<RSet> targets;
    targets.reserve(fib.size());
    for (const auto& y : fib) targets.push_back(phi(y));
    Ctx* cp = &ctx;
    auto fn = [cp, targets](const std::string& a) {
      Trilean acc = Trilean::Yes;
      for (const auto& t : targets)
        for (const auto& b : cp->pool)
          for (const auto& p : cp->params) {
            acc = tri_and(acc, realizes_applied(*cp, p, a, b, t));
            if (acc == Trilean::No) return acc;
          }
      return acc;
    };
    Trilean emp = fib.empty() ? Trilean::No : Trilean::Unknown;
    out.set(x, RSet::test(fn, ctx.pool, emp));
  }
  return out;
}

TriposPredicate forall_prime(Ctx& ctx, const FiniteMap& r, const TriposPredicate& phi) {
  TriposPredicate out = make_predicate(r.cod);
  for (const auto& x : r.cod) {
    std::vector<std::string> fib = r.fiber(x);
    if (fib.empty()) {
      out.set(x, RSet::all(ctx.pool));
      continue;
    }
    std::vector<RSet> parts;
    std::vector<std::string> sup;
    for (const auto& y : fib) {
      parts.push_back(phi(y));
      for (const auto& b : phi(y).support()) sup.push_back(b);
    }
    auto fn = [parts](const std::string& a) {
      Trilean acc = Trilean::Yes;
      for (const auto& s : parts) {
        acc = tri_and(acc, s.contains(a));
        if (acc == Trilean::No) return acc;
      }
      return acc;
    };
    // keep only support elements in every part, when decidable
    std::vector<std::string> inter;
    for (const auto& b : sup) {
      Trilean t = fn(b);
      if (t == Trilean::Yes) inter.push_back(b);
    }
    out.set(x, RSet::test(fn, std::move(inter), Trilean::Unknown));
  }
  return out;
}

std::string forall_adjoint_to_reindexed(Ctx& ctx, const std::string& a) {
  return uniform_value(ctx, abstract("x", ce_app({ce_lit(a), ce_var("x"), ce_k()})));
}

std::string forall_adjoint_from_reindexed(Ctx& ctx, const std::string& b) {
  return uniform_value(
      ctx, abstract("x", abstract("d", ce_app(ce_lit(b), ce_var("x")))));
}

const char* forall_prime_to_forall_witness() { return "K"; }

std::string forall_to_prime_witness(Ctx& ctx) {
  return uniform_value(ctx, abstract("x", ce_app(ce_var("x"), ce_k())));
}

BCResult beck_chevalley(Ctx& ctx, const PullbackSquare& sq, const TriposPredicate& phi) {
  // the square commutes and Y is the pullback of X -> W <- Z
  for (const auto& y : sq.r.dom) {
    if (sq.v(sq.r(y)) != sq.q(sq.u(y)))
      return {BCResult::Kind::NotAPullback, "square does not commute at " + y};
  }
  for (const auto& x : sq.v.dom)
    for (const auto& z : sq.q.dom) {
      if (sq.v(x) != sq.q(z)) continue;
      int count = 0;
      for (const auto& y : sq.r.dom)
        if (sq.r(y) == x && sq.u(y) == z) ++count;
      if (count != 1)
        return {BCResult::Kind::NotAPullback,
                "pullback property fails at (" + x + ", " + z + "): " +
                    std::to_string(count) + " preimages"};
    }

  // (1) forall y: r(y) = x  =>  a in phi(u(y))
  // (2) forall z: q(z) = v(x) =>  a in phi(z)
  std::vector<std::string> probes = ctx.pool;
  for (const auto& z : sq.q.dom)
    for (const auto& b : phi(z).support()) probes.push_back(b);
  for (const auto& x : sq.v.dom) {
    for (const auto& a : probes) {
      Trilean c1 = Trilean::Yes;
      for (const auto& y : sq.r.fiber(x)) c1 = tri_and(c1, phi(sq.u(y)).contains(a));
      Trilean c2 = Trilean::Yes;
      for (const auto& z : sq.q.dom)
        if (sq.q(z) == sq.v(x)) c2 = tri_and(c2, phi(z).contains(a));
      if (c1 != c2)
        return {BCResult::Kind::Counterexample,
                "conditions differ at x=" + x + ", a=" + a};
    }
  }
  return {BCResult::Kind::Verified, {}};
}

}  // namespace prw::tripos

// SPDX-License-Identifier: Apache-2.0
#include "prw/assembly.hpp"

#include <stdexcept>

#include "prw/codec.hpp"
#include "prw/kit.hpp"
#include "prw/machine.hpp"

namespace prw::assembly {

using tripos::tri_and;

std::vector<std::string> Assembly::sample_points() const {
  if (carrier == Carrier::Finite) return points;
  std::vector<std::string> out;
  switch (carrier) {
    case Carrier::N:
      for (int n = sample_lo; n <= sample_hi; ++n) out.push_back(std::to_string(n));
      break;
    case Carrier::Z:
      for (int n = sample_lo; n <= sample_hi; ++n) {
        int k = (n % 2 == 0) ? n / 2 : -(n + 1) / 2;  // 0, -1, 1, -2, 2, ...
        out.push_back(std::to_string(k));
      }
      break;
    case Carrier::Q:
      for (int n = sample_lo; n <= sample_hi; ++n)
        out.push_back(codec::rat_decode(n).str());
      break;
    default:
      break;
  }
  return out;
}

bool Assembly::carries(const std::string& x) const {
  if (carrier == Carrier::Finite)
    return std::find(points.begin(), points.end(), x) != points.end();
  if (carrier == Carrier::N) {
    if (x.empty()) return false;
    for (char c : x)
      if (c < '0' || c > '9') return false;
    return true;
  }
  if (carrier == Carrier::Z) {
    std::string t = x;
    if (!t.empty() && t[0] == '-') t = t.substr(1);
    if (t.empty()) return false;
    for (char c : t)
      if (c < '0' || c > '9') return false;
    return true;
  }
  return Rational::parse(x).has_value();
}

Assembly finite_assembly(std::string name, std::vector<std::string> points,
                         std::map<std::string, RSet> exist) {
  for (const auto& p : points) {
    auto it = exist.find(p);
    if (it == exist.end() || it->second.is_empty() == Trilean::Yes)
      throw std::invalid_argument("assembly " + name +
                                  ": existence must be nonempty at " + p);
  }
  Assembly a;
  a.carrier = Assembly::Carrier::Finite;
  a.name = std::move(name);
  a.points = std::move(points);
  auto table = std::make_shared<std::map<std::string, RSet>>(std::move(exist));
  a.exist = [table](const std::string& x) -> RSet {
    auto it = table->find(x);
    return it == table->end() ? RSet::empty() : it->second;
  };
  return a;
}

StdAssemblies std_assemblies(kit::KitTable& kit, int sample_lo, int sample_hi) {
  auto numeral_of = [&kit](const Int& code) -> RSet {
    if (code < 0 || !code.fits_ulong_p())
      throw std::invalid_argument("std assembly: code out of range");
    return RSet::finite({kit.numeral_value(unsigned(code.get_ui()))});
  };

  StdAssemblies s;
  s.objN.carrier = Assembly::Carrier::N;
  s.objN.name = "objN";
  s.objN.sample_lo = sample_lo;
  s.objN.sample_hi = sample_hi;
  kit::KitTable* kp = &kit;
  s.objN.exist = [numeral_of](const std::string& x) { return numeral_of(Int(x)); };

  s.objZ.carrier = Assembly::Carrier::Z;
  s.objZ.name = "objZ";
  s.objZ.sample_lo = sample_lo;
  s.objZ.sample_hi = sample_hi;
  s.objZ.exist = [numeral_of](const std::string& x) {
    return numeral_of(codec::int_encode(Int(x)));
  };

  s.objQ.carrier = Assembly::Carrier::Q;
  s.objQ.name = "objQ";
  s.objQ.sample_lo = sample_lo;
  s.objQ.sample_hi = sample_hi;
  s.objQ.exist = [numeral_of](const std::string& x) {
    auto q = Rational::parse(x);
    if (!q) throw std::invalid_argument("objQ: bad rational " + x);
    return numeral_of(codec::rat_encode(*q));
  };
  (void)kp;
  return s;
}

MapCert check_map(Ctx& ctx, const Assembly& X, const Assembly& Y,
                  const std::function<std::string(const std::string&)>& f,
                  const std::string& realizer) {
  auto rv = ctx.model().from_text(realizer);
  if (!rv) throw std::invalid_argument("check_map: bad realizer element");
  return check_map_val(ctx, X, Y, f, *rv, realizer);
}

MapCert check_map_val(Ctx& ctx, const Assembly& X, const Assembly& Y,
                      const std::function<std::string(const std::string&)>& f,
                      const PpcaModel::Val& realizer_val, const std::string& realizer) {
  bool unknown = false;
  std::string unk;
  for (const auto& x : X.sample_points()) {
    RSet ex = X.exist(x);
    std::string fx = f(x);
    if (!Y.carries(fx))
      return {MapCert::Verdict::Counterexample, realizer, x, {}, {},
              "image " + fx + " is not carried by " + Y.name};
    RSet ey = Y.exist(fx);
    for (const auto& b : ex.support()) {
      if (ex.contains(b) == Trilean::No) continue;
      for (const auto& p : ctx.params) {
        EvalOutcome out = ctx.apply1v(p, realizer_val, b);
        if (out.kind == EvalOutcome::Kind::FuelExhausted) {
          unknown = true;
          unk = "fuel exhausted at (" + x + ", " + b + ", " + p + ")";
          continue;
        }
        if (out.kind == EvalOutcome::Kind::Undefined)
          return {MapCert::Verdict::Counterexample, realizer, x, b, p,
                  "application undefined"};
        Trilean in = ey.contains(out.value);
        if (in == Trilean::No)
          return {MapCert::Verdict::Counterexample, realizer, x, b, p,
                  "value " + out.value + " not in E_" + Y.name + "(" + fx + ")"};
        if (in == Trilean::Unknown) {
          unknown = true;
          unk = "membership undecided at (" + x + ", " + b + ")";
        }
      }
    }
  }
  if (unknown) return {MapCert::Verdict::Inconclusive, realizer, {}, {}, {}, unk};
  return {MapCert::Verdict::Verified, realizer, {}, {}, {}, {}};
}

Assembly product(Ctx& ctx, const Assembly& X, const Assembly& Y) {
  Assembly out;
  out.name = X.name + "*" + Y.name;
  out.carrier = Assembly::Carrier::Finite;
  if (X.carrier == Assembly::Carrier::Finite && Y.carrier == Assembly::Carrier::Finite) {
    for (const auto& x : X.points)
      for (const auto& y : Y.points) out.points.push_back(x + "," + y);
  } else {
    for (const auto& x : X.sample_points())
      for (const auto& y : Y.sample_points()) out.points.push_back(x + "," + y);
  }
  Ctx* cp = &ctx;
  auto ex = X.exist, ey = Y.exist;
  const std::string fstv = ctx.kit->value("fst");
  const std::string sndv = ctx.kit->value("snd");
  const std::string pairv = ctx.kit->value("pair");
  out.exist = [cp, ex, ey, fstv, sndv, pairv](const std::string& xy) -> RSet {
    auto comma = xy.find(',');
    if (comma == std::string::npos) return RSet::empty();
    std::string x = xy.substr(0, comma), y = xy.substr(comma + 1);
    RSet sx = ex(x), sy = ey(y);
    // support: paired realizers
    std::vector<std::string> sup;
    const std::string& p0 = cp->params.front();
    for (const auto& b : sx.support())
      for (const auto& c : sy.support()) {
        Fuel f(cp->fuel);
        EvalOutcome c1 = cp->model().apply(p0, pairv, b, f);
        if (!c1.is_value()) continue;
        EvalOutcome c2 = cp->model().apply(p0, c1.value, c, f);
        if (c2.is_value()) sup.push_back(c2.value);
      }
    auto fn = [cp, fstv, sndv, sx, sy](const std::string& a) {
      Trilean acc = Trilean::Yes;
      for (const auto& p : cp->params) {
        EvalOutcome l = cp->apply1(p, fstv, a);
        if (l.kind == EvalOutcome::Kind::FuelExhausted) return Trilean::Unknown;
        if (l.kind == EvalOutcome::Kind::Undefined) return Trilean::No;
        acc = tri_and(acc, sx.contains(l.value));
        if (acc == Trilean::No) return acc;
        EvalOutcome r = cp->apply1(p, sndv, a);
        if (r.kind == EvalOutcome::Kind::FuelExhausted) return Trilean::Unknown;
        if (r.kind == EvalOutcome::Kind::Undefined) return Trilean::No;
        acc = tri_and(acc, sy.contains(r.value));
        if (acc == Trilean::No) return acc;
      }
      return acc;
    };
    return RSet::test(fn, std::move(sup), Trilean::No);
  };
  return out;
}

MapCert exponential_check(Ctx& ctx, const Assembly& X, const Assembly& Y,
                          const std::function<std::string(const std::string&)>& f,
                          const std::string& realizer) {
  return check_map(ctx, X, Y, f, realizer);
}

Assembly nabla(Ctx& ctx, std::string name, std::vector<std::string> labels) {
  Assembly a;
  a.carrier = Assembly::Carrier::Finite;
  a.name = std::move(name);
  a.points = std::move(labels);
  std::vector<std::string> pool = ctx.pool;
  a.exist = [pool](const std::string&) { return RSet::all(pool); };
  return a;
}

namespace {

bool strictness_holds(Ctx& ctx, const Assembly& X, const PointPred& phi,
                      std::string* why) {
  for (const auto& x : X.sample_points()) {
    RSet px = phi(x);
    RSet ex = X.exist(x);
    for (const auto& b : px.support()) {
      if (px.contains(b) != Trilean::Yes) continue;
      if (ex.contains(b) != Trilean::Yes) {
        if (why) *why = "realizer " + b + " of phi(" + x + ") is not in E(" + x + ")";
        return false;
      }
    }
  }
  (void)ctx;
  return true;
}

}  // namespace

StableResult classify_stable(Ctx& ctx, const Assembly& X, const PointPred& phi,
                             std::vector<std::string> candidates) {
  std::string why;
  if (!strictness_holds(ctx, X, phi, &why))
    return {StableResult::Kind::NotStrict, {}, {}, why};

  std::map<std::string, std::string> classifier;
  std::vector<std::string> inhabited;
  for (const auto& x : X.sample_points()) {
    Trilean emp = phi(x).is_empty();
    classifier[x] = (emp == Trilean::Yes) ? "0" : "1";
    if (emp != Trilean::Yes) inhabited.push_back(x);
  }

  if (candidates.empty()) {
    candidates = ctx.pool;
    candidates.push_back(ctx.kit->value("id"));
  }
  for (const auto& a : candidates) {
    bool ok = true;
    for (const auto& x : inhabited) {
      RSet px = phi(x);
      RSet ex = X.exist(x);
      for (const auto& b : ex.support()) {
        for (const auto& p : ctx.params) {
          EvalOutcome out = ctx.apply1(p, a, b);
          if (!out.is_value() || px.contains(out.value) != Trilean::Yes) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
      }
      if (!ok) break;
    }
    if (ok) return {StableResult::Kind::Stable, classifier, a, {}};
  }
  return {StableResult::Kind::NotStable, classifier, {},
          "no sampled realizer witnesses double-negation stability"};
}

SubResult sub_assembly(Ctx& ctx, const Assembly& X, const PointPred& phi,
                       std::string name) {
  std::string why;
  if (!strictness_holds(ctx, X, phi, &why)) return {false, {}, "NotStrict: " + why};
  Assembly sub;
  sub.carrier = Assembly::Carrier::Finite;
  sub.name = std::move(name);
  for (const auto& x : X.sample_points())
    if (phi(x).is_empty() != Trilean::Yes) sub.points.push_back(x);
  sub.exist = phi;
  return {true, std::move(sub), {}};
}

PointPred topos_top(const Assembly& X) { return X.exist; }

PointPred topos_imp(Ctx& ctx, const Assembly& X, const PointPred& phi,
                    const PointPred& psi) {
  Ctx* cp = &ctx;
  const std::string fstv = ctx.kit->value("fst");
  const std::string sndv = ctx.kit->value("snd");
  auto ex = X.exist;
  return [cp, fstv, sndv, ex, phi, psi](const std::string& x) -> RSet {
    RSet e = ex(x), px = phi(x), sx = psi(x);
    auto fn = [cp, fstv, sndv, e, px, sx](const std::string& a) {
      Trilean acc = Trilean::Yes;
      for (const auto& p : cp->params) {
        // fst a realizes E(x)
        EvalOutcome l = cp->apply1(p, fstv, a);
        if (l.kind == EvalOutcome::Kind::FuelExhausted) return Trilean::Unknown;
        if (l.kind == EvalOutcome::Kind::Undefined) return Trilean::No;
        acc = tri_and(acc, e.contains(l.value));
        if (acc == Trilean::No) return acc;
        // snd a realizes phi(x) -> psi(x)
        EvalOutcome r = cp->apply1(p, sndv, a);
        if (r.kind == EvalOutcome::Kind::FuelExhausted) return Trilean::Unknown;
        if (r.kind == EvalOutcome::Kind::Undefined) return Trilean::No;
        for (const auto& b : px.support()) {
          if (px.contains(b) != Trilean::Yes) continue;
          EvalOutcome o = cp->apply1(p, r.value, b);
          if (o.kind == EvalOutcome::Kind::FuelExhausted) return Trilean::Unknown;
          if (o.kind == EvalOutcome::Kind::Undefined) return Trilean::No;
          acc = tri_and(acc, sx.contains(o.value));
          if (acc == Trilean::No) return acc;
        }
      }
      return acc;
    };
    return RSet::test(fn, {}, Trilean::Unknown);
  };
}

PointPred topos_forall(Ctx& ctx, const Assembly& X, const Assembly& Y,
                       const std::function<RSet(const std::string&, const std::string&)>& phi) {
  Ctx* cp = &ctx;
  const std::string fstv = ctx.kit->value("fst");
  const std::string sndv = ctx.kit->value("snd");
  auto ex = X.exist;
  std::vector<std::string> ys = Y.sample_points();
  auto ey = Y.exist;
  return [cp, fstv, sndv, ex, ey, ys, phi](const std::string& x) -> RSet {
    RSet e = ex(x);
    auto fn = [cp, fstv, sndv, e, ey, ys, phi, x](const std::string& a) {
      Trilean acc = Trilean::Yes;
      for (const auto& p : cp->params) {
        EvalOutcome l = cp->apply1(p, fstv, a);
        if (l.kind == EvalOutcome::Kind::FuelExhausted) return Trilean::Unknown;
        if (l.kind == EvalOutcome::Kind::Undefined) return Trilean::No;
        acc = tri_and(acc, e.contains(l.value));
        if (acc == Trilean::No) return acc;
        EvalOutcome r = cp->apply1(p, sndv, a);
        if (r.kind == EvalOutcome::Kind::FuelExhausted) return Trilean::Unknown;
        if (r.kind == EvalOutcome::Kind::Undefined) return Trilean::No;
        for (const auto& y : ys) {
          RSet target = phi(x, y);
          RSet eyy = ey(y);
          for (const auto& b : eyy.support()) {
            EvalOutcome o = cp->apply1(p, r.value, b);
            if (o.kind == EvalOutcome::Kind::FuelExhausted) return Trilean::Unknown;
            if (o.kind == EvalOutcome::Kind::Undefined) return Trilean::No;
            acc = tri_and(acc, target.contains(o.value));
            if (acc == Trilean::No) return acc;
          }
        }
      }
      return acc;
    };
    return RSet::test(fn, {}, Trilean::Unknown);
  };
}

NumberRealizers number_realizers(kit::KitTable& kit) {
  using namespace prw::machine;
  const PpcaModel& m = kit.model();
  if (m.name() != "oracle")
    throw std::invalid_argument("number realizers live in the oracle model");
  kit::NumeralConverters conv = kit::numeral_converters(kit);

  // curried Cantor pair: cp0 . a . b = <a, b>
  Nat cp_base = encode(t_pair(t_fst(t_var()), t_snd(t_var())));
  Nat cp0 = encode(t_smnp(t_num(cp_base), t_var()));
  Nat qaddp = encode(t_qadd(t_fst(t_var()), t_snd(t_var())));
  Nat qltp = encode(t_qlt(t_fst(t_var()), t_snd(t_var())));
  Nat zaddp = encode(t_zadd(t_fst(t_var()), t_snd(t_var())));
  Nat zltp = encode(t_zlt(t_fst(t_var()), t_snd(t_var())));

  // The converters are closures too large to embed as literals, so the
  // realizer skeletons abstract over them and the closures are applied in.
  auto lit = [](const Nat& n) { return ce_lit(n.get_str()); };
  Expr u = ce_var("u");
  auto num_of = [&](Expr proj) {
    return ce_app(ce_var("numf"), ce_app(std::move(proj), u));
  };
  auto paired = [&] {
    return ce_app({lit(cp0), num_of(kit::expr("fst")), num_of(kit::expr("snd"))});
  };
  Expr cur_of_add_q = abstract(
      "numf", abstract("curf", abstract("u", ce_app(ce_var("curf"),
                                                    ce_app(lit(qaddp), paired())))));
  Expr cur_of_add_z = abstract(
      "numf", abstract("curf", abstract("u", ce_app(ce_var("curf"),
                                                    ce_app(lit(zaddp), paired())))));
  Expr lt_q = abstract("numf", abstract("u", ce_app(lit(qltp), paired())));
  Expr lt_z = abstract("numf", abstract("u", ce_app(lit(zltp), paired())));
  Expr or_q = abstract(
      "numf", abstract("u", ce_app({kit::expr("pair"), ce_app(lit(qltp), paired()), u})));
  Expr or_z = abstract(
      "numf", abstract("u", ce_app({kit::expr("pair"), ce_app(lit(zltp), paired()), u})));

  const std::string p0 = m.params().front();
  auto value_of = [&](const Expr& skeleton, bool with_cur) -> PpcaModel::Val {
    Fuel fuel(kit.fuel_per_eval());
    PpcaModel::AppOutcome v = eval_at_val(m, p0, skeleton, fuel);
    if (v.kind != EvalOutcome::Kind::Value)
      throw std::runtime_error("number realizer skeleton failed to evaluate");
    v = m.apply_val(p0, v.value, conv.num, fuel);
    if (v.kind == EvalOutcome::Kind::Value && with_cur)
      v = m.apply_val(p0, v.value, conv.cur, fuel);
    if (v.kind != EvalOutcome::Kind::Value)
      throw std::runtime_error("number realizer construction failed");
    return v.value;
  };

  NumberRealizers out;
  out.q_add = value_of(cur_of_add_q, true);
  out.q_lt_selector = value_of(lt_q, false);
  out.q_order_or = value_of(or_q, false);
  out.z_add = value_of(cur_of_add_z, true);
  out.z_lt_selector = value_of(lt_z, false);
  out.z_order_or = value_of(or_z, false);
  return out;
}

}  // namespace prw::assembly

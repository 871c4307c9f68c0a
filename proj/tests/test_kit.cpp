// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>
#include <set>

#include "prw/kit.hpp"
#include "prw/machine.hpp"
#include "prw/model.hpp"
#include "prw/proc.hpp"

using namespace prw;

namespace {

std::vector<Oracle> some_oracles() {
  return {
      *Oracle::parse("prefix=; period=0"),
      *Oracle::parse("prefix=1; period=10"),
      *Oracle::parse("prefix=0011; period=1"),
  };
}

std::string applyv(const PpcaModel& m, const std::string& p, const std::string& a,
                   const std::string& b, long long fuel = 1000000) {
  Fuel f(fuel);
  EvalOutcome out = m.apply(p, a, b, f);
  REQUIRE(out.is_value());
  return out.value;
}

// characteristic expression of {k} within the numerals: f . n = 1bar iff n = k
Expr char_of(unsigned k) {
  using kit::expr;
  Expr n = ce_var("n");
  auto preds = [&](unsigned count) {
    Expr e = n;
    for (unsigned i = 0; i < count; ++i) e = ce_app(expr("pred"), e);
    return e;
  };
  // n <= k  and  n >= k
  Expr le = ce_app(expr("iszero"), preds(k));                  // true iff n <= k
  Expr cond;
  if (k == 0) {
    cond = le;
  } else {
    Expr lt = ce_app(expr("iszero"), preds(k - 1));            // true iff n <= k-1
    Expr not_lt = ce_app({expr("if"), lt, expr("false"), expr("true")});
    cond = ce_app({expr("if"), le, not_lt, expr("false")});
  }
  return abstract("n", ce_app({expr("if"), cond, kit::numeral_expr(1),
                               kit::numeral_expr(0)}));
}

}  // namespace

TEST_CASE("kit equations hold in both models") {
  auto tm = term_model();
  auto om = oracle_model(some_oracles());
  std::mt19937 rng(61);
  for (PpcaModel* m : {tm.get(), om.get()}) {
    kit::KitTable kit(*m, 400000);
    std::vector<std::string> pool;
    if (m->name() == "term") {
      pool = {"K", "S", "a", "K a", "S K", "S (K a) b"};
    } else {
      using namespace prw::machine;
      pool = {m->k(), m->s(), "5", encode(t_succ(t_var())).get_str(),
              encode(t_var()).get_str(), kit.numeral_value(2)};
    }
    int rounds = m->name() == "term" ? 500 : 120;
    for (const auto& p : m->params()) {
      for (int i = 0; i < rounds; ++i) {
        const std::string& a = pool[rng() % pool.size()];
        const std::string& b = pool[rng() % pool.size()];
        std::string pab = applyv(*m, p, applyv(*m, p, kit.value("pair"), a), b);
        CHECK(applyv(*m, p, kit.value("fst"), pab) == a);
        CHECK(applyv(*m, p, kit.value("snd"), pab) == b);
        std::string it = applyv(*m, p, kit.value("if"), kit.value("true"));
        CHECK(applyv(*m, p, applyv(*m, p, it, a), b) == a);
        std::string iff = applyv(*m, p, kit.value("if"), kit.value("false"));
        CHECK(applyv(*m, p, applyv(*m, p, iff, a), b) == b);
      }
    }
  }
}

TEST_CASE("numerals behave") {
  auto tm = term_model();
  auto om = oracle_model(some_oracles());
  for (PpcaModel* m : {tm.get(), om.get()}) {
    kit::KitTable kit(*m, 400000);
    const std::string p = m->params().front();

    CHECK(kit.numeral_value(0) == applyv(*m, p, applyv(*m, p, m->s(), m->k()), m->k()));
    CHECK(applyv(*m, p, kit.value("iszero"), kit.numeral_value(0)) == kit.value("true"));
    CHECK(applyv(*m, p, kit.value("iszero"), kit.numeral_value(3)) == kit.value("false"));
    CHECK(applyv(*m, p, kit.value("pred"), kit.numeral_value(3)) == kit.numeral_value(2));
    CHECK(applyv(*m, p, kit.value("pred"), kit.numeral_value(0)) == kit.numeral_value(0));
    CHECK(applyv(*m, p, kit.value("succ"), kit.numeral_value(7)) == kit.numeral_value(8));

    // pairwise distinct
    std::set<std::string> seen;
    for (unsigned n = 0; n <= 40; ++n) CHECK(seen.insert(kit.numeral_value(n)).second);
  }
}

TEST_CASE("kit entries are uniform across oracles") {
  auto om = oracle_model(some_oracles());
  kit::KitTable kit(*om, 400000);
  for (const auto& name : kit::names()) {
    UniformResult u = is_uniform(*om, kit::expr(name), om->params(), 20000000);
    CHECK(u.verdict == UniformResult::Verdict::Uniform);
  }
}

TEST_CASE("primrec") {
  auto tm = term_model();
  auto om = oracle_model(some_oracles());
  for (PpcaModel* m : {tm.get(), om.get()}) {
    kit::KitTable kit(*m, 8000000);
    const std::string p = m->params().front();

    SUBCASE((m->name() + ": base case").c_str()) {
      std::string a = m->name() == "term" ? std::string("K a") : std::string("9");
      EvalOutcome out = kit::primrec_apply(kit, p, a, kit.value("id"), 0, 8000000);
      REQUIRE(out.is_value());
      CHECK(out.value == a);
    }

    SUBCASE((m->name() + ": double successor reaches 6").c_str()) {
      // f m r = succ (succ r)
      Expr f = abstract("m", abstract("r", ce_app(kit::expr("succ"),
                                                  ce_app(kit::expr("succ"), ce_var("r")))));
      UniformResult uf = is_uniform(*m, f, m->params(), 2000000);
      REQUIRE(uf.verdict == UniformResult::Verdict::Uniform);
      EvalOutcome out =
          kit::primrec_apply(kit, p, kit.numeral_value(0), uf.value, 3, 16000000);
      REQUIRE(out.is_value());
      CHECK(out.value == kit.numeral_value(6));
    }

    SUBCASE((m->name() + ": fuel exhaustion propagates").c_str()) {
      EvalOutcome out =
          kit::primrec_apply(kit, p, kit.numeral_value(0), kit.value("id"), 3, 50);
      CHECK(out.kind == EvalOutcome::Kind::FuelExhausted);
    }
  }
}

TEST_CASE("fixed point combinators") {
  auto tm = term_model();
  kit::KitTable kit(*tm, 400000);
  const std::string dot = ".";

  SUBCASE("Z f a ~ f (Z f) a on term-model samples") {
    // f g a = a  (drops the recursive call)
    Expr f = abstract("g", abstract("a", ce_var("a")));
    UniformResult uf = is_uniform(*tm, f, tm->params(), 400000);
    REQUIRE(uf.verdict == UniformResult::Verdict::Uniform);
    for (const std::string a : {"K", "S K", "a"}) {
      Fuel f1(400000);
      EvalOutcome lhs = eval_at(*tm, dot,
                                ce_app({kit::expr("Z"), ce_lit(uf.value), ce_lit(a)}), f1);
      Fuel f2(400000);
      EvalOutcome rhs = eval_at(
          *tm, dot,
          ce_app({ce_lit(uf.value),
                  ce_app(kit::expr("Z"), ce_lit(uf.value)), ce_lit(a)}),
          f2);
      REQUIRE(lhs.is_value());
      REQUIRE(rhs.is_value());
      CHECK(lhs.value == rhs.value);
    }
  }

  SUBCASE("Z f is a defined value") {
    UniformResult u = is_uniform(
        *tm, ce_app(kit::expr("Z"), ce_lit("K")), tm->params(), 400000);
    CHECK(u.verdict == UniformResult::Verdict::Uniform);
  }

  SUBCASE("Y f keeps unfolding through f (Y f)") {
    Fuel fuel(2000);
    EvalOutcome step = eval_at(*tm, dot, ce_app(kit::expr("Y"), ce_lit("f")), fuel);
    CHECK(step.kind == EvalOutcome::Kind::FuelExhausted);
  }
}

TEST_CASE("markov search") {
  auto tm = term_model();
  auto om = oracle_model(some_oracles());
  for (PpcaModel* m : {tm.get(), om.get()}) {
    kit::KitTable kit(*m, 1000000);
    const std::string p = m->params().front();

    SUBCASE((m->name() + ": characteristic of {3}").c_str()) {
      UniformResult uf = is_uniform(*m, char_of(3), m->params(), 1000000);
      REQUIRE(uf.verdict == UniformResult::Verdict::Uniform);
      EvalOutcome out = kit::markov_search(kit, p, uf.value, 4000000);
      REQUIRE(out.is_value());
      CHECK(out.value == kit.numeral_value(3));
    }

    SUBCASE((m->name() + ": constant one finds zero").c_str()) {
      Expr f = abstract("n", kit::numeral_expr(1));
      UniformResult uf = is_uniform(*m, f, m->params(), 1000000);
      REQUIRE(uf.verdict == UniformResult::Verdict::Uniform);
      EvalOutcome out = kit::markov_search(kit, p, uf.value, 1000000);
      REQUIRE(out.is_value());
      CHECK(out.value == kit.numeral_value(0));
    }

    SUBCASE((m->name() + ": constant zero exhausts the pool").c_str()) {
      Expr f = abstract("n", kit::numeral_expr(0));
      UniformResult uf = is_uniform(*m, f, m->params(), 1000000);
      REQUIRE(uf.verdict == UniformResult::Verdict::Uniform);
      EvalOutcome out = kit::markov_search(kit, p, uf.value, 30000);
      CHECK(out.kind == EvalOutcome::Kind::FuelExhausted);
    }
  }
}

TEST_CASE("the paper's Z-searcher runs in the term model") {
  // Z (<s><n> if (iszero (f n)) (s (succ n)) n) 0bar: normal-order reduction
  // discards the untaken branch, so the search actually terminates
  auto tm = term_model();
  kit::KitTable kit(*tm, 1000000);
  UniformResult uf = is_uniform(*tm, char_of(2), tm->params(), 1000000);
  REQUIRE(uf.verdict == UniformResult::Verdict::Uniform);
  Expr fe = ce_lit(uf.value);
  Expr body = ce_app({kit::expr("if"),
                      ce_app(kit::expr("iszero"), ce_app(fe, ce_var("n"))),
                      ce_app(ce_var("s"), ce_app(kit::expr("succ"), ce_var("n"))),
                      ce_var("n")});
  Expr searcher = ce_app({kit::expr("Z"), abstract("s", abstract("n", body)),
                          kit::numeral_expr(0)});
  Fuel fuel(2000000);
  EvalOutcome out = eval_at(*tm, ".", searcher, fuel);
  REQUIRE(out.is_value());
  CHECK(out.value == kit.numeral_value(2));
}

TEST_CASE("numeral converters in the oracle model") {
  auto om = oracle_model(some_oracles(), 4000000);
  kit::KitTable kit(*om, 4000000);
  kit::NumeralConverters conv = kit::numeral_converters(kit);

  auto apply_conv = [&](const std::string& p, const PpcaModel::Val& f,
                        const PpcaModel::Val& x) {
    Fuel fuel(8000000);
    PpcaModel::AppOutcome out = om->apply_val(p, f, x, fuel);
    REQUIRE(out.kind == EvalOutcome::Kind::Value);
    return out.value;
  };
  const std::string p = om->params().front();

  for (unsigned n : {0u, 1u, 2u, 5u, 13u, 20u}) {
    PpcaModel::Val nv = kit.numeral_val(n);
    CHECK(om->to_text(apply_conv(p, conv.num, nv)) == std::to_string(n));
    CHECK(om->val_eq(apply_conv(p, conv.cur, *om->from_text(std::to_string(n))), nv));
  }

  for (const auto& p2 : om->params()) {
    CHECK(om->val_eq(apply_conv(p2, conv.cur, *om->from_text("4")), kit.numeral_val(4)));
    CHECK(om->to_text(apply_conv(p2, conv.num, kit.numeral_val(4))) == "4");
  }
}

TEST_CASE("showcase terms compile, are closed and uniform") {
  auto tm = term_model();
  auto om = oracle_model(some_oracles());
  auto terms = kit::showcase_terms();
  CHECK(terms.count("fixpoint_pair"));
  CHECK(terms.count("enum_ident"));
  for (const auto& [name, e] : terms) {
    CHECK(is_closed(e));
    UniformResult ut = is_uniform(*tm, e, tm->params(), 2000000);
    CHECK(ut.verdict == UniformResult::Verdict::Uniform);
    UniformResult uo = is_uniform(*om, e, om->params(), 2000000);
    CHECK(uo.verdict == UniformResult::Verdict::Uniform);
  }
}

TEST_CASE("majority decision") {
  auto tm = term_model();

  auto slow_value = [&](const std::string& val, int layers) {
    Expr e = ce_lit(val);
    for (int i = 0; i < layers; ++i) e = ce_app(parse_expr("S K K"), e);
    return e;
  };

  SUBCASE("two agree while the third diverges") {
    SlicedProcess p1(*tm, ".", slow_value("K", 40));
    SlicedProcess p2(*tm, ".", slow_value("K", 260));
    SlicedProcess p3(*tm, ".", parse_expr("(S (S K K) (S K K)) (S (S K K) (S K K))"));
    MajorityResult r = majority_decide(p1, p2, p3);
    CHECK(r.kind == MajorityResult::Kind::Done);
    CHECK(r.value == "K");
    CHECK(p3.status() == SlicedProcess::Status::Running);
  }

  SUBCASE("fast dissenter loses to the slow majority") {
    SlicedProcess p1(*tm, ".", slow_value("K", 10));
    SlicedProcess p2(*tm, ".", slow_value("S", 200));
    SlicedProcess p3(*tm, ".", slow_value("S", 300));
    MajorityResult r = majority_decide(p1, p2, p3);
    CHECK(r.kind == MajorityResult::Kind::Done);
    CHECK(r.value == "S");
  }

  SUBCASE("all three agree") {
    SlicedProcess p1(*tm, ".", slow_value("S", 5));
    SlicedProcess p2(*tm, ".", slow_value("S", 6));
    SlicedProcess p3(*tm, ".", slow_value("S", 7));
    MajorityResult r = majority_decide(p1, p2, p3);
    CHECK(r.kind == MajorityResult::Kind::Done);
    CHECK(r.value == "S");
  }

  SUBCASE("premise violation is reported") {
    auto om = oracle_model(some_oracles());
    using namespace prw::machine;
    std::string rejecter =
        Int(encode(t_app(t_num(encode(t_reject())), t_var()))).get_str();
    SlicedProcess p1(*om, om->params().front(), ce_lit("5"));
    SlicedProcess p2(*om, om->params().front(), ce_lit("6"));
    SlicedProcess p3(*om, om->params().front(),
                     ce_app(ce_lit(rejecter), ce_lit("0")));
    MajorityResult r = majority_decide(p1, p2, p3);
    CHECK(r.kind == MajorityResult::Kind::Rejected);
  }

  SUBCASE("schedule determinism") {
    auto run_once = [&](std::array<long long, 3>& slices) {
      SlicedProcess p1(*tm, ".", slow_value("K", 40));
      SlicedProcess p2(*tm, ".", slow_value("K", 260));
      SlicedProcess p3(*tm, ".", slow_value("S", 100));
      MajorityResult r = majority_decide(p1, p2, p3);
      slices = r.slices;
      return r;
    };
    std::array<long long, 3> s1{}, s2{};
    MajorityResult r1 = run_once(s1);
    MajorityResult r2 = run_once(s2);
    CHECK(r1.kind == r2.kind);
    CHECK(r1.value == r2.value);
    CHECK(s1 == s2);
  }
}

// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "prw/assembly.hpp"
#include "prw/codec.hpp"
#include "prw/machine.hpp"

using namespace prw;
using namespace prw::assembly;
using tripos::EntailmentCert;
using tripos::RSet;

namespace {

struct World {
  std::unique_ptr<PpcaModel> model;
  std::unique_ptr<kit::KitTable> kit;
  tripos::Ctx ctx;

  World() {
    model = oracle_model({*Oracle::parse("prefix=; period=0"),
                          *Oracle::parse("prefix=1; period=10"),
                          *Oracle::parse("prefix=01; period=1")},
                         4000000);
    kit = std::make_unique<kit::KitTable>(*model, 4000000);
    ctx = tripos::make_ctx(*kit, 4000000);
  }
};

}  // namespace

TEST_CASE("standard assemblies carry the displayed numerals") {
  World w;
  StdAssemblies std_asm = std_assemblies(*w.kit, 0, 20);

  CHECK(std_asm.objN.exist("0").contains(w.kit->numeral_value(0)) ==
        tripos::Trilean::Yes);
  CHECK(std_asm.objN.exist("7").support() ==
        std::vector<std::string>{w.kit->numeral_value(7)});
  // integers: k >= 0 -> numeral(2k); k < 0 -> numeral(1-2k)
  CHECK(std_asm.objZ.exist("-3").support() ==
        std::vector<std::string>{w.kit->numeral_value(7)});
  CHECK(std_asm.objZ.exist("2").support() ==
        std::vector<std::string>{w.kit->numeral_value(4)});
  // rationals through the enumeration
  Int code = codec::rat_encode(Rational(1, 2));
  CHECK(std_asm.objQ.exist("1/2").support() ==
        std::vector<std::string>{w.kit->numeral_value(unsigned(code.get_ui()))});
}

TEST_CASE("map certification") {
  World w;
  StdAssemblies std_asm = std_assemblies(*w.kit, 0, 12);

  SUBCASE("identity on objN realized by id") {
    auto cert = check_map(w.ctx, std_asm.objN, std_asm.objN,
                          [](const std::string& x) { return x; },
                          w.kit->value("id"));
    CHECK(cert.verdict == MapCert::Verdict::Verified);
  }

  SUBCASE("successor on objN realized by the kit successor") {
    auto cert = check_map(w.ctx, std_asm.objN, std_asm.objN,
                          [](const std::string& x) {
                            return Int(Int(x) + 1).get_str();
                          },
                          w.kit->value("succ"));
    CHECK(cert.verdict == MapCert::Verdict::Verified);
  }

  SUBCASE("a wrong realizer is caught with its triple") {
    auto cert = check_map(w.ctx, std_asm.objN, std_asm.objN,
                          [](const std::string& x) {
                            return Int(Int(x) + 1).get_str();
                          },
                          w.kit->value("id"));
    CHECK(cert.verdict == MapCert::Verdict::Counterexample);
    CHECK(cert.x == "0");
  }

  SUBCASE("everything maps into nabla by K") {
    Assembly nb = nabla(w.ctx, "nabla2", {"0", "1"});
    auto cert = check_map(w.ctx, std_asm.objN, nb,
                          [](const std::string& x) {
                            return Int(x) % 2 == 0 ? "0" : "1";
                          },
                          w.model->k());
    CHECK(cert.verdict == MapCert::Verdict::Verified);
  }
}

TEST_CASE("products and exponentials") {
  World w;
  std::map<std::string, RSet> ex;
  ex["a"] = RSet::finite({w.kit->numeral_value(1)});
  ex["b"] = RSet::finite({w.kit->numeral_value(2)});
  Assembly X = finite_assembly("X", {"a", "b"}, ex);
  Assembly XX = product(w.ctx, X, X);

  SUBCASE("pairs realize product points") {
    const std::string p = w.model->params().front();
    Fuel fuel(4000000);
    EvalOutcome c1 =
        w.model->apply(p, w.kit->value("pair"), w.kit->numeral_value(1), fuel);
    EvalOutcome c2 = w.model->apply(p, c1.value, w.kit->numeral_value(2), fuel);
    REQUIRE(c2.is_value());
    CHECK(XX.exist("a,b").contains(c2.value) == tripos::Trilean::Yes);
    CHECK(XX.exist("b,b").contains(c2.value) == tripos::Trilean::No);
  }

  SUBCASE("a constant map is realized by K c") {
    const std::string p = w.model->params().front();
    Fuel fuel(4000000);
    EvalOutcome kc =
        w.model->apply(p, w.model->k(), w.kit->numeral_value(2), fuel);
    REQUIRE(kc.is_value());
    auto cert = check_map(w.ctx, X, X, [](const std::string&) { return "b"; },
                          kc.value);
    CHECK(cert.verdict == MapCert::Verdict::Verified);
  }

  SUBCASE("curry and uncurry preserve certification") {
    // f : X*X -> X, first projection, realized by <u> fst u
    std::string fst_r = w.kit->value("fst");
    auto split = [](const std::string& xy) { return xy.substr(0, xy.find(',')); };
    auto cert = check_map(w.ctx, XX, X, split, fst_r);
    REQUIRE(cert.verdict == MapCert::Verdict::Verified);
    // curried: <u><v> fst (pair u v) acts as the exponential transpose;
    // check the composite applied to the two components agrees on points
    std::string curried = tripos::synth_witness(w.ctx, tripos::Rule::ImpCurry, {fst_r});
    const std::string p = w.model->params().front();
    for (const std::string x : {"a", "b"})
      for (const std::string y : {"a", "b"}) {
        Fuel fuel(4000000);
        EvalOutcome s1 =
            w.model->apply(p, curried, X.exist(x).support().front(), fuel);
        REQUIRE(s1.is_value());
        EvalOutcome s2 = w.model->apply(p, s1.value, X.exist(y).support().front(), fuel);
        REQUIRE(s2.is_value());
        CHECK(X.exist(x).contains(s2.value) == tripos::Trilean::Yes);
      }
    // and uncurrying the curried realizer re-certifies the original map
    std::string uncurried =
        tripos::synth_witness(w.ctx, tripos::Rule::ImpUncurry, {curried});
    auto cert2 = check_map(w.ctx, XX, X, split, uncurried);
    CHECK(cert2.verdict == MapCert::Verdict::Verified);
  }

  SUBCASE("exponential membership check is map certification") {
    auto cert = exponential_check(w.ctx, X, X,
                                  [](const std::string& x) { return x; },
                                  w.kit->value("id"));
    CHECK(cert.verdict == MapCert::Verdict::Verified);
  }
}

TEST_CASE("classification of stable predicates") {
  World w;
  StdAssemblies std_asm = std_assemblies(*w.kit, 0, 10);

  SUBCASE("equality with a fixed point is stable, classifier is the indicator") {
    auto exist = std_asm.objN.exist;
    PointPred phi = [exist](const std::string& x) -> RSet {
      if (x == "4") return exist(x);
      return RSet::empty();
    };
    StableResult r = classify_stable(w.ctx, std_asm.objN, phi,
                                     {w.kit->value("id")});
    CHECK(r.kind == StableResult::Kind::Stable);
    CHECK(r.classifier.at("4") == "1");
    CHECK(r.classifier.at("3") == "0");
    CHECK(r.witness == w.kit->value("id"));
  }

  SUBCASE("a non-strict predicate is refused") {
    PointPred bogus = [&](const std::string&) -> RSet {
      return RSet::finite({w.model->s()});  // S realizes nothing in E_objN
    };
    StableResult r = classify_stable(w.ctx, std_asm.objN, bogus, {});
    CHECK(r.kind == StableResult::Kind::NotStrict);
  }
}

TEST_CASE("sub-assemblies") {
  World w;
  StdAssemblies std_asm = std_assemblies(*w.kit, 0, 10);
  auto exist = std_asm.objN.exist;
  PointPred evens = [exist](const std::string& x) -> RSet {
    return Int(x) % 2 == 0 ? exist(x) : RSet::empty();
  };
  SubResult sub = sub_assembly(w.ctx, std_asm.objN, evens, "evens");
  REQUIRE(sub.ok);
  CHECK(sub.sub.points == std::vector<std::string>{"0", "2", "4", "6", "8", "10"});
  // inclusion realized by the identity (a strictness realizer)
  auto cert = check_map(w.ctx, sub.sub, std_asm.objN,
                        [](const std::string& x) { return x; },
                        w.kit->value("id"));
  CHECK(cert.verdict == MapCert::Verdict::Verified);
}

TEST_CASE("topos connectives over strict predicates") {
  World w;
  std::map<std::string, RSet> ex;
  ex["a"] = RSet::finite({w.kit->numeral_value(1)});
  ex["b"] = RSet::finite({w.kit->numeral_value(2)});
  Assembly X = finite_assembly("X", {"a", "b"}, ex);

  SUBCASE("topos truth is the existence predicate") {
    PointPred top = topos_top(X);
    for (const std::string x : {"a", "b"})
      for (const auto& e : X.exist(x).support())
        CHECK(top(x).contains(e) == tripos::Trilean::Yes);
  }

  SUBCASE("topos implication carries the existence conjunct") {
    PointPred phi = X.exist;
    PointPred imp = topos_imp(w.ctx, X, phi, phi);
    // pair (e, id-like) realizes E(x) /\ (phi -> phi)
    const std::string p = w.model->params().front();
    for (const std::string x : {"a", "b"}) {
      Fuel fuel(4000000);
      EvalOutcome c1 =
          w.model->apply(p, w.kit->value("pair"), X.exist(x).support().front(), fuel);
      EvalOutcome c2 = w.model->apply(p, c1.value, w.kit->value("id"), fuel);
      REQUIRE(c2.is_value());
      CHECK(imp(x).contains(c2.value) == tripos::Trilean::Yes);
      // the bare id lacks the existence component
      CHECK(imp(x).contains(w.kit->value("id")) == tripos::Trilean::No);
    }
  }

  SUBCASE("topos forall guards with E_Y") {
    auto phi2 = [&](const std::string& x, const std::string& y) -> RSet {
      (void)x;
      return X.exist(y);  // phi(x, y) = E(y): realized by y's numeral
    };
    PointPred fa = topos_forall(w.ctx, X, X, phi2);
    // pair (e_x, id) works: id . b = b realizes E(y) for b in E(y)
    const std::string p = w.model->params().front();
    for (const std::string x : {"a", "b"}) {
      Fuel fuel(4000000);
      EvalOutcome c1 =
          w.model->apply(p, w.kit->value("pair"), X.exist(x).support().front(), fuel);
      EvalOutcome c2 = w.model->apply(p, c1.value, w.kit->value("id"), fuel);
      REQUIRE(c2.is_value());
      CHECK(fa(x).contains(c2.value) == tripos::Trilean::Yes);
      // with a constant second component it fails on the other point
      Fuel f2(4000000);
      EvalOutcome d1 =
          w.model->apply(p, w.kit->value("pair"), X.exist(x).support().front(), f2);
      EvalOutcome d2 =
          w.model->apply(p, d1.value,
                         w.model->apply(p, w.model->k(),
                                        w.kit->numeral_value(1), f2).value,
                         f2);
      REQUIRE(d2.is_value());
      CHECK(fa(x).contains(d2.value) == tripos::Trilean::No);
    }
  }
}

TEST_CASE("markov realizer certifies against finite approximations of 2^N") {
  // f ranges over characteristic maps with a 1 somewhere; the searching
  // program turns a realizer of f into the least witness's numeral
  World w;
  kit::KitTable& kit = *w.kit;
  std::mt19937 rng(89);
  const std::string p = w.model->params().front();
  for (int round = 0; round < 12; ++round) {
    unsigned len = 1 + rng() % 6;
    std::vector<int> bits(len, 0);
    unsigned first = rng() % len;
    bits[first] = 1;
    for (unsigned i = first + 1; i < len; ++i) bits[i] = int(rng() % 2);
    // build f as an if-chain over numerals
    Expr e = kit::numeral_expr(0);
    for (unsigned i = len; i-- > 0;) {
      Expr preds = ce_var("n");
      for (unsigned k = 0; k < i; ++k) preds = ce_app(kit::expr("pred"), preds);
      e = ce_app({kit::expr("if"), ce_app(kit::expr("iszero"), preds),
                  kit::numeral_expr(unsigned(bits[i])), e});
    }
    // guard: iszero(pred^i n) is true for all n <= i, so walk from the top
    Expr f = abstract("n", e);
    UniformResult uf = is_uniform(*w.model, f, w.model->params(), 4000000);
    REQUIRE(uf.verdict == UniformResult::Verdict::Uniform);
    EvalOutcome out = kit::markov_search(kit, p, uf.value, 8000000);
    REQUIRE(out.is_value());
    // expected: least i with bits[i] = 1 under the chain semantics
    // (iszero(pred^i n) selects the FIRST i >= n, so f(n) = bits[n])
    unsigned expect = 0;
    while (bits[expect] == 0) ++expect;
    CHECK(out.value == kit.numeral_value(expect));
  }
}

TEST_CASE("number realizers: decidable order and addition") {
  World w;
  StdAssemblies std_asm = std_assemblies(*w.kit, 0, 16);
  NumberRealizers nr = number_realizers(*w.kit);

  auto pair_of = [&](const Assembly& A, const std::string& x, const std::string& y) {
    const std::string p = w.model->params().front();
    Fuel fuel(8000000);
    EvalOutcome c1 = w.model->apply(p, w.kit->value("pair"), A.exist(x).support().front(), fuel);
    EvalOutcome c2 = w.model->apply(p, c1.value, A.exist(y).support().front(), fuel);
    REQUIRE(c2.is_value());
    return c2.value;
  };

  SUBCASE("rational order selector answers with the kit booleans") {
    const std::string p = w.model->params().front();
    auto probe = [&](const std::string& x, const std::string& y) {
      auto pv = w.model->from_text(pair_of(std_asm.objQ, x, y));
      Fuel fuel(8000000);
      auto out = w.model->apply_val(p, nr.q_lt_selector, *pv, fuel);
      REQUIRE(out.kind == EvalOutcome::Kind::Value);
      return w.model->to_text(out.value);
    };
    CHECK(probe("1/2", "1") == w.kit->value("true"));
    CHECK(probe("1", "1/2") == w.kit->value("false"));
    CHECK(probe("-1", "1/3") == w.kit->value("true"));
  }

  SUBCASE("or-realizer witnesses x<y or y<=x across parameters") {
    // the or-realizer tags with true/false; spot check the tag via fst
    for (const auto& p : w.model->params()) {
      auto pv = w.model->from_text(pair_of(std_asm.objQ, "1/3", "1/2"));
      Fuel fuel(8000000);
      auto tagged = w.model->apply_val(p, nr.q_order_or, *pv, fuel);
      REQUIRE(tagged.kind == EvalOutcome::Kind::Value);
      auto tag = w.model->apply_val(p, *w.model->from_text(w.kit->value("fst")),
                                    tagged.value, fuel);
      REQUIRE(tag.kind == EvalOutcome::Kind::Value);
      CHECK(w.model->to_text(tag.value) == w.kit->value("true"));
    }
  }

  SUBCASE("rational and integer addition certify as assembly maps") {
    Assembly QQ = product(w.ctx, std_asm.objQ, std_asm.objQ);
    QQ.points.clear();
    for (const std::string x : {"0", "1", "1/2", "-1/2", "2"})
      for (const std::string y : {"0", "1", "-1", "1/3"})
        QQ.points.push_back(x + "," + y);
    auto q_sum = [](const std::string& xy) {
      auto c = xy.find(',');
      Rational a = *Rational::parse(xy.substr(0, c));
      Rational b = *Rational::parse(xy.substr(c + 1));
      return (a + b).str();
    };
    auto cert = check_map_val(w.ctx, QQ, std_asm.objQ, q_sum, nr.q_add, "q_add");
    CHECK(cert.verdict == MapCert::Verdict::Verified);

    Assembly ZZ = product(w.ctx, std_asm.objZ, std_asm.objZ);
    ZZ.points.clear();
    for (const std::string x : {"0", "3", "-2"})
      for (const std::string y : {"1", "-1", "4"})
        ZZ.points.push_back(x + "," + y);
    auto z_sum = [](const std::string& xy) {
      auto c = xy.find(',');
      return Int(Int(xy.substr(0, c)) + Int(xy.substr(c + 1))).get_str();
    };
    auto cert2 = check_map_val(w.ctx, ZZ, std_asm.objZ, z_sum, nr.z_add, "z_add");
    CHECK(cert2.verdict == MapCert::Verdict::Verified);
  }
}

TEST_CASE("a certified map induces a sane functional relation") {
  // strict, relational, single-valued, total on samples
  World w;
  StdAssemblies std_asm = std_assemblies(*w.kit, 0, 8);
  auto f = [](const std::string& x) { return Int(Int(x) + 1).get_str(); };
  std::string a = w.kit->value("succ");
  REQUIRE(check_map(w.ctx, std_asm.objN, std_asm.objN, f, a).verdict ==
          MapCert::Verdict::Verified);

  // F(x,y) = { pair(b, a.b) | b in E(x) } when y = f(x); strictness and
  // single-valuedness reduce to the numeral coding being injective
  const std::string p = w.model->params().front();
  for (int x = 0; x <= 8; ++x) {
    std::string xs = std::to_string(x);
    std::string ys = f(xs);
    // total: the canonical realizer exists
    Fuel fuel(4000000);
    EvalOutcome ab =
        w.model->apply(p, a, std_asm.objN.exist(xs).support().front(), fuel);
    REQUIRE(ab.is_value());
    // strict: components realize the existence predicates
    CHECK(std_asm.objN.exist(ys).contains(ab.value) == tripos::Trilean::Yes);
    // single-valued: no other point accepts the image realizer
    for (int y2 = 0; y2 <= 9; ++y2)
      if (std::to_string(y2) != ys)
        CHECK(std_asm.objN.exist(std::to_string(y2)).contains(ab.value) ==
              tripos::Trilean::No);
  }
}

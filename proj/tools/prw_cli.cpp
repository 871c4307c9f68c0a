// SPDX-License-Identifier: Apache-2.0
//
// prw: a workbench for parameterized realizability. Subcommands wrap the
// library operations one-to-one; all numerics print as exact fractions and
// every run is deterministic given its flags.
//
// Exit codes: 0 verified/success, 1 counterexample/gap, 2 inconclusive or
// fuel exhausted, 3 usage error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "prw/assembly.hpp"
#include "prw/codec.hpp"
#include "prw/cover.hpp"
#include "prw/formula.hpp"
#include "prw/kit.hpp"
#include "prw/machine.hpp"
#include "prw/model.hpp"
#include "prw/proc.hpp"
#include "prw/reals.hpp"
#include "prw/term.hpp"
#include "prw/tripos.hpp"

using namespace prw;

namespace {

constexpr int kOk = 0;
constexpr int kCounter = 1;
constexpr int kInconclusive = 2;
constexpr int kUsage = 3;

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Usage("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::function<Expr(const std::string&)> kit_resolver() {
  return [](const std::string& name) { return kit::resolve_name(name); };
}

Expr parse_cli_expr(const std::string& text) {
  auto res = kit_resolver();
  try {
    return parse_expr(text, &res);
  } catch (const ParseError& e) {
    throw Usage("parse error at line " + std::to_string(e.line) + ", column " +
                std::to_string(e.col) + ": " + e.message);
  }
}

struct ModelOpts {
  std::string model = "term";
  std::vector<std::string> oracle_specs;
  long long fuel = 100000;

  std::unique_ptr<PpcaModel> build() const {
    if (model == "term") return term_model();
    if (model == "oracle") {
      if (oracle_specs.empty())
        throw Usage("--model oracle needs at least one --oracle spec");
      std::vector<Oracle> os;
      for (const auto& s : oracle_specs) {
        auto o = Oracle::parse(s);
        if (!o) throw Usage("bad oracle spec: " + s);
        os.push_back(*o);
      }
      return oracle_model(std::move(os), fuel);
    }
    throw Usage("unknown model " + model);
  }

  std::vector<Oracle> oracles() const {
    std::vector<Oracle> os;
    for (const auto& s : oracle_specs) {
      auto o = Oracle::parse(s);
      if (!o) throw Usage("bad oracle spec: " + s);
      os.push_back(*o);
    }
    return os;
  }
};

void add_model_opts(CLI::App* cmd, ModelOpts& mo) {
  cmd->add_option("--model", mo.model, "term | oracle")->default_val("term");
  cmd->add_option("--oracle", mo.oracle_specs,
                  "oracle spec `prefix=0110; period=01` (repeatable)");
  cmd->add_option("--fuel", mo.fuel, "step budget per evaluation")->default_val(100000);
}

// predicate file: `universe x1 x2 ...` then `at LABEL : expr ; expr ; ...`
tripos::TriposPredicate load_predicate(const std::string& path, tripos::Ctx& ctx) {
  std::istringstream in(read_file(path));
  std::string line;
  std::vector<std::string> universe;
  tripos::TriposPredicate pred;
  bool have_universe = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word) || word[0] == '#') continue;
    if (word == "universe") {
      std::string lbl;
      while (ls >> lbl) universe.push_back(lbl);
      pred = tripos::make_predicate(universe);
      have_universe = true;
      continue;
    }
    if (word == "at") {
      if (!have_universe) throw Usage(path + ": `at` before `universe`");
      std::string lbl, colon;
      if (!(ls >> lbl >> colon) || colon != ":")
        throw Usage(path + " line " + std::to_string(lineno) + ": expected `at LABEL :`");
      std::string rest;
      std::getline(ls, rest);
      std::vector<std::string> elems;
      std::string piece;
      std::istringstream parts(rest);
      while (std::getline(parts, piece, ';')) {
        // trim
        size_t b = piece.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        size_t e = piece.find_last_not_of(" \t");
        piece = piece.substr(b, e - b + 1);
        if (piece.empty()) continue;
        Expr ex = parse_cli_expr(piece);
        if (!is_closed(ex)) throw Usage(path + ": realizer must be closed: " + piece);
        UniformResult ur = is_uniform(ctx.model(), ex, ctx.params, ctx.fuel);
        if (ur.verdict != UniformResult::Verdict::Uniform)
          throw Usage(path + ": realizer not uniform: " + piece + " (" + ur.detail + ")");
        elems.push_back(ur.value);
      }
      pred.set(lbl, tripos::RSet::finite(elems));
      continue;
    }
    throw Usage(path + " line " + std::to_string(lineno) + ": unknown directive " + word);
  }
  if (!have_universe) throw Usage(path + ": missing `universe` line");
  return pred;
}

int print_eval_outcome(const EvalOutcome& out) {
  switch (out.kind) {
    case EvalOutcome::Kind::Value:
      std::cout << out.value << "\n";
      return kOk;
    case EvalOutcome::Kind::Undefined:
      std::cout << "undefined\n";
      return kCounter;
    case EvalOutcome::Kind::FuelExhausted:
      std::cout << "fuel-exhausted " << out.steps << "\n";
      return kInconclusive;
  }
  return kUsage;
}

// ---------------------------------------------------------------- commands

int cmd_eval(const ModelOpts& mo, const std::string& text, const std::string& param) {
  auto model = mo.build();
  Expr e = parse_cli_expr(text);
  if (!is_closed(e)) throw Usage("expression must be closed");
  std::string p = param.empty() ? model->params().front() : param;
  auto cp = model->canon_param(p);
  if (!cp) throw Usage("unknown parameter " + p);
  Fuel fuel(mo.fuel);
  return print_eval_outcome(eval_at(*model, *cp, e, fuel));
}

int cmd_compile(const std::string& text) {
  Expr e = parse_cli_expr(text);
  std::cout << print_expr(e) << "\n";
  return kOk;
}

int cmd_uniform(const ModelOpts& mo, const std::string& text) {
  auto model = mo.build();
  Expr e = parse_cli_expr(text);
  if (!is_closed(e)) throw Usage("expression must be closed");
  UniformResult u = is_uniform(*model, e, model->params(), mo.fuel);
  switch (u.verdict) {
    case UniformResult::Verdict::Uniform:
      std::cout << "uniform " << u.value << "\n";
      return kOk;
    case UniformResult::Verdict::NotUniform:
      std::cout << "not-uniform " << u.detail << "\n";
      return kCounter;
    case UniformResult::Verdict::Inconclusive:
      std::cout << "inconclusive " << u.detail << "\n";
      return kInconclusive;
  }
  return kUsage;
}

int cmd_kit(const ModelOpts& mo, const std::string& name) {
  auto model = mo.build();
  kit::KitTable table(*model, mo.fuel);
  if (name.empty()) {
    for (const auto& n : kit::names())
      std::cout << n << " " << table.value(n) << "\n";
    return kOk;
  }
  if (name.rfind("numeral:", 0) == 0) {
    std::cout << table.numeral_value(unsigned(std::stoul(name.substr(8)))) << "\n";
    return kOk;
  }
  std::cout << table.value(name) << "\n";
  return kOk;
}

int cmd_entail(const ModelOpts& mo, const std::vector<std::string>& pred_files,
               const std::string& witness_text) {
  if (pred_files.size() != 2) throw Usage("entail needs exactly two --pred files");
  auto model = mo.build();
  kit::KitTable table(*model, mo.fuel);
  tripos::Ctx ctx = tripos::make_ctx(table, mo.fuel);
  tripos::TriposPredicate phi = load_predicate(pred_files[0], ctx);
  tripos::TriposPredicate psi = load_predicate(pred_files[1], ctx);
  Expr w = parse_cli_expr(witness_text);
  UniformResult u = is_uniform(*model, w, model->params(), mo.fuel);
  if (u.verdict != UniformResult::Verdict::Uniform)
    throw Usage("witness is not uniform: " + u.detail);
  tripos::EntailmentCert cert = tripos::check_entailment(ctx, phi, psi, u.value);
  switch (cert.verdict) {
    case tripos::EntailmentCert::Verdict::Verified:
      std::cout << "verified witness=" << cert.witness << "\n";
      return kOk;
    case tripos::EntailmentCert::Verdict::Counterexample:
      std::cout << "counterexample x=" << cert.x << " b=" << cert.b << " p=" << cert.p
                << " (" << cert.detail << ")\n";
      return kCounter;
    case tripos::EntailmentCert::Verdict::Inconclusive:
      std::cout << "inconclusive " << cert.detail << "\n";
      return kInconclusive;
  }
  return kUsage;
}

// formula file: `universe N = a b`, `predicate phi : N N`,
// `at phi (a,b) : expr ; expr`, `valid (forall x N (atom phi x x))`
int cmd_formula(const ModelOpts& mo, const std::string& path) {
  auto model = mo.build();
  kit::KitTable table(*model, mo.fuel);
  tripos::Ctx ctx = tripos::make_ctx(table, mo.fuel);
  tripos::FormulaEnv env;
  std::map<std::string, std::vector<std::string>> pred_unis;
  std::string query;

  std::istringstream in(read_file(path));
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word) || word[0] == '#') continue;
    auto fail = [&](const std::string& m) -> void {
      throw Usage(path + " line " + std::to_string(lineno) + ": " + m);
    };
    if (word == "universe") {
      std::string name, eq, lbl;
      if (!(ls >> name >> eq) || eq != "=") fail("expected `universe NAME = labels...`");
      std::vector<std::string> labels;
      while (ls >> lbl) labels.push_back(lbl);
      if (labels.empty()) fail("universe needs at least one label");
      env.universes[name] = labels;
    } else if (word == "predicate") {
      std::string name, colon, u;
      if (!(ls >> name >> colon) || colon != ":") fail("expected `predicate NAME : U...`");
      std::vector<std::string> unis;
      while (ls >> u) unis.push_back(u);
      if (unis.empty()) fail("predicate needs argument universes");
      pred_unis[name] = unis;
      std::vector<std::pair<std::string, std::string>> vars;
      for (size_t i = 0; i < unis.size(); ++i)
        vars.emplace_back("_" + std::to_string(i), unis[i]);
      tripos::AtomDef def;
      def.arg_universes = unis;
      def.pred = tripos::make_predicate(tripos::product_universe(env, vars));
      env.atoms[name] = std::move(def);
    } else if (word == "at") {
      std::string name, tuple, colon;
      if (!(ls >> name >> tuple >> colon) || colon != ":")
        fail("expected `at NAME (tuple) : exprs`");
      auto it = env.atoms.find(name);
      if (it == env.atoms.end()) fail("unknown predicate " + name);
      if (tuple.size() < 2 || tuple.front() != '(' || tuple.back() != ')')
        fail("tuple must look like (a,b)");
      std::string point = tuple.substr(1, tuple.size() - 2);
      std::string rest;
      std::getline(ls, rest);
      std::vector<std::string> elems;
      std::istringstream parts(rest);
      std::string piece;
      while (std::getline(parts, piece, ';')) {
        size_t b = piece.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        size_t e = piece.find_last_not_of(" \t");
        piece = piece.substr(b, e - b + 1);
        Expr ex = parse_cli_expr(piece);
        UniformResult ur = is_uniform(ctx.model(), ex, ctx.params, ctx.fuel);
        if (ur.verdict != UniformResult::Verdict::Uniform)
          fail("realizer not uniform: " + piece);
        elems.push_back(ur.value);
      }
      it->second.pred.set(point, tripos::RSet::finite(elems));
    } else if (word == "valid") {
      std::getline(ls, query);
    } else {
      fail("unknown directive " + word);
    }
  }
  if (query.empty()) throw Usage(path + ": missing `valid FORMULA` line");
  tripos::FormulaPtr f;
  try {
    f = tripos::parse_formula(query);
  } catch (const ParseError& e) {
    throw Usage(path + ": formula parse error: " + e.message);
  }
  tripos::ValidityResult r = tripos::is_valid(ctx, env, f);
  switch (r.kind) {
    case tripos::ValidityResult::Kind::Valid:
      std::cout << "valid witness=" << r.witness << "\n";
      return kOk;
    case tripos::ValidityResult::Kind::Invalid:
      std::cout << "invalid\n";
      return kCounter;
    case tripos::ValidityResult::Kind::Inconclusive:
      std::cout << "inconclusive " << r.detail << "\n";
      return kInconclusive;
  }
  return kUsage;
}

assembly::Assembly load_assembly(const std::string& spec, kit::KitTable& table,
                                 tripos::Ctx& ctx, int range) {
  if (spec == "std:N" || spec == "std:Z" || spec == "std:Q") {
    assembly::StdAssemblies std_asm = assembly::std_assemblies(table, 0, range);
    if (spec == "std:N") return std_asm.objN;
    if (spec == "std:Z") return std_asm.objZ;
    return std_asm.objQ;
  }
  // file: `carrier finite a b c` then `at a : expr ; ...`
  std::istringstream in(read_file(spec));
  std::string line;
  std::vector<std::string> points;
  std::map<std::string, tripos::RSet> exist;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word) || word[0] == '#') continue;
    if (word == "carrier") {
      std::string kind;
      if (!(ls >> kind) || kind != "finite")
        throw Usage(spec + ": only `carrier finite ...` files; use std:N/Z/Q otherwise");
      std::string lbl;
      while (ls >> lbl) points.push_back(lbl);
    } else if (word == "at") {
      std::string lbl, colon;
      if (!(ls >> lbl >> colon) || colon != ":")
        throw Usage(spec + " line " + std::to_string(lineno) + ": expected `at LABEL :`");
      std::string rest;
      std::getline(ls, rest);
      std::vector<std::string> elems;
      std::istringstream parts(rest);
      std::string piece;
      while (std::getline(parts, piece, ';')) {
        size_t b = piece.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        size_t e = piece.find_last_not_of(" \t");
        piece = piece.substr(b, e - b + 1);
        Expr ex = parse_cli_expr(piece);
        UniformResult ur = is_uniform(ctx.model(), ex, ctx.params, ctx.fuel);
        if (ur.verdict != UniformResult::Verdict::Uniform)
          throw Usage(spec + ": realizer not uniform: " + piece);
        elems.push_back(ur.value);
      }
      exist[lbl] = tripos::RSet::finite(elems);
    } else {
      throw Usage(spec + " line " + std::to_string(lineno) + ": unknown directive " + word);
    }
  }
  if (points.empty()) throw Usage(spec + ": missing carrier");
  return assembly::finite_assembly(spec, points, exist);
}

int cmd_assembly(const ModelOpts& mo, const std::string& src, const std::string& dst,
                 const std::string& map_spec, const std::string& witness_text, int range) {
  auto model = mo.build();
  kit::KitTable table(*model, mo.fuel);
  tripos::Ctx ctx = tripos::make_ctx(table, mo.fuel);
  assembly::Assembly X = load_assembly(src, table, ctx, range);
  assembly::Assembly Y = load_assembly(dst, table, ctx, range);

  std::function<std::string(const std::string&)> f;
  if (map_spec == "id") {
    f = [](const std::string& x) { return x; };
  } else if (map_spec == "succ") {
    f = [](const std::string& x) { return Int(Int(x) + 1).get_str(); };
  } else {
    auto tbl = std::make_shared<std::map<std::string, std::string>>();
    std::istringstream ms(map_spec);
    std::string pair;
    while (std::getline(ms, pair, ';')) {
      auto eq = pair.find('=');
      if (eq == std::string::npos) throw Usage("map entries look like x=y;u=v");
      (*tbl)[pair.substr(0, eq)] = pair.substr(eq + 1);
    }
    f = [tbl](const std::string& x) {
      auto it = tbl->find(x);
      if (it == tbl->end()) throw Usage("map has no image for " + x);
      return it->second;
    };
  }

  Expr w = parse_cli_expr(witness_text);
  UniformResult u = is_uniform(*model, w, model->params(), mo.fuel);
  if (u.verdict != UniformResult::Verdict::Uniform)
    throw Usage("realizer is not uniform: " + u.detail);

  assembly::MapCert cert = assembly::check_map(ctx, X, Y, f, u.value);
  switch (cert.verdict) {
    case assembly::MapCert::Verdict::Verified:
      std::cout << "verified realizer=" << cert.realizer << "\n";
      return kOk;
    case assembly::MapCert::Verdict::Counterexample:
      std::cout << "counterexample x=" << cert.x << " b=" << cert.b << " p=" << cert.p
                << " (" << cert.detail << ")\n";
      return kCounter;
    case assembly::MapCert::Verdict::Inconclusive:
      std::cout << "inconclusive " << cert.detail << "\n";
      return kInconclusive;
  }
  return kUsage;
}

reals::RealRealizer parse_program_spec(const std::string& spec) {
  if (spec.rfind("code:", 0) == 0) return reals::RealRealizer::program(Int(spec.substr(5)));
  if (spec.rfind("const:", 0) == 0) {
    auto q = Rational::parse(spec.substr(6));
    if (!q) throw Usage("bad rational in " + spec);
    return reals::RealRealizer::constant(*q);
  }
  if (spec.rfind("binary:", 0) == 0) {
    auto q = Rational::parse(spec.substr(7));
    if (!q) throw Usage("bad rational in " + spec);
    Rational qq = *q;
    return reals::RealRealizer::host_rule([qq](int k) -> std::optional<Rational> {
      // truncated binary expansion: floor(q 2^k) / 2^k
      Rational scaled = qq * Rational::pow2(k);
      return Rational(scaled.floor()) * Rational::pow2(-k);
    });
  }
  throw Usage("program spec must be code:N, const:Q, or binary:Q");
}

int cmd_real_check(const ModelOpts& mo, const std::string& program,
                   const std::string& target, int depth) {
  auto q = Rational::parse(target);
  if (!q) throw Usage("bad target rational " + target);
  reals::RealRealizer r = parse_program_spec(program);
  std::vector<Oracle> oracles = mo.oracles();
  if (r.code && oracles.empty()) throw Usage("code-backed program needs --oracle");
  reals::RealCheck c = reals::check_real_realizer(r, *q, depth, oracles, mo.fuel);
  switch (c.verdict) {
    case reals::RealCheck::Verdict::Verified:
      std::cout << "verified depth=" << depth << "\n";
      return kOk;
    case reals::RealCheck::Verdict::Counterexample:
      std::cout << "counterexample k=" << c.k << " approx=" << c.approx.str() << " ("
                << c.detail << ")\n";
      return kCounter;
    case reals::RealCheck::Verdict::Inconclusive:
      std::cout << "inconclusive " << c.detail << "\n";
      return kInconclusive;
  }
  return kUsage;
}

int cmd_compare(const ModelOpts& mo, const std::string& left, const std::string& right) {
  reals::RealRealizer r = parse_program_spec(left);
  reals::RealRealizer s = parse_program_spec(right);
  std::vector<Oracle> oracles = mo.oracles();
  const Oracle* o = oracles.empty() ? nullptr : &oracles.front();
  if ((r.code || s.code) && !o) throw Usage("code-backed programs need --oracle");
  reals::CompareResult c = reals::compare_apart(r, s, o, mo.fuel);
  switch (c.kind) {
    case reals::CompareResult::Kind::Less:
      std::cout << "less witness=" << c.witness.str() << " k=" << c.k << "\n";
      return kOk;
    case reals::CompareResult::Kind::Greater:
      std::cout << "greater witness=" << c.witness.str() << " k=" << c.k << "\n";
      return kOk;
    case reals::CompareResult::Kind::FuelExhausted:
      std::cout << "fuel-exhausted k=" << c.k << "\n";
      return kInconclusive;
    case reals::CompareResult::Kind::Undefined:
      std::cout << "undefined k=" << c.k << "\n";
      return kCounter;
  }
  return kUsage;
}

std::vector<Rational> parse_seq(const std::string& s) {
  std::vector<Rational> out;
  std::istringstream in(s);
  std::string piece;
  while (std::getline(in, piece, ',')) {
    auto q = Rational::parse(piece);
    if (!q) throw Usage("bad rational " + piece);
    out.push_back(*q);
  }
  return out;
}

int cmd_diag(const std::string& which, int steps, const std::string& seq) {
  std::vector<Rational> a = parse_seq(seq);
  if (which == "cantor") {
    auto ivs = reals::cantor_avoid(a, steps);
    for (size_t n = 0; n < ivs.size(); ++n)
      std::cout << n << " " << ivs[n].first.str() << " " << ivs[n].second.str() << "\n";
    return kOk;
  }
  if (which == "cauchy") {
    auto s = [&a](int n, int) { return a[size_t(n) % a.size()]; };
    reals::CauchyDiag d = reals::cauchy_avoid(s, steps);
    for (size_t n = 0; n < d.t.size(); ++n)
      std::cout << n << " " << d.t[n].str() << " " << d.u[n].str() << "\n";
    return kOk;
  }
  throw Usage("diag wants cantor or cauchy");
}

int cmd_interval(const ModelOpts& mo, const std::string& program, int depth) {
  Int code(program);
  std::vector<Oracle> oracles = mo.oracles();
  if (oracles.empty()) throw Usage("interval needs --oracle");
  if (oracles.size() == 1) {
    reals::IntervalTrace tr = reals::interval_I(code, oracles.front(), depth);
    std::cout << tr.str();
    return kOk;
  }
  reals::CIv hull = reals::interval_J_approx(code, oracles, depth);
  std::cout << "hull " << hull.lo.str() << " " << hull.hi.str() << "\n";
  return kOk;
}

int cmd_cover(const std::string& op, const std::string& file, const std::string& window,
              const std::string& eps, const std::string& points, const std::string& x,
              int n, int stages, int terms) {
  auto load = [&]() {
    std::string err;
    auto c = cover::parse_cover(read_file(file), &err);
    if (!c) throw Usage(file + ": " + err);
    return *c;
  };
  if (op == "uncovered") {
    auto ivs = load();
    std::vector<cover::RatInterval> closed;
    for (const auto& iv : ivs)
      if (iv.kind == cover::RatInterval::Kind::Closed) closed.push_back(iv);
    auto w = parse_seq(window);
    if (w.size() != 2) throw Usage("--window wants `lo,hi`");
    cover::UncoveredResult r = cover::uncovered_point(closed, cover::open_iv(w[0], w[1]));
    if (r.kind == cover::UncoveredResult::Kind::PreconditionViolated)
      throw Usage("precondition violated: " + r.detail);
    std::cout << r.point.str() << "\n";
    return kOk;
  }
  if (op == "singular") {
    auto q = Rational::parse(eps);
    if (!q) throw Usage("bad --eps");
    auto ps = parse_seq(points);
    auto ivs = cover::singular_cover(ps, *q);
    std::cout << cover::print_cover(ivs);
    return kOk;
  }
  if (op == "subcover") {
    auto ivs = load();
    cover::SubcoverResult r = cover::finite_subcover(ivs, size_t(n));
    if (r.kind == cover::SubcoverResult::Kind::Covered) {
      std::cout << "covered";
      for (size_t i : r.indices) std::cout << " " << i;
      std::cout << "\n";
      return kOk;
    }
    std::cout << "gap " << r.witness.str() << "\n";
    return kCounter;
  }
  if (op == "normalize") {
    auto ivs = load();
    auto out = cover::normalize_well_behaved(ivs, stages);
    std::cout << cover::print_cover(out);
    return kOk;
  }
  if (op == "tent") {
    auto ivs = load();
    auto q = Rational::parse(x);
    if (!q) throw Usage("bad --x");
    std::cout << cover::tent_sum(ivs, *q, terms).str() << "\n";
    return kOk;
  }
  throw Usage("cover wants uncovered | singular | subcover | normalize | tent");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prw: parameterized realizability workbench"};
  app.require_subcommand(1);

  ModelOpts mo;
  std::string expr_text, param, name;
  std::vector<std::string> pred_files;
  std::string witness, file, src, dst, map_spec;
  std::string program, target, left, right, seq, which;
  std::string window, eps, points, xq, cover_op;
  int depth = 10, steps = 10, range = 40, n = 0, stages = 3, terms = 8;
  long long seed = 0;

  auto* c_eval = app.add_subcommand("eval", "evaluate a closed expression");
  add_model_opts(c_eval, mo);
  c_eval->add_option("--param", param, "parameter (defaults to the first)");
  c_eval->add_option("expr", expr_text)->required();

  auto* c_compile = app.add_subcommand("compile", "eliminate lam and print");
  c_compile->add_option("expr", expr_text)->required();

  auto* c_uniform = app.add_subcommand("uniform", "check parameter independence");
  add_model_opts(c_uniform, mo);
  c_uniform->add_option("expr", expr_text)->required();

  auto* c_kit = app.add_subcommand("kit", "kit constants and their values");
  add_model_opts(c_kit, mo);
  c_kit->add_option("name", name, "constant name, or numeral:N");

  auto* c_entail = app.add_subcommand("entail", "check phi <= psi with a witness");
  add_model_opts(c_entail, mo);
  c_entail->add_option("--pred", pred_files, "predicate file (twice: phi then psi)");
  c_entail->add_option("--witness", witness)->required();

  auto* c_formula = app.add_subcommand("formula", "interpret and decide validity");
  add_model_opts(c_formula, mo);
  c_formula->add_option("file", file)->required();

  auto* c_asm = app.add_subcommand("assembly", "certify an assembly map");
  add_model_opts(c_asm, mo);
  c_asm->add_option("--src", src)->required();
  c_asm->add_option("--dst", dst)->required();
  c_asm->add_option("--map", map_spec)->required();
  c_asm->add_option("--witness", witness)->required();
  c_asm->add_option("--range", range, "sample range for infinite carriers");

  auto* c_real = app.add_subcommand("real-check", "verify a real realizer");
  add_model_opts(c_real, mo);
  c_real->add_option("--program", program)->required();
  c_real->add_option("--target", target)->required();
  c_real->add_option("--depth", depth)->required();

  auto* c_cmp = app.add_subcommand("compare", "apartness comparator");
  add_model_opts(c_cmp, mo);
  c_cmp->add_option("--left", left)->required();
  c_cmp->add_option("--right", right)->required();

  auto* c_diag = app.add_subcommand("diag", "diagonalization recurrences");
  c_diag->add_option("which", which)->required();
  c_diag->add_option("--steps", steps)->required();
  c_diag->add_option("--seq", seq)->required();

  auto* c_iv = app.add_subcommand("interval", "interval-domain trace or hull");
  add_model_opts(c_iv, mo);
  c_iv->add_option("--program", program)->required();
  c_iv->add_option("--depth", depth)->required();

  auto* c_cover = app.add_subcommand("cover", "interval cover algorithms");
  c_cover->add_option("op", cover_op)->required();
  c_cover->add_option("file", file);
  c_cover->add_option("--window", window);
  c_cover->add_option("--eps", eps);
  c_cover->add_option("--points", points);
  c_cover->add_option("--x", xq);
  c_cover->add_option("--n", n);
  c_cover->add_option("--stages", stages);
  c_cover->add_option("--terms", terms);

  app.add_option("--seed", seed, "accepted for reproducible scripting");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_eval->parsed()) return cmd_eval(mo, expr_text, param);
    if (c_compile->parsed()) return cmd_compile(expr_text);
    if (c_uniform->parsed()) return cmd_uniform(mo, expr_text);
    if (c_kit->parsed()) return cmd_kit(mo, name);
    if (c_entail->parsed()) return cmd_entail(mo, pred_files, witness);
    if (c_formula->parsed()) return cmd_formula(mo, file);
    if (c_asm->parsed()) return cmd_assembly(mo, src, dst, map_spec, witness, range);
    if (c_real->parsed()) return cmd_real_check(mo, program, target, depth);
    if (c_cmp->parsed()) return cmd_compare(mo, left, right);
    if (c_diag->parsed()) return cmd_diag(which, steps, seq);
    if (c_iv->parsed()) return cmd_interval(mo, program, depth);
    if (c_cover->parsed())
      return cmd_cover(cover_op, file, window, eps, points, xq, n, stages, terms);
  } catch (const Usage& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

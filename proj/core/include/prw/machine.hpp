// SPDX-License-Identifier: Apache-2.0
#ifndef PRW_MACHINE_HPP
#define PRW_MACHINE_HPP

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "prw/oracle.hpp"
#include "prw/rational.hpp"

namespace prw::machine {

using Nat = Int;

/// Machine terms: the decoded form of a program code. A term denotes a
/// partial map N -> N relative to an oracle; `Var` is the argument.
///
/// K and S exist as quoted templates so that K.a, S.a and S.a.b are plain
/// closure formation: they never consult the oracle and never run
/// sub-programs, which is exactly what the ppca laws demand of them.
enum class Tk : int {
  Var = 0,     // the input
  Num,         // literal
  App,         // universal application: run code (s x) on value (t x)
  OracleQ,     // oracle bit at index (t x)
  PairC,       // Cantor pair of (s x) and (t x)
  Fst,         // first projection
  Snd,         // second projection
  Succ,
  Pred,        // truncated: pred 0 = 0
  IsZero,      // yields the boolean selector code (true/false combinator)
  KTpl,        // on a, returns the code of Num(a)
  STpl0,       // on a, returns the code of STpl1(a)
  STpl1,       // on b, returns the code of STpl2(a, b)
  STpl2,       // on c, runs (a.c)(b.c)
  CompTpl0,    // on f, returns the code of CompTpl1(f)
  CompTpl1,    // on g, returns the code of CompTpl2(f, g)
  CompTpl2,    // on x, runs f.(g.x)
  SmnP,        // smn of (s x) and (t x)
  QAddC,       // rational arithmetic on rat codes
  QLtC,        // rational order on rat codes, yields boolean selector
  ZAddC,       // integer arithmetic on int codes
  ZLtC,
  RejectT,     // halts rejecting
  DivergeT,    // never halts; also the image of every invalid code
};

struct MTerm;
using TermPtr = std::shared_ptr<const MTerm>;

struct MTerm {
  Tk k;
  Nat num;      // payload of Num / STpl1 / CompTpl1; first payload of STpl2 / CompTpl2
  Nat num2;     // second payload of STpl2 / CompTpl2
  TermPtr a, b; // subterms
};

TermPtr t_var();
TermPtr t_num(const Nat& n);
TermPtr t_app(TermPtr f, TermPtr g);
TermPtr t_oracle(TermPtr t);
TermPtr t_pair(TermPtr s, TermPtr t);
TermPtr t_fst(TermPtr t);
TermPtr t_snd(TermPtr t);
TermPtr t_succ(TermPtr t);
TermPtr t_pred(TermPtr t);
TermPtr t_iszero(TermPtr t);
TermPtr t_ktpl();
TermPtr t_stpl0();
TermPtr t_stpl1(const Nat& a);
TermPtr t_stpl2(const Nat& a, const Nat& b);
TermPtr t_comp0();
TermPtr t_comp1(const Nat& f);
TermPtr t_comp2(const Nat& f, const Nat& g);
TermPtr t_smnp(TermPtr s, TermPtr t);
TermPtr t_qadd(TermPtr s, TermPtr t);
TermPtr t_qlt(TermPtr s, TermPtr t);
TermPtr t_zadd(TermPtr s, TermPtr t);
TermPtr t_zlt(TermPtr s, TermPtr t);
TermPtr t_reject();
TermPtr t_diverge();

/// Goedel numbering. Terms serialize to a self-delimiting bit stream (5-bit
/// tags; number payloads as a length field plus the bits below the leading
/// one) read as a binary numeral with a leading 1, so code size is linear in
/// term size and quoting a code costs only a logarithmic length prefix.
/// encode(decode(n)) == n exactly for valid codes; invalid codes decode to
/// the diverging program.
Nat encode(const TermPtr& t);
TermPtr decode(const Nat& code);
bool valid_code(const Nat& code);
std::string term_str(const TermPtr& t);

/// Runtime carrier elements. Every value is a natural number, but closure
/// values (quoted numbers and partially applied templates) stay symbolic
/// until the number is actually demanded; forcing is memoized and linear.
struct MVal;
using ValPtr = std::shared_ptr<const MVal>;

ValPtr v_num(const Nat& n);
const Nat& force(const ValPtr& v);
std::string force_str(const ValPtr& v);  // decimal text of force(v)

/// Oracle access for a run: either a total oracle or a finite prefix.
/// Reading past the prefix yields the star outcome, as in truncated runs.
struct OracleView {
  const Oracle* full = nullptr;
  const std::vector<uint8_t>* prefix = nullptr;
};

struct RunResult {
  enum class Kind { Value, Reject, FuelOut, Star };
  Kind kind;
  Nat value;
  long long steps = 0;  // fuel consumed
};

struct RunResultV {
  RunResult::Kind kind;
  ValPtr value;
  long long steps = 0;
};

/// Step-bounded run of a program code on an input. Every node visit costs
/// one fuel unit; `queries` (optional) collects the oracle indices read.
RunResult run_code(const Nat& code, const Nat& input, const OracleView& ov,
                   long long fuel, std::set<Int>* queries = nullptr);

/// The same run on lazy values; the result is not forced.
RunResultV run_val(const ValPtr& code, const ValPtr& input, const OracleView& ov,
                   long long fuel, std::set<Int>* queries = nullptr);

/// Partial application m . n of the ppca K with the given oracle.
RunResult apply_codes(const Nat& m, const Nat& n, const OracleView& ov,
                      long long fuel, std::set<Int>* queries = nullptr);
RunResultV apply_vals(const ValPtr& m, const ValPtr& n, const OracleView& ov,
                      long long fuel, std::set<Int>* queries = nullptr);

/// Relativized smn: phi_{smn(e,m)}(n) ~ phi_e(<m,n>). Total, oracle-free.
Nat smn(const Nat& e, const Nat& m);

/// Kleene's recursion theorem via the smn diagonal: for a total code
/// transformer t, phi_{fix}(n) ~ phi_{phi_t(fix)}(n) where fix = kleene_fix(t).
Nat kleene_fix(const Nat& t);

const Nat& k_code();
const Nat& s_code();
/// Machine values of the S/K booleans (the compiled true/false selectors);
/// IsZero and the order primitives answer with these.
const Nat& true_code();
const Nat& false_code();

}  // namespace prw::machine

#endif

// SPDX-License-Identifier: Apache-2.0
#ifndef PRW_REALS_HPP
#define PRW_REALS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "prw/machine.hpp"
#include "prw/oracle.hpp"
#include "prw/rational.hpp"

namespace prw::reals {

/// A program producing, at precision k, a rational within 2^-k of the
/// represented real: either a machine code run in the oracle model or a
/// host-side rule (the term-model form).
struct RealRealizer {
  std::optional<Int> code;
  std::function<std::optional<Rational>(int)> rule;

  static RealRealizer program(Int code);
  static RealRealizer host_rule(std::function<std::optional<Rational>(int)> rule);
  static RealRealizer constant(const Rational& q);  // zero approximation error
};

/// The constant machine program emitting rat_encode(q) at every precision.
Int const_program(const Rational& q);

struct Approx {
  enum class Kind { Value, FuelExhausted, Undefined };
  Kind kind;
  Rational value;
};
Approx approximate(const RealRealizer& r, int k, const Oracle* oracle, long long fuel);

struct RealCheck {
  enum class Verdict { Verified, Counterexample, Inconclusive };
  Verdict verdict;
  int k = -1;
  Rational approx;
  std::string detail;
};

/// Verifies |q - rat(r . k)| < 2^-k for k <= depth across the given oracles
/// (ignored for host rules).
RealCheck check_real_realizer(const RealRealizer& r, const Rational& target,
                              int depth, const std::vector<Oracle>& oracles,
                              long long fuel = 100000);

struct CompareResult {
  enum class Kind { Less, Greater, FuelExhausted, Undefined };
  Kind kind;
  Rational witness;  // a rational strictly between the two reals
  int k = -1;        // the separating precision
};

/// Searches for the least k with |r.k - s.k| > 2^{-k+1} and returns the
/// order with the separating rational r.k +- 2^-k. One fuel pool feeds the
/// whole search, so equal reals exhaust it rather than answer.
CompareResult compare_apart(const RealRealizer& r, const RealRealizer& s,
                            const Oracle* oracle, long long fuel);

/// Nested-interval diagonalization against a listed rational sequence:
/// [x0,y0] = [0, 1/4], then
///   [x, (4x+y)/5]  when (3x+2y)/5 < a_n   (preferred branch)
///   [(x+4y)/5, y]  when a_n < (2x+3y)/5.
/// Exactly one output interval per step, all endpoints exact.
std::vector<std::pair<Rational, Rational>> cantor_avoid(
    const std::vector<Rational>& a, int n_steps);

/// Cauchy diagonalization from an approximation table s with
/// |f(n) - s(n,k)| < 2^-k: t0 = s(0,0)+1, u0 = t0 + 1/4, then with
/// d = (u-t)/4 and m least with 2^-m < d, branch on t + 2d < s(n,m).
/// Maintains 0 < u_n - t_n < 2^{-n-1} and per-step avoidance.
struct CauchyDiag {
  std::vector<Rational> t, u;
};
CauchyDiag cauchy_avoid(const std::function<Rational(int, int)>& s, int n_steps);

/// j-step truncated run of program n on input k; star (nullopt) on timeout,
/// rejection, or an oracle access past the prefix.
std::optional<Int> trunc_run(const Int& program, const Oracle* oracle,
                             const std::vector<uint8_t>* prefix, const Int& input,
                             long long steps);

/// A closed rational subinterval of [0,1], possibly empty after clipping.
struct CIv {
  Rational lo, hi;
  bool empty = false;

  bool contains(const Rational& q) const { return !empty && lo <= q && q <= hi; }
  Rational width() const { return empty ? Rational(0) : hi - lo; }
};
CIv civ(const Rational& lo, const Rational& hi);
CIv civ_full();                      // [0,1]
CIv civ_clip(const Rational& lo, const Rational& hi);  // clipped to [0,1]
CIv civ_intersect(const CIv& a, const CIv& b);
CIv civ_hull(const CIv& a, const CIv& b);

/// One consumed index of the H sequence and the I interval after it.
struct TraceStep {
  Int index;   // <j, k>
  CIv H;
  CIv I;       // I(index+1)
};

struct IntervalTrace {
  CIv I0;  // [0,1]
  std::vector<TraceStep> steps;

  const CIv& I(size_t k) const { return k == 0 ? I0 : steps[k - 1].I; }
  size_t depth() const { return steps.size(); }
  std::string str() const;  // line-oriented `k lo hi`
};

/// The interval sequence I of a program under an oracle:
/// H(<j,k>) = [rat m - 2^-k, rat m + 2^-k] clipped to [0,1] when the j-step
/// truncation answers m, [0,1] on star; I intersects guardedly.
IntervalTrace interval_I(const Int& program, const Oracle& alpha, int depth);

/// Finite-sample approximation of the J hull: the convex hull of the
/// depth-truncated I intervals over the given oracles.
CIv interval_J_approx(const Int& program, const std::vector<Oracle>& oracles, int depth);

struct OracleFromSeq {
  bool ok;
  Oracle oracle;
  std::string error;
};

/// Packs finite-binary-expansion rationals in [0,1) into one oracle:
/// bit <n,m> is the m-th binary digit of the n-th input. The result is
/// eventually zero, hence exactly representable.
OracleFromSeq oracle_from_sequence(const std::vector<Rational>& dyadics);

/// rat code of sum_{i <= n+1} alpha(i) 2^{-i-1}, the canonical representing
/// map for the real coded by the oracle's binary expansion.
Int real_from_oracle(const Oracle& alpha, int n);

/// Value of the oracle qua binary expansion, truncated after `bits` digits.
Rational oracle_real_truncated(const Oracle& alpha, int bits);

}  // namespace prw::reals

#endif

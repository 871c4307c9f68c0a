// SPDX-License-Identifier: Apache-2.0
#include "prw/reals.hpp"

#include <stdexcept>

#include "prw/codec.hpp"

namespace prw::reals {

RealRealizer RealRealizer::program(Int code) {
  RealRealizer r;
  r.code = std::move(code);
  return r;
}

RealRealizer RealRealizer::host_rule(std::function<std::optional<Rational>(int)> rule) {
  RealRealizer r;
  r.rule = std::move(rule);
  return r;
}

RealRealizer RealRealizer::constant(const Rational& q) {
  Rational copy = q;
  return host_rule([copy](int) { return copy; });
}

Int const_program(const Rational& q) {
  return machine::encode(machine::t_num(codec::rat_encode(q)));
}

Approx approximate(const RealRealizer& r, int k, const Oracle* oracle, long long fuel) {
  if (r.code) {
    machine::OracleView ov;
    ov.full = oracle;
    machine::RunResult out = machine::run_code(*r.code, Int(k), ov, fuel);
    switch (out.kind) {
      case machine::RunResult::Kind::Value:
        return {Approx::Kind::Value, codec::rat_decode(out.value)};
      case machine::RunResult::Kind::FuelOut:
        return {Approx::Kind::FuelExhausted, Rational(0)};
      default:
        return {Approx::Kind::Undefined, Rational(0)};
    }
  }
  auto v = r.rule(k);
  if (!v) return {Approx::Kind::Undefined, Rational(0)};
  return {Approx::Kind::Value, *v};
}

RealCheck check_real_realizer(const RealRealizer& r, const Rational& target,
                              int depth, const std::vector<Oracle>& oracles,
                              long long fuel) {
  if (depth < 1) throw std::invalid_argument("check_real_realizer: depth >= 1");
  std::vector<const Oracle*> params;
  if (r.code) {
    for (const auto& o : oracles) params.push_back(&o);
    if (params.empty())
      throw std::invalid_argument("check_real_realizer: program form needs oracles");
  } else {
    params.push_back(nullptr);
  }
  for (int k = 0; k <= depth; ++k) {
    for (const Oracle* o : params) {
      Approx a = approximate(r, k, o, fuel);
      if (a.kind == Approx::Kind::FuelExhausted)
        return {RealCheck::Verdict::Inconclusive, k, {}, "fuel exhausted"};
      if (a.kind == Approx::Kind::Undefined)
        return {RealCheck::Verdict::Counterexample, k, {}, "no value at precision " +
                std::to_string(k)};
      if (!((target - a.value).abs() < Rational::pow2(-k)))
        return {RealCheck::Verdict::Counterexample, k, a.value,
                "|target - approx| >= 2^-" + std::to_string(k)};
    }
  }
  return {RealCheck::Verdict::Verified, depth, {}, {}};
}

CompareResult compare_apart(const RealRealizer& r, const RealRealizer& s,
                            const Oracle* oracle, long long fuel) {
  long long pool = fuel;
  // one probe deducts its cost from the shared pool; rule-backed realizers
  // cost one unit per call
  auto probe = [&](const RealRealizer& rr, int k) -> Approx {
    if (rr.code) {
      machine::OracleView ov;
      ov.full = oracle;
      machine::RunResult out = machine::run_code(*rr.code, Int(k), ov, pool);
      pool -= out.steps;
      switch (out.kind) {
        case machine::RunResult::Kind::Value:
          return {Approx::Kind::Value, codec::rat_decode(out.value)};
        case machine::RunResult::Kind::FuelOut:
          return {Approx::Kind::FuelExhausted, Rational(0)};
        default:
          return {Approx::Kind::Undefined, Rational(0)};
      }
    }
    pool -= 1;
    auto v = rr.rule(k);
    if (!v) return {Approx::Kind::Undefined, Rational(0)};
    return {Approx::Kind::Value, *v};
  };
  for (int k = 0;; ++k) {
    if (pool <= 0) return {CompareResult::Kind::FuelExhausted, {}, k};
    Approx ra = probe(r, k);
    if (ra.kind == Approx::Kind::FuelExhausted)
      return {CompareResult::Kind::FuelExhausted, {}, k};
    if (ra.kind == Approx::Kind::Undefined)
      return {CompareResult::Kind::Undefined, {}, k};

    if (pool <= 0) return {CompareResult::Kind::FuelExhausted, {}, k};
    Approx sa = probe(s, k);
    if (sa.kind == Approx::Kind::FuelExhausted)
      return {CompareResult::Kind::FuelExhausted, {}, k};
    if (sa.kind == Approx::Kind::Undefined)
      return {CompareResult::Kind::Undefined, {}, k};

    if ((ra.value - sa.value).abs() > Rational::pow2(-k + 1)) {
      if (ra.value < sa.value)
        return {CompareResult::Kind::Less, ra.value + Rational::pow2(-k), k};
      return {CompareResult::Kind::Greater, ra.value - Rational::pow2(-k), k};
    }
  }
}

std::vector<std::pair<Rational, Rational>> cantor_avoid(const std::vector<Rational>& a,
                                                        int n_steps) {
  if (n_steps > int(a.size()))
    throw std::invalid_argument("cantor_avoid: need one listed term per step");
  std::vector<std::pair<Rational, Rational>> out;
  Rational x(0), y(1, 4);
  out.emplace_back(x, y);
  for (int n = 0; n < n_steps; ++n) {
    Rational lo_guard = (3 * x + 2 * y) / Rational(5);
    Rational hi_guard = (2 * x + 3 * y) / Rational(5);
    if (lo_guard < a[n]) {
      y = (4 * x + y) / Rational(5);
    } else if (a[n] < hi_guard) {
      x = (x + 4 * y) / Rational(5);
    } else {
      // impossible: the guards overlap on an interval of positive width
      throw std::logic_error("cantor_avoid: no branch applies");
    }
    out.emplace_back(x, y);
  }
  return out;
}

CauchyDiag cauchy_avoid(const std::function<Rational(int, int)>& s, int n_steps) {
  CauchyDiag d;
  Rational t = s(0, 0) + Rational(1);
  Rational u = t + Rational(1, 4);
  d.t.push_back(t);
  d.u.push_back(u);
  for (int n = 0; n < n_steps; ++n) {
    Rational step = (u - t) / Rational(4);
    int m = 0;
    while (!(Rational::pow2(-m) < step)) ++m;
    if (t + 2 * step < s(n, m)) {
      u = t + step;
    } else {
      t = u - step;
    }
    d.t.push_back(t);
    d.u.push_back(u);
  }
  return d;
}

std::optional<Int> trunc_run(const Int& program, const Oracle* oracle,
                             const std::vector<uint8_t>* prefix, const Int& input,
                             long long steps) {
  machine::OracleView ov;
  ov.full = oracle;
  ov.prefix = prefix;
  machine::RunResult out = machine::run_code(program, input, ov, steps);
  if (out.kind == machine::RunResult::Kind::Value) return out.value;
  return std::nullopt;
}

CIv civ(const Rational& lo, const Rational& hi) {
  CIv c;
  c.lo = lo;
  c.hi = hi;
  c.empty = hi < lo;
  return c;
}

CIv civ_full() { return civ(Rational(0), Rational(1)); }

CIv civ_clip(const Rational& lo, const Rational& hi) {
  Rational l = lo < Rational(0) ? Rational(0) : lo;
  Rational h = hi > Rational(1) ? Rational(1) : hi;
  return civ(l, h);
}

CIv civ_intersect(const CIv& a, const CIv& b) {
  if (a.empty || b.empty) {
    CIv c;
    c.empty = true;
    return c;
  }
  return civ(a.lo < b.lo ? b.lo : a.lo, a.hi < b.hi ? a.hi : b.hi);
}

CIv civ_hull(const CIv& a, const CIv& b) {
  if (a.empty) return b;
  if (b.empty) return a;
  return civ(a.lo < b.lo ? a.lo : b.lo, a.hi > b.hi ? a.hi : b.hi);
}

std::string IntervalTrace::str() const {
  std::string out = "0 0 1\n";
  for (size_t k = 1; k <= steps.size(); ++k) {
    const CIv& iv = I(k);
    out += std::to_string(k) + " " + iv.lo.str() + " " + iv.hi.str() + "\n";
  }
  return out;
}

IntervalTrace interval_I(const Int& program, const Oracle& alpha, int depth) {
  IntervalTrace tr;
  tr.I0 = civ_full();
  CIv cur = tr.I0;
  for (int i = 0; i < depth; ++i) {
    auto [j, k] = codec::unpair(Int(i));
    CIv h;
    long long steps = j.fits_slong_p() ? j.get_si() : (1LL << 30);
    std::optional<Int> m = trunc_run(program, &alpha, nullptr, k, steps);
    if (!m) {
      h = civ_full();
    } else {
      if (!k.fits_slong_p()) throw std::logic_error("interval_I: k out of range");
      Rational q = codec::rat_decode(*m);
      Rational eps = Rational::pow2(-k.get_si());
      h = civ_clip(q - eps, q + eps);
    }
    CIv meet = civ_intersect(cur, h);
    if (!meet.empty) cur = meet;
    tr.steps.push_back({Int(i), h, cur});
  }
  return tr;
}

CIv interval_J_approx(const Int& program, const std::vector<Oracle>& oracles, int depth) {
  if (oracles.empty())
    throw std::invalid_argument("interval_J_approx: need at least one oracle");
  CIv hull;
  hull.empty = true;
  for (const auto& alpha : oracles) {
    IntervalTrace tr = interval_I(program, alpha, depth);
    hull = civ_hull(hull, tr.I(tr.depth()));
  }
  return hull;
}

namespace {

// binary digits of a dyadic q in [0,1): q = sum digits[m] * 2^{-m-1}
std::optional<std::vector<uint8_t>> dyadic_digits(const Rational& q) {
  if (q < Rational(0) || !(q < Rational(1))) return std::nullopt;
  Int den = q.den();
  // power of two?
  Int d = den;
  while (mpz_even_p(d.get_mpz_t())) d /= 2;
  if (d != 1) return std::nullopt;
  std::vector<uint8_t> digits;
  Rational rest = q;
  while (rest != Rational(0)) {
    rest = rest * Rational(2);
    if (rest >= Rational(1)) {
      digits.push_back(1);
      rest = rest - Rational(1);
    } else {
      digits.push_back(0);
    }
  }
  return digits;
}

}  // namespace

OracleFromSeq oracle_from_sequence(const std::vector<Rational>& dyadics) {
  std::vector<std::pair<Int, uint8_t>> bits;  // (index, bit)
  Int max_index(-1);
  for (size_t n = 0; n < dyadics.size(); ++n) {
    auto digits = dyadic_digits(dyadics[n]);
    if (!digits)
      return {false, {}, "input " + dyadics[n].str() +
              " is not a dyadic rational in [0,1) with a finite expansion"};
    for (size_t m = 0; m < digits->size(); ++m) {
      if ((*digits)[m]) {
        Int idx = codec::pair(Int(static_cast<unsigned long>(n)),
                              Int(static_cast<unsigned long>(m)));
        bits.emplace_back(idx, 1);
        if (idx > max_index) max_index = idx;
      }
    }
  }
  if (max_index > 10000000)
    return {false, {}, "expansion too long to pack into an oracle prefix"};
  size_t len = max_index < 0 ? 0 : size_t(max_index.get_ui()) + 1;
  std::vector<uint8_t> prefix(len, 0);
  for (const auto& [idx, b] : bits) prefix[idx.get_ui()] = b;
  return {true, Oracle(prefix, {0}), {}};
}

Int real_from_oracle(const Oracle& alpha, int n) {
  Rational sum(0);
  for (int i = 0; i <= n + 1; ++i)
    if (alpha.bit(i)) sum = sum + Rational::pow2(-i - 1);
  return codec::rat_encode(sum);
}

Rational oracle_real_truncated(const Oracle& alpha, int bits) {
  Rational sum(0);
  for (int i = 0; i < bits; ++i)
    if (alpha.bit(i)) sum = sum + Rational::pow2(-i - 1);
  return sum;
}

}  // namespace prw::reals

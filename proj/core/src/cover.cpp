// SPDX-License-Identifier: Apache-2.0
#include "prw/cover.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace prw::cover {

std::string RatInterval::str() const {
  return std::string(kind == Kind::Open ? "open " : "closed ") + lo.str() + " " + hi.str();
}

RatInterval open_iv(const Rational& lo, const Rational& hi) {
  if (hi < lo) throw std::invalid_argument("interval: hi < lo");
  return {lo, hi, RatInterval::Kind::Open};
}

RatInterval closed_iv(const Rational& lo, const Rational& hi) {
  if (hi < lo) throw std::invalid_argument("interval: hi < lo");
  return {lo, hi, RatInterval::Kind::Closed};
}

std::optional<std::vector<RatInterval>> parse_cover(const std::string& text,
                                                    std::string* error) {
  std::vector<RatInterval> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    if (error) *error = "line " + std::to_string(lineno) + ": " + msg;
    return std::nullopt;
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string kind, a, b;
    if (!(ls >> kind)) continue;           // blank line
    if (kind[0] == '#') continue;          // comment
    if (!(ls >> a >> b)) return fail("expected `open|closed lo hi`");
    auto lo = Rational::parse(a), hi = Rational::parse(b);
    if (!lo || !hi) return fail("bad rational endpoint");
    if (*hi < *lo) return fail("hi < lo");
    if (kind == "open") out.push_back(open_iv(*lo, *hi));
    else if (kind == "closed") out.push_back(closed_iv(*lo, *hi));
    else return fail("unknown interval kind " + kind);
    std::string rest;
    if (ls >> rest) return fail("trailing tokens");
  }
  return out;
}

std::string print_cover(const std::vector<RatInterval>& cover) {
  std::string out;
  for (const auto& iv : cover) out += iv.str() + "\n";
  return out;
}

UncoveredResult uncovered_point(const std::vector<RatInterval>& closed,
                                const RatInterval& window) {
  Rational total(0);
  for (const auto& iv : closed) {
    if (iv.kind != RatInterval::Kind::Closed)
      return {UncoveredResult::Kind::PreconditionViolated, {},
              "all subtracted intervals must be closed"};
    total = total + iv.length();
  }
  if (!(total < window.length()))
    return {UncoveredResult::Kind::PreconditionViolated, {},
            "total closed length " + total.str() + " is not below the window length " +
                window.length().str()};

  // disjoint residual pieces of the window, in increasing order
  std::vector<std::pair<Rational, Rational>> residual{{window.lo, window.hi}};
  for (const auto& iv : closed) {
    std::vector<std::pair<Rational, Rational>> next;
    for (const auto& [x, y] : residual) {
      if (iv.hi < x || y < iv.lo) {
        next.emplace_back(x, y);
        continue;
      }
      if (x < iv.lo) next.emplace_back(x, iv.lo);
      if (iv.hi < y) next.emplace_back(iv.hi, y);
    }
    residual = std::move(next);
  }
  if (residual.empty())
    return {UncoveredResult::Kind::PreconditionViolated, {},
            "no residual interval survived"};  // unreachable under the precondition
  const auto& [x, y] = residual.front();
  return {UncoveredResult::Kind::Point, (x + y) / Rational(2), {}};
}

std::optional<Rational> uncovered_point_bruteforce(const std::vector<RatInterval>& closed,
                                                   const RatInterval& window) {
  std::vector<Rational> cuts{window.lo, window.hi};
  for (const auto& iv : closed) {
    cuts.push_back(iv.lo);
    cuts.push_back(iv.hi);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  auto candidate_ok = [&](const Rational& q) {
    if (!(window.lo < q && q < window.hi)) return false;
    for (const auto& iv : closed)
      if (iv.lo <= q && q <= iv.hi) return false;
    return true;
  };
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    Rational mid = (cuts[i] + cuts[i + 1]) / Rational(2);
    if (candidate_ok(mid)) return mid;
  }
  return std::nullopt;
}

std::vector<RatInterval> singular_cover(const std::vector<Rational>& points,
                                        const Rational& eps) {
  if (!(Rational(0) < eps && eps < Rational(1)))
    throw std::invalid_argument("singular_cover: need 0 < eps < 1");
  std::vector<RatInterval> out;
  out.reserve(points.size());
  for (size_t i = 0; i < points.size(); ++i) {
    Rational radius = eps * Rational::pow2(-long(i) - 2);
    out.push_back(open_iv(points[i] - radius, points[i] + radius));
  }
  return out;
}

Int nth_prime(int i) {
  if (i < 1) throw std::invalid_argument("nth_prime: 1-based index");
  Int p = 1;
  for (int k = 0; k < i; ++k) mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
  return p;
}

Int primorial(int i) {
  Int out = 1, p = 1;
  for (int k = 0; k < i; ++k) {
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    out *= p;
  }
  return out;
}

RatInterval cd_interval(int stage, const Int& m) {
  if (stage < 1) throw std::invalid_argument("cd_interval: stage >= 1");
  Int p = nth_prime(stage);
  Int big_p = primorial(stage);
  Rational c(Int(1 + 2 * m * p), big_p);
  Rational d(Int(1 + (2 * m + 3) * p), big_p);
  return open_iv(c, d);
}

namespace {

// union of open intervals as disjoint maximal pieces (strict overlap only:
// abutting opens do not merge, their common endpoint is uncovered)
std::vector<std::pair<Rational, Rational>> merge_open(
    const std::vector<RatInterval>& ivs, size_t take) {
  std::vector<std::pair<Rational, Rational>> spans;
  for (size_t i = 0; i < take && i < ivs.size(); ++i)
    if (ivs[i].lo < ivs[i].hi) spans.emplace_back(ivs[i].lo, ivs[i].hi);
  std::sort(spans.begin(), spans.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  });
  std::vector<std::pair<Rational, Rational>> out;
  for (const auto& s : spans) {
    if (!out.empty() && s.first < out.back().second) {
      if (out.back().second < s.second) out.back().second = s.second;
    } else {
      out.push_back(s);
    }
  }
  return out;
}

bool contained_in(const RatInterval& inner, const RatInterval& outer) {
  return outer.lo <= inner.lo && inner.hi <= outer.hi;
}

}  // namespace

std::vector<RatInterval> normalize_well_behaved(const std::vector<RatInterval>& cover,
                                                int stages) {
  if (stages < 1) throw std::invalid_argument("normalize_well_behaved: stages >= 1");
  std::vector<RatInterval> out;
  for (int stage = 1; stage <= stages; ++stage) {
    auto pieces = merge_open(cover, size_t(stage));
    Int p = nth_prime(stage);
    Int big_p = primorial(stage);
    for (const auto& [u, v] : pieces) {
      // (c,d) inside (u,v):  u <= c  and  d <= v; solve for m exactly
      //   c = (1+2mp)/P >= u   <=>  m >= (uP-1)/(2p)
      //   d = (1+(2m+3)p)/P <= v  <=>  m <= ((vP-1)/p - 3)/2
      Rational lo_m = (u * Rational(big_p) - Rational(1)) / Rational(Int(2 * p));
      Rational hi_m =
          ((v * Rational(big_p) - Rational(1)) / Rational(p) - Rational(3)) / Rational(2);
      for (Int m = lo_m.ceil(); m <= hi_m.floor(); ++m) {
        RatInterval iv = cd_interval(stage, m);
        if (!(u <= iv.lo && iv.hi <= v)) continue;
        bool dup = false;
        for (const auto& prev : out)
          if (contained_in(iv, prev)) {
            dup = true;
            break;
          }
        if (!dup) out.push_back(iv);
      }
    }
  }
  return out;
}

WellBehavedReport check_well_behaved(const std::vector<RatInterval>& cover) {
  const Rational zero(0), one(1);
  for (size_t i = 0; i < cover.size(); ++i) {
    const auto& a = cover[i];
    if (a.lo == zero || a.lo == one || a.hi == zero || a.hi == one)
      return {false, "interval " + std::to_string(i) + " shares an endpoint with (0,1)"};
  }
  for (size_t i = 0; i < cover.size(); ++i)
    for (size_t j = 0; j < cover.size(); ++j)
      if (cover[i].hi == cover[j].lo)
        return {false, "intervals " + std::to_string(i) + " and " + std::to_string(j) +
                           " abut at " + cover[i].hi.str()};
  for (size_t i = 0; i < cover.size(); ++i)
    for (size_t j = 0; j < cover.size(); ++j)
      if (i != j && contained_in(cover[i], cover[j]))
        return {false, "interval " + std::to_string(i) + " is contained in " +
                           std::to_string(j)};
  return {true, {}};
}

SubcoverResult finite_subcover(const std::vector<RatInterval>& cover, size_t n) {
  n = std::min(n, cover.size());
  auto pieces = merge_open(cover, n);
  const Rational one(1);

  // walk the disjoint sorted pieces; pos is the leftmost point of [0,1] not
  // yet known to be covered, and a point is covered only strictly inside an
  // open piece
  Rational pos(0);
  bool covered = false;
  Rational gap_end = one;
  for (const auto& [a, b] : pieces) {
    if (a < pos) {
      if (b > pos) pos = b;
      if (pos > one) {
        covered = true;
        break;
      }
    } else {
      gap_end = a < one ? a : one;
      break;
    }
  }
  if (!covered) {
    // the leftmost uncovered maximal segment is [pos, gap_end]
    return {SubcoverResult::Kind::Gap, {}, (pos + gap_end) / Rational(2)};
  }

  // greedy index selection over the original intervals
  std::vector<size_t> chosen;
  Rational reach(0);
  while (reach <= one) {
    bool found = false;
    size_t best = 0;
    Rational best_hi = reach;
    for (size_t i = 0; i < n; ++i) {
      const auto& iv = cover[i];
      if (iv.lo < reach && reach < iv.hi && (!found || iv.hi > best_hi)) {
        best = i;
        best_hi = iv.hi;
        found = true;
      }
    }
    if (!found) break;  // unreachable when covered
    chosen.push_back(best);
    reach = best_hi;
  }
  std::sort(chosen.begin(), chosen.end());
  chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
  return {SubcoverResult::Kind::Covered, chosen, {}};
}

Rational tent_sum(const std::vector<RatInterval>& cover, const Rational& x, int terms) {
  if (terms < 1) throw std::invalid_argument("tent_sum: terms >= 1");
  Rational sum(0);
  for (int i = 0; i < terms && i < int(cover.size()); ++i) {
    const auto& iv = cover[i];
    Rational h = iv.length() / Rational(2);
    if (h == Rational(0)) continue;
    Rational c = (iv.lo + iv.hi) / Rational(2);
    Rational cl = x;
    if (cl < iv.lo) cl = iv.lo;
    if (cl > iv.hi) cl = iv.hi;
    Rational tent = Rational(1) - (cl - c).abs() / h;
    if (tent > Rational(0)) sum = sum + Rational::pow2(-i) * tent;
  }
  return sum;
}

}  // namespace prw::cover

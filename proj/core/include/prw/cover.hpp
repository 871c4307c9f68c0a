// SPDX-License-Identifier: Apache-2.0
#ifndef PRW_COVER_HPP
#define PRW_COVER_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "prw/rational.hpp"

namespace prw::cover {

/// An interval with exact rational endpoints, open or closed, lo <= hi.
struct RatInterval {
  Rational lo, hi;
  enum class Kind { Open, Closed } kind = Kind::Open;

  Rational length() const { return hi - lo; }
  bool operator==(const RatInterval& o) const {
    return kind == o.kind && lo == o.lo && hi == o.hi;
  }
  bool contains(const Rational& q) const {
    if (kind == Kind::Open) return lo < q && q < hi;
    return lo <= q && q <= hi;
  }
  std::string str() const;
};

RatInterval open_iv(const Rational& lo, const Rational& hi);
RatInterval closed_iv(const Rational& lo, const Rational& hi);

/// One interval per line: `open a/b c/d` or `closed a/b c/d`.
std::optional<std::vector<RatInterval>> parse_cover(const std::string& text,
                                                    std::string* error = nullptr);
std::string print_cover(const std::vector<RatInterval>& cover);

struct UncoveredResult {
  enum class Kind { Point, PreconditionViolated };
  Kind kind;
  Rational point;
  std::string detail;
};

/// Given closed intervals of total length strictly below the open window's
/// length, produces a point of the window outside every closed interval by
/// maintaining the disjoint residual interval list and answering with the
/// midpoint of the first surviving piece. Exact arithmetic throughout.
UncoveredResult uncovered_point(const std::vector<RatInterval>& closed,
                                const RatInterval& window);

/// Exhaustive reference for uncovered_point: probes midpoints between
/// consecutive endpoint values. Empty when the window is fully covered.
std::optional<Rational> uncovered_point_bruteforce(const std::vector<RatInterval>& closed,
                                                   const RatInterval& window);

/// The singular cover around an enumerated point list: the i-th interval is
/// centered at points[i] with radius eps * 2^{-i-2}, so the lengths sum to
/// eps * (1 - 2^{-n}) after n intervals and to eps in the limit.
std::vector<RatInterval> singular_cover(const std::vector<Rational>& points,
                                        const Rational& eps);

/// The prime-grid intervals (c_{i,m}, d_{i,m}) at stage i >= 1 with
/// p_i the i-th prime and P_i the product of the first i primes:
///   c = (1 + 2m p_i) / P_i,   d = (1 + (2m+3) p_i) / P_i.
/// At a fixed stage they overlap pairwise into a cover of the line; across
/// stages no two of them share an endpoint and widths strictly shrink.
RatInterval cd_interval(int stage, const Int& m);

Int nth_prime(int i);        // 1-based: 2, 3, 5, ...
Int primorial(int i);        // product of the first i primes

/// Replays the input cover in phases: phase i emits those stage-i grid
/// intervals inside the union of the first i inputs that are not contained
/// in anything emitted before. The output is well-behaved: no endpoint in
/// {0,1}, no shared endpoints, no abutting pairs, no containments.
std::vector<RatInterval> normalize_well_behaved(const std::vector<RatInterval>& cover,
                                                int stages);

struct WellBehavedReport {
  bool ok;
  std::string violation;
};
WellBehavedReport check_well_behaved(const std::vector<RatInterval>& cover);

struct SubcoverResult {
  enum class Kind { Covered, Gap };
  Kind kind;
  std::vector<size_t> indices;  // a covering prefix-selection when covered
  Rational witness;             // an uncovered point otherwise
};

/// Exact endpoint sweep deciding [0,1] inside the union of the first n open
/// intervals. The gap witness is the midpoint of the leftmost uncovered
/// maximal segment.
SubcoverResult finite_subcover(const std::vector<RatInterval>& cover, size_t n);

/// Partial sum of the weighted tent maps erected on the first N intervals,
/// each tent rising to 1 at the center and vanishing at the endpoints with
/// weight 2^{-n}; positive exactly on the union of those intervals.
Rational tent_sum(const std::vector<RatInterval>& cover, const Rational& x, int terms);

}  // namespace prw::cover

#endif

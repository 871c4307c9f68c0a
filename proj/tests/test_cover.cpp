// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>
#include <set>

#include "prw/cover.hpp"

using namespace prw;
using namespace prw::cover;

namespace {

Rational rnd_unit(std::mt19937& rng, int den = 60) {
  long d = 1 + long(rng() % den);
  long n = long(rng() % (d + 1));
  return Rational(n, d);
}

}  // namespace

TEST_CASE("interval files round trip") {
  std::string text = "open -1/4 3/4\nclosed 1/5 1/2\n# comment\nopen 0 1\n";
  std::string err;
  auto c = parse_cover(text, &err);
  REQUIRE(c.has_value());
  REQUIRE(c->size() == 3);
  CHECK((*c)[0].kind == RatInterval::Kind::Open);
  CHECK((*c)[1].kind == RatInterval::Kind::Closed);
  CHECK(parse_cover(print_cover(*c), &err) == *c);
  CHECK(!parse_cover("open 1 0\n", &err).has_value());
  CHECK(!parse_cover("halfopen 0 1\n", &err).has_value());
}

TEST_CASE("uncovered point basics") {
  RatInterval window = open_iv(Rational(0), Rational(1));

  SUBCASE("empty list gives the midpoint") {
    UncoveredResult r = uncovered_point({}, window);
    REQUIRE(r.kind == UncoveredResult::Kind::Point);
    CHECK(r.point == Rational(1, 2));
  }

  SUBCASE("a single closed interval is dodged") {
    UncoveredResult r =
        uncovered_point({closed_iv(Rational(1, 5), Rational(1, 2))}, window);
    REQUIRE(r.kind == UncoveredResult::Kind::Point);
    CHECK(Rational(0) < r.point);
    CHECK(r.point < Rational(1));
    CHECK((r.point < Rational(1, 5) || r.point > Rational(1, 2)));
  }

  SUBCASE("precondition violations are reported") {
    UncoveredResult r =
        uncovered_point({closed_iv(Rational(0), Rational(1))}, window);
    CHECK(r.kind == UncoveredResult::Kind::PreconditionViolated);
    // exact equality of lengths also violates (strict inequality required)
    UncoveredResult r2 = uncovered_point(
        {closed_iv(Rational(0), Rational(1, 2)), closed_iv(Rational(1, 2), Rational(1))},
        window);
    CHECK(r2.kind == UncoveredResult::Kind::PreconditionViolated);
  }
}

TEST_CASE("uncovered point agrees with the brute-force sweep on 500 instances") {
  std::mt19937 rng(127);
  for (int round = 0; round < 500; ++round) {
    RatInterval window = open_iv(Rational(0), Rational(1));
    std::vector<RatInterval> closed;
    int n = int(rng() % 9);
    Rational total(0);
    for (int i = 0; i < n; ++i) {
      Rational lo = rnd_unit(rng);
      Rational len = rnd_unit(rng, 80) * Rational(1, 10);
      closed.push_back(closed_iv(lo, lo + len));
      total = total + len;
    }
    if (!(total < window.length())) continue;
    UncoveredResult mine = uncovered_point(closed, window);
    auto oracle = uncovered_point_bruteforce(closed, window);
    REQUIRE(mine.kind == UncoveredResult::Kind::Point);
    REQUIRE(oracle.has_value());
    // both points are valid witnesses: inside the window, outside every bar
    for (const auto& iv : closed) {
      CHECK(!iv.contains(mine.point));
      CHECK(!iv.contains(*oracle));
    }
    CHECK(window.contains(mine.point));
  }
}

TEST_CASE("residual length bookkeeping") {
  // surviving length >= window length - sum of closed lengths, phase by phase
  std::mt19937 rng(131);
  for (int round = 0; round < 50; ++round) {
    RatInterval window = open_iv(Rational(0), Rational(1));
    std::vector<RatInterval> closed;
    Rational total(0);
    for (int i = 0; i < 5; ++i) {
      Rational lo = rnd_unit(rng);
      Rational len = rnd_unit(rng, 40) * Rational(1, 12);
      closed.push_back(closed_iv(lo, lo + len));
      total = total + len;
    }
    if (!(total < Rational(1))) continue;
    // replay the subtraction phases by prefixes
    for (size_t k = 0; k <= closed.size(); ++k) {
      std::vector<RatInterval> prefix(closed.begin(), closed.begin() + long(k));
      Rational used(0);
      for (const auto& iv : prefix) used = used + iv.length();
      UncoveredResult r = uncovered_point(prefix, window);
      CHECK(r.kind == UncoveredResult::Kind::Point);
    }
  }
}

TEST_CASE("singular cover") {
  SUBCASE("lengths and membership") {
    std::vector<Rational> pts{Rational(0), Rational(1, 3), Rational(1, 2),
                              Rational(9, 10)};
    Rational eps(1, 2);
    auto cover = singular_cover(pts, eps);
    REQUIRE(cover.size() == pts.size());
    Rational sum(0);
    for (size_t i = 0; i < cover.size(); ++i) {
      CHECK(cover[i].contains(pts[i]));
      sum = sum + cover[i].length();
    }
    // partial sums are exactly eps (1 - 2^-n)
    CHECK(sum == eps * (Rational(1) - Rational::pow2(-long(pts.size()))));
  }

  SUBCASE("the first interval at eps = 1/2") {
    auto cover = singular_cover({Rational(0)}, Rational(1, 2));
    CHECK(cover[0].lo == Rational(-1, 8));
    CHECK(cover[0].hi == Rational(1, 8));
  }

  SUBCASE("prefixes never cover and uncovered_point always succeeds") {
    std::mt19937 rng(137);
    std::vector<Rational> pts;
    for (int i = 0; i < 30; ++i) pts.push_back(rnd_unit(rng));
    auto cover = singular_cover(pts, Rational(3, 5));
    for (size_t n = 1; n <= cover.size(); ++n) {
      SubcoverResult r = finite_subcover(cover, n);
      REQUIRE(r.kind == SubcoverResult::Kind::Gap);
      // the witness is genuinely uncovered
      for (size_t i = 0; i < n; ++i) CHECK(!cover[i].contains(r.witness));
      CHECK(Rational(0) <= r.witness);
      CHECK(r.witness <= Rational(1));
      // the closed-interval variant stays dodgeable in a padded window
      std::vector<RatInterval> closed;
      for (size_t i = 0; i < n; ++i) closed.push_back(closed_iv(cover[i].lo, cover[i].hi));
      UncoveredResult u = uncovered_point(
          closed, open_iv(Rational(-1, 10), Rational(11, 10)));
      CHECK(u.kind == UncoveredResult::Kind::Point);
    }
  }
}

TEST_CASE("prime grid intervals") {
  SUBCASE("primorials") {
    CHECK(nth_prime(1) == 2);
    CHECK(nth_prime(2) == 3);
    CHECK(nth_prime(5) == 11);
    CHECK(primorial(1) == 2);
    CHECK(primorial(3) == 30);
  }

  SUBCASE("stage one: overlapping unit-free intervals") {
    RatInterval i0 = cd_interval(1, 0);
    CHECK(i0.lo == Rational(1, 2));
    CHECK(i0.hi == Rational(7, 2));
    RatInterval i1 = cd_interval(1, 1);
    CHECK(i1.lo == Rational(5, 2));
    CHECK(i1.lo < i0.hi);  // consecutive intervals overlap
  }

  SUBCASE("fixed stage covers the line") {
    for (int stage = 1; stage <= 4; ++stage) {
      for (Int m = -10; m < 10; ++m) {
        RatInterval cur = cd_interval(stage, m);
        RatInterval next = cd_interval(stage, m + 1);
        CHECK(cur.lo < cur.hi);
        CHECK(next.lo < cur.hi);  // overlap, no gap
      }
    }
  }

  SUBCASE("no two intervals share an endpoint across stages") {
    std::set<std::string> endpoints;
    for (int stage = 1; stage <= 5; ++stage)
      for (Int m = -20; m <= 20; ++m) {
        RatInterval iv = cd_interval(stage, m);
        CHECK(endpoints.insert(iv.lo.str()).second);
        CHECK(endpoints.insert(iv.hi.str()).second);
        CHECK(iv.lo != Rational(0));
        CHECK(iv.lo != Rational(1));
        CHECK(iv.hi != Rational(0));
        CHECK(iv.hi != Rational(1));
      }
  }

  SUBCASE("widths shrink strictly across stages") {
    for (int stage = 1; stage < 6; ++stage)
      CHECK(cd_interval(stage + 1, 0).length() < cd_interval(stage, 0).length());
  }
}

TEST_CASE("well-behaved normalization") {
  std::mt19937 rng(139);

  SUBCASE("early stage output inside a single input") {
    std::vector<RatInterval> cover{open_iv(Rational(-1), Rational(2))};
    // stage-1 grid intervals have width 3 and never fit between the grid
    // points of (-1, 2); the exact m-range enumeration is empty
    CHECK(normalize_well_behaved(cover, 1).empty());
    auto out = normalize_well_behaved(cover, 2);
    CHECK(!out.empty());
    for (const auto& iv : out) {
      CHECK(Rational(-1) <= iv.lo);
      CHECK(iv.hi <= Rational(2));
    }
    auto rep = check_well_behaved(out);
    CHECK(rep.ok);
  }

  SUBCASE("outputs pass the three clauses on random covers") {
    for (int round = 0; round < 100; ++round) {
      std::vector<RatInterval> cover;
      int n = 1 + int(rng() % 6);
      for (int i = 0; i < n; ++i) {
        Rational lo = rnd_unit(rng) * Rational(3) - Rational(1);
        Rational len = rnd_unit(rng, 30) + Rational(1, 30);
        cover.push_back(open_iv(lo, lo + len));
      }
      auto out = normalize_well_behaved(cover, 5);
      auto rep = check_well_behaved(out);
      CHECK(rep.ok);
      // outputs stay inside the union of the inputs
      for (const auto& iv : out) {
        Rational mid = (iv.lo + iv.hi) / Rational(2);
        bool inside = false;
        for (const auto& in : cover)
          if (in.contains(mid)) inside = true;
        CHECK(inside);
      }
    }
  }

  SUBCASE("union preserved on a dyadic probe grid within emitted stages") {
    std::vector<RatInterval> cover{open_iv(Rational(-1, 3), Rational(1, 2)),
                                   open_iv(Rational(2, 5), Rational(6, 5))};
    auto out = normalize_well_behaved(cover, 6);
    // probe 2^-8 grid: points covered by outputs must be covered by inputs,
    // and points well inside the inputs get covered by some emitted stage
    for (int i = -256; i <= 512; ++i) {
      Rational x(i, 256);
      bool in_orig = false, in_out = false;
      for (const auto& iv : cover)
        if (iv.contains(x)) in_orig = true;
      for (const auto& iv : out)
        if (iv.contains(x)) in_out = true;
      if (in_out) CHECK(in_orig);
      // interior points at distance > stage-6 width from endpoints are found
      if (in_orig) {
        Rational margin = cd_interval(6, 0).length();
        bool deep = false;
        for (const auto& iv : cover)
          if (iv.lo + margin < x && x < iv.hi - margin) deep = true;
        if (deep) CHECK(in_out);
      }
    }
  }

  SUBCASE("finite subcover status is preserved") {
    // a covering family stays covering by some stage
    std::vector<RatInterval> covering{open_iv(Rational(-1, 4), Rational(2, 3)),
                                      open_iv(Rational(1, 3), Rational(5, 4))};
    REQUIRE(finite_subcover(covering, 2).kind == SubcoverResult::Kind::Covered);
    bool covered = false;
    for (int stages = 2; stages <= 8 && !covered; ++stages) {
      auto out = normalize_well_behaved(covering, stages);
      covered =
          finite_subcover(out, out.size()).kind == SubcoverResult::Kind::Covered;
    }
    CHECK(covered);
  }
}

TEST_CASE("finite subcover decision") {
  SUBCASE("worked examples") {
    std::vector<RatInterval> c1{open_iv(Rational(-1, 4), Rational(3, 4)),
                                open_iv(Rational(1, 2), Rational(5, 4))};
    SubcoverResult r1 = finite_subcover(c1, 2);
    REQUIRE(r1.kind == SubcoverResult::Kind::Covered);
    CHECK(r1.indices == std::vector<size_t>{0, 1});

    std::vector<RatInterval> c2{open_iv(Rational(-1, 4), Rational(1, 2))};
    SubcoverResult r2 = finite_subcover(c2, 1);
    REQUIRE(r2.kind == SubcoverResult::Kind::Gap);
    CHECK(r2.witness == Rational(3, 4));
  }

  SUBCASE("abutting intervals leave their shared endpoint uncovered") {
    std::vector<RatInterval> c{open_iv(Rational(-1), Rational(1, 2)),
                               open_iv(Rational(1, 2), Rational(2))};
    SubcoverResult r = finite_subcover(c, 2);
    REQUIRE(r.kind == SubcoverResult::Kind::Gap);
    CHECK(r.witness == Rational(1, 2));
  }

  SUBCASE("endpoint 0 and 1 are inside open intervals only strictly") {
    std::vector<RatInterval> c{open_iv(Rational(0), Rational(2))};
    SubcoverResult r = finite_subcover(c, 1);
    REQUIRE(r.kind == SubcoverResult::Kind::Gap);
    CHECK(r.witness == Rational(0));
  }
}

TEST_CASE("tent sums") {
  std::vector<RatInterval> cover{open_iv(Rational(-1), Rational(1)),
                                 open_iv(Rational(1, 4), Rational(3, 4)),
                                 open_iv(Rational(7, 8), Rational(9, 8))};

  SUBCASE("outside every interval the sum is zero") {
    CHECK(tent_sum(cover, Rational(2), 3) == Rational(0));
    CHECK(tent_sum(cover, Rational(-2), 3) == Rational(0));
    // endpoints count as outside (open intervals)
    CHECK(tent_sum({open_iv(Rational(0), Rational(1))}, Rational(1), 1) ==
          Rational(0));
  }

  SUBCASE("the center of a wide interval contributes exactly its weight") {
    CHECK(tent_sum(cover, Rational(0), 1) == Rational(1));  // interval 0, width 2
  }

  SUBCASE("positive exactly on the union of the first N intervals") {
    std::mt19937 rng(149);
    for (int i = 0; i < 300; ++i) {
      Rational x = Rational(long(rng() % 4001) - 2000, 1000);
      for (int terms = 1; terms <= 3; ++terms) {
        bool inside = false;
        for (int n = 0; n < terms; ++n)
          if (cover[size_t(n)].contains(x)) inside = true;
        CHECK((tent_sum(cover, x, terms) > Rational(0)) == inside);
      }
    }
  }

  SUBCASE("partial sums are monotone in the number of terms") {
    std::mt19937 rng(151);
    for (int i = 0; i < 100; ++i) {
      Rational x = Rational(long(rng() % 4001) - 2000, 1000);
      Rational prev(0);
      for (int terms = 1; terms <= 3; ++terms) {
        Rational cur = tent_sum(cover, x, terms);
        CHECK(cur >= prev);
        prev = cur;
      }
    }
  }
}

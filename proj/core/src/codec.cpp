// SPDX-License-Identifier: Apache-2.0
#include "prw/codec.hpp"

#include <mutex>
#include <stdexcept>
#include <vector>

namespace prw::codec {

Int pair(const Int& m, const Int& n) {
  if (m < 0 || n < 0) throw std::invalid_argument("codec::pair: negative input");
  Int s = m + n;
  return s * (s + 1) / 2 + n;
}

std::pair<Int, Int> unpair(const Int& k) {
  if (k < 0) throw std::invalid_argument("codec::unpair: negative input");
  // s = floor((sqrt(8k+1)-1)/2), the diagonal index
  Int d = 8 * k + 1;
  Int r;
  mpz_sqrt(r.get_mpz_t(), d.get_mpz_t());
  Int s = (r - 1) / 2;
  Int t = s * (s + 1) / 2;
  Int n = k - t;
  return {s - n, n};
}

Int proj1(const Int& k) { return unpair(k).first; }
Int proj2(const Int& k) { return unpair(k).second; }

namespace {

// The positive rationals in coprime-pair order (numerator+denominator, then
// numerator), cached as the enumeration is consumed.
struct PosEnum {
  std::vector<std::pair<Int, Int>> cache{{1, 1}};
  Int next_sum = 3;

  void grow_one_diagonal() {
    for (Int cand = 1; cand < next_sum; ++cand) {
      Int g;
      mpz_gcd(g.get_mpz_t(), cand.get_mpz_t(), Int(next_sum - cand).get_mpz_t());
      if (g == 1) cache.emplace_back(cand, next_sum - cand);
    }
    ++next_sum;
  }

  const std::pair<Int, Int>& at(size_t idx) {
    while (cache.size() <= idx) grow_one_diagonal();
    return cache[idx];
  }
};

std::mutex g_rat_mu;
PosEnum& pos_enum() {
  static PosEnum e;
  return e;
}

}  // namespace

Rational rat_decode(const Int& n) {
  if (n < 0) throw std::invalid_argument("codec::rat_decode: negative input");
  if (n == 0) return Rational(0);
  if (!n.fits_ulong_p()) throw std::invalid_argument("codec::rat_decode: code too large");
  unsigned long idx = Int((n - 1) / 2).get_ui();
  bool neg = mpz_even_p(n.get_mpz_t());
  std::lock_guard<std::mutex> lk(g_rat_mu);
  const auto& [p, q] = pos_enum().at(idx);
  Rational r(p, q);
  return neg ? -r : r;
}

Int rat_encode(const Rational& q) {
  if (q == Rational(0)) return 0;
  Rational a = q.abs();
  std::lock_guard<std::mutex> lk(g_rat_mu);
  PosEnum& e = pos_enum();
  Int sum = a.num() + a.den();
  for (size_t idx = 0;; ++idx) {
    while (e.cache.size() <= idx) {
      if (e.next_sum > sum + 1) break;  // cannot appear later: diagonal passed
      e.grow_one_diagonal();
    }
    if (e.cache.size() <= idx)
      throw std::logic_error("codec::rat_encode: enumeration invariant broken");
    const auto& [p, d] = e.cache[idx];
    if (p == a.num() && d == a.den())
      return q.sign() > 0 ? Int(2 * idx + 1) : Int(2 * idx + 2);
  }
}

Int int_encode(const Int& k) { return k >= 0 ? Int(2 * k) : Int(1 - 2 * k); }

Int int_decode(const Int& n) {
  if (n < 0) throw std::invalid_argument("codec::int_decode: negative input");
  if (mpz_even_p(n.get_mpz_t())) return n / 2;
  return (1 - n) / 2;
}

}  // namespace prw::codec

// SPDX-License-Identifier: Apache-2.0
#ifndef PRW_CODEC_HPP
#define PRW_CODEC_HPP

#include <utility>

#include "prw/rational.hpp"

namespace prw::codec {

/// Cantor pairing <m,n> = (m+n)(m+n+1)/2 + n, a bijection N^2 -> N.
Int pair(const Int& m, const Int& n);
std::pair<Int, Int> unpair(const Int& k);
Int proj1(const Int& k);
Int proj2(const Int& k);

/// Zig-zag enumeration of Q: 0, 1, -1, 1/2, -1/2, 2, -2, 1/3, -1/3, 3, -3, ...
/// Positive rationals are ordered by numerator+denominator, then by numerator,
/// restricted to coprime pairs; each positive value is followed by its negation.
Rational rat_decode(const Int& n);
Int rat_encode(const Rational& q);

/// Integer coding k >= 0 -> 2k, k < 0 -> 1-2k (a bijection Z -> N).
Int int_encode(const Int& k);
Int int_decode(const Int& n);

}  // namespace prw::codec

#endif

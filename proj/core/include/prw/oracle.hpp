// SPDX-License-Identifier: Apache-2.0
#ifndef PRW_ORACLE_HPP
#define PRW_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prw/rational.hpp"

namespace prw {

/// An infinite binary sequence given by a finite prefix and an eventually
/// periodic tail, so every bit query is exact and terminating.
struct Oracle {
  std::vector<uint8_t> prefix;
  std::vector<uint8_t> period;  // nonempty

  Oracle() : period{0} {}
  Oracle(std::vector<uint8_t> pre, std::vector<uint8_t> per);

  int bit(const Int& i) const;

  /// Text form `prefix=0110; period=01`. An empty prefix prints as `prefix=;`.
  std::string str() const;
  static std::optional<Oracle> parse(const std::string& text);

  bool operator==(const Oracle& o) const {
    return prefix == o.prefix && period == o.period;
  }
};

}  // namespace prw

#endif

// SPDX-License-Identifier: Apache-2.0
#include "prw/oracle.hpp"

#include <stdexcept>

namespace prw {

Oracle::Oracle(std::vector<uint8_t> pre, std::vector<uint8_t> per)
    : prefix(std::move(pre)), period(std::move(per)) {
  if (period.empty()) throw std::invalid_argument("Oracle: empty period");
  for (auto b : prefix)
    if (b > 1) throw std::invalid_argument("Oracle: bits must be 0/1");
  for (auto b : period)
    if (b > 1) throw std::invalid_argument("Oracle: bits must be 0/1");
}

int Oracle::bit(const Int& i) const {
  if (i < 0) throw std::invalid_argument("Oracle::bit: negative index");
  Int len(static_cast<unsigned long>(prefix.size()));
  if (i < len) return prefix[i.get_ui()];
  Int off = i - len;
  Int m;
  mpz_mod_ui(m.get_mpz_t(), off.get_mpz_t(), static_cast<unsigned long>(period.size()));
  return period[m.get_ui()];
}

std::string Oracle::str() const {
  std::string s = "prefix=";
  for (auto b : prefix) s += char('0' + b);
  s += "; period=";
  for (auto b : period) s += char('0' + b);
  return s;
}

static bool read_bits(const std::string& s, size_t& i, std::vector<uint8_t>& out) {
  while (i < s.size() && (s[i] == '0' || s[i] == '1')) {
    out.push_back(uint8_t(s[i] - '0'));
    ++i;
  }
  return true;
}

std::optional<Oracle> Oracle::parse(const std::string& text) {
  size_t i = 0;
  auto skip_ws = [&] { while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i; };
  auto expect = [&](const std::string& word) {
    skip_ws();
    if (text.compare(i, word.size(), word) != 0) return false;
    i += word.size();
    return true;
  };
  std::vector<uint8_t> pre, per;
  if (!expect("prefix=")) return std::nullopt;
  read_bits(text, i, pre);
  if (!expect(";")) return std::nullopt;
  if (!expect("period=")) return std::nullopt;
  read_bits(text, i, per);
  skip_ws();
  if (i != text.size() || per.empty()) return std::nullopt;
  return Oracle(pre, per);
}

}  // namespace prw

#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "lehmer/errors.hpp"

namespace lehmer {

// Expression templates off so arithmetic results are plain values.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using u64 = std::uint64_t;

inline u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

inline u64 pow_mod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

inline bool fits_u64(const BigInt& x) {
  return x >= 0 && x <= std::numeric_limits<u64>::max();
}

inline u64 to_u64(const BigInt& x) {
  if (!fits_u64(x)) throw InvalidArgument("integer " + x.str() + " does not fit in 64 bits");
  return x.convert_to<u64>();
}

inline BigInt pow10(unsigned exponent) {
  return boost::multiprecision::pow(BigInt(10), exponent);
}

inline BigInt big_pow(const BigInt& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

// Accepts plain decimal digits, or 10^e / 1e<e> shorthand for powers of ten.
inline BigInt parse_bigint(std::string_view text) {
  auto digits_only = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
      if (c < '0' || c > '9') return false;
    }
    return true;
  };
  for (std::string_view prefix : {std::string_view("10^"), std::string_view("1e")}) {
    if (text.substr(0, prefix.size()) == prefix && digits_only(text.substr(prefix.size()))) {
      auto exp_text = text.substr(prefix.size());
      if (exp_text.size() > 6) throw InvalidArgument("exponent too large: " + std::string(text));
      return pow10(static_cast<unsigned>(std::stoul(std::string(exp_text))));
    }
  }
  if (!digits_only(text)) {
    throw InvalidArgument("not a nonnegative integer: '" + std::string(text) + "'");
  }
  return BigInt(std::string(text));
}

}  // namespace lehmer

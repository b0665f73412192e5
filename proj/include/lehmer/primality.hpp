#pragma once

#include <array>
#include <random>

#include <boost/multiprecision/miller_rabin.hpp>

#include "lehmer/bigint.hpp"

namespace lehmer {

struct PrimalityResult {
  bool prime = false;
  // False only for a "prime" answer from randomized Miller-Rabin (n >= 2^64).
  bool deterministic = true;
};

// Deterministic Miller-Rabin for the full 64-bit range (Jim Sinclair's bases).
inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  constexpr std::array<u64, 7> bases = {2, 325, 9375, 28178, 450775, 9780504, 1795265022};
  for (u64 a : bases) {
    a %= n;
    if (a == 0) continue;
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// 65 random-base rounds above 2^64 bound the error by 4^-65 < 2^-128. The
// generator is seeded from n so repeated calls agree.
inline PrimalityResult primality(const BigInt& n) {
  if (n < 2) return {false, true};
  if (fits_u64(n)) return {is_prime_u64(n.convert_to<u64>()), true};
  std::mt19937_64 gen(static_cast<u64>(n & 0xFFFFFFFFFFFFFFFFULL) ^ 0x9E3779B97F4A7C15ULL);
  // A Miller-Rabin witness proves compositeness; only "prime" is probabilistic.
  bool prime = boost::multiprecision::miller_rabin_test(n, 65, gen);
  return {prime, !prime};
}

inline bool is_prime(const BigInt& n) { return primality(n).prime; }

}  // namespace lehmer

#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "lehmer/bigint.hpp"

namespace lehmer {

// Primes <= limit by the sieve of Eratosthenes.
inline std::vector<u64> primes_up_to(u64 limit) {
  std::vector<u64> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

inline u64 isqrt(u64 n) {
  auto r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Segment [lo, hi] of the integers with their prime divisors <= sqrt(hi)
// removed. The callback sees (index, prime, multiplicity) for each such
// divisor; the returned cofactor array holds what is left (1 or one prime
// larger than sqrt(hi)).
template <typename OnPrime>
std::vector<u64> sieve_segment(u64 lo, u64 hi, const std::vector<u64>& base_primes,
                               OnPrime&& on_prime) {
  std::vector<u64> rest(hi - lo + 1);
  for (u64 n = lo; n <= hi; ++n) rest[n - lo] = n;
  for (u64 p : base_primes) {
    if (p * p > hi) break;
    u64 start = (lo + p - 1) / p * p;
    for (u64 m = start; m <= hi; m += p) {
      u64& r = rest[m - lo];
      unsigned mult = 0;
      while (r % p == 0) {
        r /= p;
        ++mult;
      }
      on_prime(static_cast<std::size_t>(m - lo), p, mult);
    }
  }
  return rest;
}

// Euler phi for every n in [lo, hi]; base_primes must cover sqrt(hi).
inline std::vector<u64> phi_segment(u64 lo, u64 hi, const std::vector<u64>& base_primes) {
  std::vector<u64> phi(hi - lo + 1);
  for (u64 n = lo; n <= hi; ++n) phi[n - lo] = n;
  auto rest = sieve_segment(lo, hi, base_primes, [&](std::size_t i, u64 p, unsigned) {
    phi[i] -= phi[i] / p;
  });
  for (std::size_t i = 0; i < rest.size(); ++i) {
    if (rest[i] > 1) phi[i] -= phi[i] / rest[i];
  }
  return phi;
}

}  // namespace lehmer

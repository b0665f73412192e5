#pragma once

#include <algorithm>
#include <thread>
#include <vector>

#include "lehmer/bigint.hpp"
#include "lehmer/errors.hpp"
#include "lehmer/factorization.hpp"
#include "lehmer/primality.hpp"
#include "lehmer/sieve.hpp"

namespace lehmer {

struct CarmichaelCertificate {
  BigInt n;
  bool is_carmichael = false;
  bool squarefree = false;
  bool composite = false;
  // Every prime p | n with (p - 1) not dividing (n - 1).
  std::vector<BigInt> korselt_failures;
};

// Korselt: n is Carmichael iff composite, squarefree, and (p-1) | (n-1) for
// every prime p | n.
inline CarmichaelCertificate korselt_check(const BigInt& n) {
  if (n <= 1) throw InvalidArgument("korselt_check: n must be >= 2, got " + n.str());
  CarmichaelCertificate cert;
  cert.n = n;
  Factorization f = factor(n);
  cert.composite = !(f.omega() == 1 && f.factors()[0].exponent == 1);
  cert.squarefree = is_squarefree(f);
  for (const auto& pp : f.factors()) {
    if ((n - 1) % (pp.prime - 1) != 0) cert.korselt_failures.push_back(pp.prime);
  }
  cert.is_carmichael = cert.composite && cert.squarefree && cert.korselt_failures.empty();
  if (cert.is_carmichael && (n & 1) == 0) {
    throw Error("korselt_check: certified an even Carmichael number " + n.str());
  }
  return cert;
}

inline constexpr u64 kFermatOracleLimit = 1'000'000;

// Brute force over every base: b^n == b (mod n) for all b in [0, n). Shares
// no code with korselt_check beyond modular exponentiation.
inline bool fermat_oracle(u64 n) {
  if (n < 2 || n > kFermatOracleLimit) {
    throw InvalidArgument("fermat_oracle: n must lie in [2, 10^6], got " + std::to_string(n));
  }
  bool composite = false;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      composite = true;
      break;
    }
  }
  if (!composite) throw InvalidArgument("fermat_oracle: n must be composite, got " + std::to_string(n));
  for (u64 b = 0; b < n; ++b) {
    if (pow_mod(b, n, n) != b) return false;
  }
  return true;
}

namespace detail {

inline std::vector<u64> carmichael_segment(u64 lo, u64 hi, const std::vector<u64>& base_primes) {
  const std::size_t len = hi - lo + 1;
  std::vector<char> rejected(len, 0);
  std::vector<char> composite(len, 0);
  auto rest = sieve_segment(lo, hi, base_primes, [&](std::size_t i, u64 p, unsigned mult) {
    u64 n = lo + i;
    if (n != p) composite[i] = 1;
    if (mult > 1 || (n - 1) % (p - 1) != 0) rejected[i] = 1;
  });
  std::vector<u64> found;
  for (std::size_t i = 0; i < len; ++i) {
    u64 n = lo + i;
    if ((n & 1) == 0 || !composite[i] || rejected[i]) continue;
    if (rest[i] > 1 && (n - 1) % (rest[i] - 1) != 0) continue;
    found.push_back(n);
  }
  return found;
}

}  // namespace detail

// Carmichael numbers in [lo, hi] ascending. The range is split into `jobs`
// disjoint chunks; output does not depend on the split.
inline std::vector<u64> carmichael_in_range(u64 lo, u64 hi, unsigned jobs = 1) {
  if (lo < 2 || lo > hi) {
    throw InvalidArgument("carmichael_in_range: need 2 <= lo <= hi, got [" + std::to_string(lo) +
                          ", " + std::to_string(hi) + "]");
  }
  const auto base = primes_up_to(isqrt(hi) + 1);
  constexpr u64 kSegment = 1 << 16;
  std::vector<std::pair<u64, u64>> segments;
  for (u64 a = lo; a <= hi; a += kSegment) {
    segments.emplace_back(a, std::min(hi, a + kSegment - 1));
    if (hi - a < kSegment) break;
  }
  std::vector<std::vector<u64>> parts(segments.size());
  jobs = std::max(1U, jobs);
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      for (std::size_t s = w; s < segments.size(); s += jobs) {
        parts[s] = detail::carmichael_segment(segments[s].first, segments[s].second, base);
      }
    });
  }
  for (auto& t : workers) t.join();
  std::vector<u64> out;
  for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  return out;
}

}  // namespace lehmer

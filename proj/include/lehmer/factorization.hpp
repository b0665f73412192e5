#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/integer.hpp>

#include "lehmer/bigint.hpp"
#include "lehmer/errors.hpp"
#include "lehmer/primality.hpp"

namespace lehmer {

struct PrimePower {
  BigInt prime;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Prime-exponent list of a positive integer, primes strictly increasing.
class Factorization {
 public:
  Factorization() = default;  // the empty factorization of 1

  // Validates the invariants: increasing primes, each prime, exponents >= 1.
  static Factorization from_factors(std::vector<PrimePower> factors) {
    Factorization f;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const auto& pp = factors[i];
      if (pp.exponent == 0) throw InvalidArgument("zero exponent in factorization");
      if (!is_prime(pp.prime)) throw InvalidArgument(pp.prime.str() + " is not prime");
      if (i > 0 && factors[i - 1].prime >= pp.prime) {
        throw InvalidArgument("factorization primes must be strictly increasing");
      }
      f.value_ *= big_pow(pp.prime, pp.exponent);
    }
    f.factors_ = std::move(factors);
    return f;
  }

  const BigInt& value() const noexcept { return value_; }
  std::span<const PrimePower> factors() const noexcept { return factors_; }
  std::size_t omega() const noexcept { return factors_.size(); }
  bool empty() const noexcept { return factors_.empty(); }

  const BigInt& smallest_prime() const {
    if (factors_.empty()) throw InvalidArgument("1 has no prime factor");
    return factors_.front().prime;
  }

  unsigned exponent_of(const BigInt& p) const {
    for (const auto& pp : factors_) {
      if (pp.prime == p) return pp.exponent;
    }
    return 0;
  }

  bool divisible_by_prime(const BigInt& p) const { return exponent_of(p) > 0; }

  friend Factorization operator*(const Factorization& a, const Factorization& b) {
    std::map<BigInt, unsigned> merged;
    for (const auto& pp : a.factors_) merged[pp.prime] += pp.exponent;
    for (const auto& pp : b.factors_) merged[pp.prime] += pp.exponent;
    Factorization f;
    for (auto& [p, e] : merged) f.factors_.push_back({p, e});
    f.value_ = a.value_ * b.value_;
    return f;
  }

  friend bool operator==(const Factorization& a, const Factorization& b) {
    return a.factors_ == b.factors_;
  }

  // "3 * 11 * 17", "2^2 * 3"; "1" for the empty factorization.
  std::string str() const {
    if (factors_.empty()) return "1";
    std::string out;
    for (const auto& pp : factors_) {
      if (!out.empty()) out += " * ";
      out += pp.prime.str();
      if (pp.exponent > 1) out += "^" + std::to_string(pp.exponent);
    }
    return out;
  }

 private:
  BigInt value_ = 1;
  std::vector<PrimePower> factors_;
};

namespace detail {

inline constexpr u64 kTrialDivisionBound = 10'000'000;

inline u64 pollard_brent_u64(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    auto f = [&](u64 x) { return (mul_mod(x, x, n) + c) % n; };
    u64 y = 2, x = 2, ys = 2, g = 1, q = 1;
    constexpr u64 m = 128;
    u64 r = 1;
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline BigInt pollard_brent(const BigInt& n) {
  if (fits_u64(n)) return pollard_brent_u64(n.convert_to<u64>());
  if ((n & 1) == 0) return 2;
  for (unsigned c = 1;; ++c) {
    auto f = [&](const BigInt& x) { return BigInt((x * x + c) % n); };
    BigInt y = 2, x = 2, ys = 2, g = 1, q = 1;
    constexpr unsigned m = 128;
    BigInt r = 1;
    do {
      x = y;
      for (BigInt i = 0; i < r; ++i) y = f(y);
      BigInt k = 0;
      do {
        ys = y;
        BigInt steps = std::min(BigInt(m), BigInt(r - k));
        for (BigInt i = 0; i < steps; ++i) {
          y = f(y);
          q = (q * boost::multiprecision::abs(x - y)) % n;
        }
        g = boost::multiprecision::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = boost::multiprecision::gcd(boost::multiprecision::abs(x - ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void split_composite(const BigInt& n, std::map<BigInt, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  BigInt d = pollard_brent(n);
  split_composite(d, out);
  split_composite(n / d, out);
}

inline void trial_divide_u64(u64 n, std::map<BigInt, unsigned>& out) {
  while (n % 2 == 0) {
    ++out[2];
    n /= 2;
  }
  for (u64 d = 3; d < kTrialDivisionBound && d * d <= n; d += 2) {
    while (n % d == 0) {
      ++out[d];
      n /= d;
    }
  }
  if (n > 1) split_composite(n, out);
}

}  // namespace detail

// Trial division below 10^7, then Pollard-rho with Brent's cycle detection
// on whatever cofactor remains.
inline Factorization factor(const BigInt& n) {
  if (n < 1) throw InvalidArgument("factor: n must be >= 1, got " + n.str());
  std::map<BigInt, unsigned> found;
  if (fits_u64(n)) {
    detail::trial_divide_u64(n.convert_to<u64>(), found);
  } else {
    BigInt rest = n;
    while ((rest & 1) == 0) {
      ++found[2];
      rest >>= 1;
    }
    for (u64 d = 3; d < detail::kTrialDivisionBound; d += 2) {
      if (fits_u64(rest)) break;
      while (boost::multiprecision::integer_modulus(rest, d) == 0) {
        ++found[d];
        rest /= d;
      }
    }
    if (fits_u64(rest)) {
      detail::trial_divide_u64(rest.convert_to<u64>(), found);
    } else {
      detail::split_composite(rest, found);
    }
  }
  std::vector<PrimePower> factors;
  factors.reserve(found.size());
  for (auto& [p, e] : found) factors.push_back({p, e});
  Factorization f = Factorization::from_factors(std::move(factors));
  return f;
}

inline BigInt euler_phi(const Factorization& f) {
  BigInt result = 1;
  for (const auto& pp : f.factors()) {
    result *= big_pow(pp.prime, pp.exponent - 1) * (pp.prime - 1);
  }
  return result;
}

inline BigInt sigma(const Factorization& f) {
  BigInt result = 1;
  for (const auto& pp : f.factors()) {
    result *= (big_pow(pp.prime, pp.exponent + 1) - 1) / (pp.prime - 1);
  }
  return result;
}

inline std::vector<BigInt> divisors(const Factorization& f) {
  std::vector<BigInt> out{1};
  for (const auto& pp : f.factors()) {
    const std::size_t base = out.size();
    BigInt power = 1;
    for (unsigned e = 1; e <= pp.exponent; ++e) {
      power *= pp.prime;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * power);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool is_squarefree(const Factorization& f) {
  return std::all_of(f.factors().begin(), f.factors().end(),
                     [](const PrimePower& pp) { return pp.exponent == 1; });
}

}  // namespace lehmer

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lehmer/bigint.hpp"
#include "lehmer/bounds.hpp"
#include "lehmer/carmichael.hpp"
#include "lehmer/errors.hpp"
#include "lehmer/factorization.hpp"
#include "lehmer/group_spec.hpp"
#include "lehmer/order_spectrum.hpp"
#include "lehmer/pi_bounds.hpp"
#include "lehmer/primality.hpp"
#include "lehmer/rational.hpp"

namespace lehmer {

// Throughout, k is the multiplier in k * phi(n) = n - 1 and q is the least
// prime factor of n. Any composite solution is a Carmichael number, so odd
// and squarefree.

// Small primes whose divisibility a symbolic profile can pin down.
inline constexpr std::array<unsigned, 5> kTrackedPrimes = {3, 5, 7, 11, 13};

// Known lower bounds n > 10^e for a composite solution: 10^30 unconditionally,
// 10^8171 once k >= 3.
inline constexpr unsigned kBaseSizeExponent = 30;
inline constexpr unsigned kSizeExponentForK3 = 8171;

enum class Divisibility { unknown, divides, not_divides };

// Two primes of a Carmichael number n cannot satisfy a | b - 1: b - 1 | n - 1
// would give a | n - 1 and a | n.
inline bool carmichael_compatible(const BigInt& a, const BigInt& b) {
  if (a == b) return true;
  return (b - 1) % a != 0 && (a - 1) % b != 0;
}

// What is known about a (hypothetical) solution n: either n itself, or a set
// of divisibility constraints on a symbolic n > 10^e.
class LehmerProfile {
 public:
  static LehmerProfile generic(unsigned size_exponent = kBaseSizeExponent) {
    LehmerProfile p;
    p.size_exponent_ = size_exponent;
    return p;
  }

  static LehmerProfile concrete(Factorization f) {
    LehmerProfile p;
    p.factorization_ = std::move(f);
    return p;
  }

  LehmerProfile& divides(unsigned prime) { return mark(prime, Divisibility::divides); }
  LehmerProfile& not_divides(unsigned prime) { return mark(prime, Divisibility::not_divides); }

  LehmerProfile& with_smallest_prime(BigInt q) {
    require_symbolic();
    smallest_prime_ = std::move(q);
    return *this;
  }

  LehmerProfile& with_size_exponent(unsigned e) {
    require_symbolic();
    size_exponent_ = e;
    return *this;
  }

  bool is_concrete() const noexcept { return factorization_.has_value(); }
  const std::optional<Factorization>& factorization() const noexcept { return factorization_; }
  unsigned size_exponent() const noexcept { return size_exponent_; }

  Divisibility divisibility(unsigned prime) const {
    if (factorization_) {
      return factorization_->divisible_by_prime(prime) ? Divisibility::divides : Divisibility::not_divides;
    }
    auto it = marks_.find(prime);
    return it == marks_.end() ? Divisibility::unknown : it->second;
  }

  // Exact least prime factor when the constraints determine it.
  std::optional<BigInt> smallest_prime() const {
    if (factorization_) return factorization_->smallest_prime();
    if (smallest_prime_) return smallest_prime_;
    for (unsigned p : kTrackedPrimes) {
      auto d = divisibility(p);
      if (d == Divisibility::divides) return BigInt(p);
      if (d == Divisibility::unknown) return std::nullopt;
    }
    return std::nullopt;
  }

  // Least prime factor compatible with the constraints.
  BigInt smallest_prime_lower_bound() const {
    if (auto q = smallest_prime()) return *q;
    for (unsigned p : kTrackedPrimes) {
      if (divisibility(p) != Divisibility::not_divides) return p;
    }
    return 17;
  }

  // Primes known to divide n.
  std::vector<BigInt> known_prime_divisors() const {
    std::vector<BigInt> out;
    if (factorization_) {
      for (const auto& pp : factorization_->factors()) out.push_back(pp.prime);
      return out;
    }
    for (unsigned p : kTrackedPrimes) {
      if (divisibility(p) == Divisibility::divides) out.emplace_back(p);
    }
    if (smallest_prime_ && std::find(out.begin(), out.end(), *smallest_prime_) == out.end()) {
      out.push_back(*smallest_prime_);
      std::sort(out.begin(), out.end());
    }
    return out;
  }

  std::optional<std::string> inconsistency() const {
    if (factorization_) {
      const BigInt& n = factorization_->value();
      if (n < 3 || (n & 1) == 0) return "profile needs an odd n >= 3, got " + n.str();
      if (factorization_->omega() == 1 && factorization_->factors()[0].exponent == 1) {
        return n.str() + " is prime";
      }
      return std::nullopt;
    }
    if (smallest_prime_) {
      const BigInt& q = *smallest_prime_;
      if (q < 3 || !is_prime(q)) return "q must be an odd prime, got " + q.str();
      for (unsigned p : kTrackedPrimes) {
        if (p < q && divisibility(p) == Divisibility::divides) {
          return "q=" + q.str() + " but " + std::to_string(p) + " | n";
        }
        if (p == q && divisibility(p) == Divisibility::not_divides) {
          return "q=" + q.str() + " but " + q.str() + " does not divide n";
        }
      }
    }
    auto known = known_prime_divisors();
    for (std::size_t i = 0; i < known.size(); ++i) {
      for (std::size_t j = i + 1; j < known.size(); ++j) {
        if (!carmichael_compatible(known[i], known[j])) {
          return known[i].str() + " | n and " + known[j].str() + " | n cannot both hold for a Carmichael number";
        }
      }
    }
    return std::nullopt;
  }

  void validate() const {
    if (auto why = inconsistency()) throw InvalidArgument("inconsistent profile: " + *why);
  }

  // Marks implied by an explicit q: tracked primes below q cannot divide n.
  LehmerProfile with_forced_marks() const {
    LehmerProfile p = *this;
    if (!factorization_ && smallest_prime_) {
      for (unsigned t : kTrackedPrimes) {
        if (t < *smallest_prime_) p.marks_[t] = Divisibility::not_divides;
        if (t == *smallest_prime_) p.marks_[t] = Divisibility::divides;
      }
    }
    return p;
  }

  std::string str() const {
    if (factorization_) return "n=" + factorization_->value().str();
    std::vector<std::string> parts;
    for (unsigned p : kTrackedPrimes) {
      auto d = divisibility(p);
      if (d == Divisibility::divides) parts.push_back(std::to_string(p) + "|n");
      if (d == Divisibility::not_divides) parts.push_back(std::to_string(p) + "!|n");
    }
    if (smallest_prime_) parts.push_back("q=" + smallest_prime_->str());
    parts.push_back("N0=10^" + std::to_string(size_exponent_));
    std::string out;
    for (const auto& s : parts) out += (out.empty() ? "" : ",") + s;
    return out;
  }

  // Comma-separated tokens: generic | n=<int> | p|n | p!|n | q=<prime> | N0=10^e.
  static LehmerProfile parse(std::string_view text) {
    LehmerProfile p = generic();
    std::string token;
    std::stringstream in{std::string(text)};
    while (std::getline(in, token, ',')) {
      token.erase(std::remove_if(token.begin(), token.end(), [](unsigned char c) { return std::isspace(c); }),
                  token.end());
      if (token.empty() || token == "generic") continue;
      if (token.rfind("n=", 0) == 0) {
        p = concrete(factor(parse_bigint(token.substr(2))));
      } else if (token.rfind("q=", 0) == 0) {
        p.with_smallest_prime(parse_bigint(token.substr(2)));
      } else if (token.rfind("N0=", 0) == 0) {
        auto value = token.substr(3);
        std::string_view digits = value;
        if (value.rfind("10^", 0) == 0) digits.remove_prefix(3);
        else if (value.rfind("1e", 0) == 0) digits.remove_prefix(2);
        else throw InvalidArgument("N0 must be written 10^e or 1e<e>, got '" + value + "'");
        p.with_size_exponent(static_cast<unsigned>(to_u64(parse_bigint(digits))));
      } else if (token.size() > 3 && token.substr(token.size() - 3) == "!|n") {
        p.not_divides(static_cast<unsigned>(to_u64(parse_bigint(token.substr(0, token.size() - 3)))));
      } else if (token.size() > 2 && token.substr(token.size() - 2) == "|n") {
        p.divides(static_cast<unsigned>(to_u64(parse_bigint(token.substr(0, token.size() - 2)))));
      } else {
        throw InvalidArgument("unrecognized profile token '" + token + "'");
      }
    }
    return p;
  }

 private:
  LehmerProfile& mark(unsigned prime, Divisibility d) {
    require_symbolic();
    if (std::find(kTrackedPrimes.begin(), kTrackedPrimes.end(), prime) == kTrackedPrimes.end()) {
      throw InvalidArgument("divisibility can only be constrained for 3, 5, 7, 11, 13; got " +
                            std::to_string(prime));
    }
    marks_[prime] = d;
    return *this;
  }

  void require_symbolic() const {
    if (factorization_) throw InvalidArgument("a concrete profile cannot take constraints");
  }

  std::optional<Factorization> factorization_;
  unsigned size_exponent_ = kBaseSizeExponent;
  std::map<unsigned, Divisibility> marks_;
  std::optional<BigInt> smallest_prime_;
};

// The noncyclic nilpotent group C2 x C2 x (cyclic Sylow parts) of order 4n.
inline GroupSpec nilpotent_witness(const Factorization& f) {
  const BigInt& n = f.value();
  if (n < 3 || (n & 1) == 0) throw InvalidArgument("witness needs odd n >= 3, got " + n.str());
  std::vector<GroupSpec> parts{GroupSpec::cyclic(2), GroupSpec::cyclic(2)};
  for (const auto& pp : f.factors()) parts.push_back(GroupSpec::cyclic(big_pow(pp.prime, pp.exponent)));
  return GroupSpec::product(std::move(parts));
}

// 7/16 ((q-1)/(Rq) + 1/q) = 7(q-1+R)/(16Rq): psi'' above this rules out every
// k >= R for a Carmichael n with least prime q.
inline ExactRational exclusion_threshold(const BigInt& q, unsigned R) {
  if (q < 3 || !is_prime(q)) throw InvalidArgument("threshold needs an odd prime q, got " + q.str());
  if (R < 2) throw InvalidArgument("threshold needs R >= 2, got " + std::to_string(R));
  return {7 * (q - 1 + R), 16 * BigInt(R) * q};
}

// psi'' thresholds for noncyclic groups of order 2^alpha n.
inline ExactRational two_power_threshold(unsigned alpha) {
  switch (alpha) {
    case 0:
      throw InvalidArgument("two-power threshold needs alpha >= 1");
    case 1:
      return {13, 42};
    case 2:
      return {7, 24};
    case 3:
      return {9, 32};
    default:
      return ExactRational(16, 63) + ExactRational(1, 9 * (BigInt(1) << (2 * alpha - 1)));
  }
}

enum class RefinedCase { q5_without_7, q5_with_7_without_13 };

inline std::string to_string(RefinedCase c) {
  return c == RefinedCase::q5_without_7 ? "q5-no7" : "q5-7-no13";
}

// Upper bound on psi''(witness) when the primes in `known` divide n and every
// other proper divisor d of n has d <= n / next:
//   7/16 (A/k + 1/next),  A = (1 + sum_{p in known} 1/(p(p-1))) (1 - 1/next).
inline ExactRational divisor_split_upper(const std::vector<BigInt>& known, const BigInt& next, unsigned k) {
  ExactRational a = 1;
  for (const auto& p : known) a += ExactRational(1, p * (p - 1));
  a *= ExactRational(1) - ExactRational(1, next);
  return ExactRational(7, 16) * (a / k + ExactRational(1, next));
}

// The two refined k = 2 thresholds, as printed.
inline ExactRational refined_threshold(RefinedCase c) {
  return c == RefinedCase::q5_without_7 ? ExactRational(175, 704) : ExactRational(1007, 4080);
}

// The same thresholds recomputed from their derivation: known divisors {5}
// with next divisor 11, and {5, 7} with next divisor 17.
inline ExactRational refined_threshold_from_chain(RefinedCase c) {
  if (c == RefinedCase::q5_without_7) return divisor_split_upper({5}, 11, 2);
  return divisor_split_upper({5, 7}, 17, 2);
}

enum class LadderMode { strict, as_printed };

inline std::string to_string(LadderMode m) { return m == LadderMode::strict ? "strict" : "as-printed"; }

// as_printed: (1/2) R ((q-1)/(Rq) + 1/q); strict: (7/8) R (...). Below 1
// means k >= R + 1.
inline ExactRational ladder_condition(const BigInt& q, unsigned R, LadderMode mode) {
  ExactRational inner = ExactRational(q - 1, BigInt(R) * q) + ExactRational(1, q);
  ExactRational scale = mode == LadderMode::strict ? ExactRational(7, 8) : ExactRational(1, 2);
  return scale * R * inner;
}

inline unsigned ladder_min_R(LadderMode mode) { return mode == LadderMode::as_printed ? 4 : 2; }

inline void require_ladder_prime(const BigInt& q) {
  if (q < 17 || !is_prime(q)) throw InvalidArgument("ladder needs a prime q >= 17, got " + q.str());
}

// k floor from a single rung R, if its condition holds.
inline std::optional<unsigned> ladder_floor(const BigInt& q, unsigned R, LadderMode mode) {
  require_ladder_prime(q);
  if (R < ladder_min_R(mode)) {
    throw InvalidArgument("ladder rung R must be >= " + std::to_string(ladder_min_R(mode)));
  }
  if (ladder_condition(q, R, mode) < 1) return R + 1;
  return std::nullopt;
}

// Highest floor the ladder reaches; the condition grows with R.
inline std::optional<unsigned> ladder_floor(const BigInt& q, LadderMode mode) {
  require_ladder_prime(q);
  std::optional<unsigned> best;
  for (unsigned R = ladder_min_R(mode);; ++R) {
    auto f = ladder_floor(q, R, mode);
    if (!f) break;
    best = f;
  }
  return best;
}

// One ruled-out k with the exact comparison that rules it out.
struct KExclusion {
  unsigned k = 0;
  std::string criterion;
  ExactRational lhs;
  Relation relation = Relation::ge;
  ExactRational rhs;
  std::string note;

  bool reproduces() const { return satisfies(lhs, relation, rhs); }
};

struct ExclusionResult {
  bool excluded = false;
  // One entry per case of the profile: the deciding comparison, or the
  // closest failed attempt when the case survives.
  std::vector<KExclusion> justifications;
};

namespace detail {

inline std::vector<LehmerProfile> expand_cases(const LehmerProfile& profile) {
  profile.validate();
  if (profile.is_concrete()) return {profile};
  LehmerProfile forced = profile.with_forced_marks();
  forced.validate();
  std::vector<unsigned> unknown;
  for (unsigned p : kTrackedPrimes) {
    if (forced.divisibility(p) == Divisibility::unknown) unknown.push_back(p);
  }
  std::vector<LehmerProfile> cases;
  for (unsigned mask = 0; mask < (1U << unknown.size()); ++mask) {
    LehmerProfile c = forced;
    for (std::size_t i = 0; i < unknown.size(); ++i) {
      if (mask & (1U << i)) c.divides(unknown[i]);
      else c.not_divides(unknown[i]);
    }
    if (!c.inconsistency()) cases.push_back(std::move(c));
  }
  return cases;
}

// Lower bound on psi'' of the witness: phi(n)/(2n) = (n-1)/(2kn), relaxed to
// (1 - 10^-e)/(2k) for symbolic n > 10^e.
inline ExactRational witness_lower(const LehmerProfile& c, unsigned k, unsigned size_exponent) {
  if (c.is_concrete()) {
    const BigInt& n = c.factorization()->value();
    return {n - 1, 2 * BigInt(k) * n};
  }
  // gcd(10^e - 1, 2k 10^e) = gcd(10^e - 1, 2k), found without a full-size gcd.
  static std::mutex mutex;
  static std::map<unsigned, BigInt> powers;
  BigInt power;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = powers.find(size_exponent);
    if (it == powers.end()) it = powers.emplace(size_exponent, pow10(size_exponent)).first;
    power = it->second;
  }
  BigInt num = power - 1;
  BigInt den = 2 * BigInt(k) * power;
  BigInt small = 2 * BigInt(k);
  BigInt g = boost::multiprecision::gcd(BigInt(num % small), small);
  return ExactRational::from_lowest_terms(num / g, den / g);
}

// Least m > 1 with n/m a divisor not covered by `known`.
inline std::optional<BigInt> next_split_divisor(const LehmerProfile& c, const std::vector<BigInt>& known) {
  if (c.is_concrete()) {
    if (!is_squarefree(*c.factorization()) || known.size() < 2) return std::nullopt;
    return known[0] * known[1];
  }
  const BigInt qmin = c.smallest_prime_lower_bound();
  std::optional<BigInt> best;
  if (known.size() >= 2) best = known[0] * known[1];
  for (u64 p = 3; p < 100000; p += 2) {
    if (best && p >= *best) break;
    if (p < qmin || !is_prime_u64(p)) continue;
    if (std::find(known.begin(), known.end(), BigInt(p)) != known.end()) continue;
    bool tracked = std::find(kTrackedPrimes.begin(), kTrackedPrimes.end(), p) != kTrackedPrimes.end();
    if (tracked && c.divisibility(static_cast<unsigned>(p)) == Divisibility::not_divides) continue;
    bool compatible = std::all_of(known.begin(), known.end(),
                                  [&](const BigInt& s) { return carmichael_compatible(s, p); });
    if (!compatible) continue;
    best = BigInt(p);
    break;
  }
  return best;
}

inline std::string case_label(const LehmerProfile& c) {
  if (c.is_concrete()) return c.str();
  std::string out;
  for (unsigned p : kTrackedPrimes) {
    if (!out.empty()) out += ",";
    out += std::to_string(p) + (c.divisibility(p) == Divisibility::divides ? "|n" : "!|n");
  }
  if (auto q = c.smallest_prime()) out += ",q=" + q->str();
  else out += ",q>=" + c.smallest_prime_lower_bound().str();
  return out;
}

// Try every criterion against one fully determined case.
// Size criteria only. Both compare a k-independent quantity against one
// increasing in k after multiplying through by k, so the k they exclude
// form an initial segment.
inline KExclusion size_exclusion(const LehmerProfile& c, unsigned k, unsigned size_exponent, bool& excluded) {
  excluded = false;
  const ExactRational lower = witness_lower(c, k, size_exponent);
  const BigInt q = c.smallest_prime_lower_bound();
  KExclusion base{k, "smallest-prime-threshold", lower, Relation::ge, exclusion_threshold(q, k),
                  "q>=" + q.str() + (c.is_concrete() ? "" : ", N0=10^" + std::to_string(size_exponent))};
  if (base.reproduces()) {
    excluded = true;
    return base;
  }
  auto known = c.known_prime_divisors();
  if (!known.empty()) {
    if (auto next = next_split_divisor(c, known)) {
      std::string primes;
      for (const auto& p : known) primes += (primes.empty() ? "" : ",") + p.str();
      KExclusion split{k, "divisor-split-threshold", lower, Relation::ge, divisor_split_upper(known, *next, k),
                       "known {" + primes + "}, next divisor " + next->str()};
      if (split.reproduces()) {
        excluded = true;
        return split;
      }
    }
  }
  return base;
}

inline KExclusion exclude_in_case(const LehmerProfile& c, unsigned k, unsigned size_exponent,
                                  bool& excluded) {
  if (c.divisibility(3) == Divisibility::divides && k % 3 != 1) {
    excluded = true;
    return {k, "k-congruence-mod-3", ExactRational(k % 3), Relation::ne, ExactRational(1),
            "3 | n forces k = 1 (mod 3)"};
  }
  return size_exclusion(c, k, size_exponent, excluded);
}

// Largest k >= from excluded by the size criteria, given that `from` is,
// saturating at kFloorCap.
inline constexpr unsigned kFloorCap = std::numeric_limits<unsigned>::max();

inline unsigned last_size_excluded(const LehmerProfile& c, unsigned from, unsigned size_exponent) {
  auto excluded_at = [&](std::uint64_t k) {
    bool excluded = false;
    size_exclusion(c, static_cast<unsigned>(k), size_exponent, excluded);
    return excluded;
  };
  std::uint64_t lo = from, hi = from;
  do {
    lo = hi;
    hi = std::min<std::uint64_t>(2 * hi, kFloorCap);
    if (hi == lo) return kFloorCap;
  } while (excluded_at(hi));
  while (hi - lo > 1) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    (excluded_at(mid) ? lo : hi) = mid;
  }
  return static_cast<unsigned>(lo);
}

}  // namespace detail

// k is ruled out when, in every case the profile allows, the lower bound on
// psi'' of the witness reaches the upper bound implied by k (or the mod-3
// congruence forbids k).
inline ExclusionResult exclude_k(const LehmerProfile& profile, unsigned k) {
  if (k < 2) throw InvalidArgument("exclude_k needs k >= 2, got " + std::to_string(k));
  ExclusionResult result;
  result.excluded = true;
  for (const auto& c : detail::expand_cases(profile)) {
    bool excluded = false;
    KExclusion j = detail::exclude_in_case(c, k, profile.size_exponent(), excluded);
    j.note = detail::case_label(c) + ": " + j.note;
    result.justifications.push_back(std::move(j));
    result.excluded = result.excluded && excluded;
  }
  return result;
}

struct CaseFloor {
  std::string label;
  unsigned floor = 2;
  std::vector<KExclusion> excluded;
  std::vector<std::string> rules;
};

struct MinKResult {
  unsigned min_k = 2;
  std::vector<CaseFloor> cases;
  std::vector<std::string> rules;
};

inline constexpr unsigned kMaxSweep = 10000;  // steps, not values of k
// Concrete sweeps past this k jump to the end of the size-excluded segment.
inline constexpr unsigned kSkipAfter = 64;

inline CaseFloor case_floor(const LehmerProfile& c, unsigned size_exponent) {
  CaseFloor out;
  out.label = detail::case_label(c);
  out.rules.push_back("k >= 2: k = 1 forces n prime");
  unsigned k = 2;
  unsigned steps = 0;
  for (; steps < kMaxSweep; ++k, ++steps) {
    if (k == 3 && !c.is_concrete() && size_exponent < kSizeExponentForK3) {
      size_exponent = kSizeExponentForK3;
      out.rules.push_back("k >= 3 established: n > 10^8171 from then on");
    }
    bool excluded = false;
    KExclusion j = detail::exclude_in_case(c, k, size_exponent, excluded);
    if (!excluded) break;
    if (k == kSkipAfter && c.is_concrete() && j.criterion != "k-congruence-mod-3") {
      unsigned last = detail::last_size_excluded(c, k, size_exponent);
      if (last > k) {
        out.rules.push_back("k in [" + std::to_string(k) + ", " + std::to_string(last - 1) + "] excluded: " +
                            j.criterion + " is monotone in k");
        k = last;
        j = detail::exclude_in_case(c, k, size_exponent, excluded);
      }
      if (last == detail::kFloorCap) {
        out.rules.push_back("size criteria still exclude k = " + std::to_string(last) + "; floor reported there");
        out.excluded.push_back(std::move(j));
        break;
      }
    }
    out.rules.push_back("k != " + std::to_string(k) + " by " + j.criterion + ": " + j.lhs.pretty() + " " +
                        to_string(j.relation) + " " + j.rhs.pretty());
    out.excluded.push_back(std::move(j));
  }
  if (steps == kMaxSweep) throw Error("k sweep did not terminate for " + out.label);
  out.floor = k;
  if (c.divisibility(3) == Divisibility::divides) {
    out.rules.push_back("3 | n: k = 1 (mod 3)");
  }
  BigInt q = c.smallest_prime_lower_bound();
  if (q >= 17) {
    if (auto ladder = ladder_floor(q, LadderMode::strict)) {
      out.rules.push_back("ladder (strict) at q>=" + q.str() + ": k >= " + std::to_string(*ladder));
      out.floor = std::max(out.floor, *ladder);
    }
  }
  out.rules.push_back("floor k >= " + std::to_string(out.floor));
  return out;
}

// Largest floor on k valid in every case the profile allows.
inline MinKResult min_k(const LehmerProfile& profile) {
  MinKResult result;
  auto cases = detail::expand_cases(profile);
  result.min_k = std::numeric_limits<unsigned>::max();
  for (const auto& c : cases) {
    CaseFloor f = case_floor(c, profile.size_exponent());
    result.rules.push_back("case " + f.label + ": k >= " + std::to_string(f.floor));
    result.min_k = std::min(result.min_k, f.floor);
    result.cases.push_back(std::move(f));
  }
  if (cases.size() > 1) {
    result.rules.push_back("min over " + std::to_string(cases.size()) + " cases: k >= " +
                           std::to_string(result.min_k));
  }
  return result;
}

struct PhiSigmaRatio {
  ExactRational ratio;   // phi(n) sigma(n) / n^2
  bool below_one = false;
  bool above_six_over_pi_squared = false;  // against the certified upper end of 6/pi^2
};

inline PhiSigmaRatio phi_sigma_ratio(const Factorization& f) {
  const BigInt& n = f.value();
  if (n < 2) throw InvalidArgument("phi-sigma ratio needs n >= 2");
  PhiSigmaRatio r;
  r.ratio = ExactRational(euler_phi(f) * sigma(f), n * n);
  r.below_one = r.ratio < 1;
  r.above_six_over_pi_squared = r.ratio > over_pi_squared(6).upper;
  return r;
}

// I(n) = sigma(n)/n > coefficient / pi^2.
struct AbundancyBound {
  ExactRational coefficient;
  unsigned min_k = 0;
  std::vector<unsigned> excluded_primes;

  RationalInterval value() const { return over_pi_squared(coefficient); }
};

// For squarefree odd n: phi sigma / n^2 = prod_{p|n} (1 - 1/p^2) exceeds
// (6/pi^2) prod over primes known not to divide n of p^2/(p^2-1), and
// I(n) = (phi sigma / n^2) k n/(n-1) > k (phi sigma / n^2).
inline AbundancyBound abundancy_bound(const LehmerProfile& profile) {
  AbundancyBound b;
  b.min_k = min_k(profile).min_k;
  b.coefficient = ExactRational(6) * b.min_k;
  b.excluded_primes.push_back(2);
  for (unsigned p : kTrackedPrimes) {
    if (profile.divisibility(p) == Divisibility::not_divides) b.excluded_primes.push_back(p);
  }
  for (unsigned p : b.excluded_primes) b.coefficient *= ExactRational(p * p, p * p - 1);
  return b;
}

struct LehmerVerdict {
  BigInt n;
  Factorization factorization;
  PrimalityResult primality;
  std::optional<bool> is_carmichael;  // not applicable to primes
  std::vector<BigInt> korselt_failures;
  BigInt phi;
  bool phi_divides = false;
  std::optional<BigInt> exact_k;
  bool counterexample = false;
  unsigned min_k = 1;
  std::vector<KExclusion> excluded_k;
  std::optional<GroupSpec> witness;
  std::optional<ExactRational> witness_psi_double_prime;
  std::optional<AbundancyBound> abundancy;
  ExactRational abundancy_index;  // sigma(n)/n
  std::vector<std::string> rules;
};

inline LehmerVerdict lehmer_check(const BigInt& n) {
  if (n < 2) throw InvalidArgument("lehmer_check needs n >= 2, got " + n.str());
  LehmerVerdict v;
  v.n = n;
  v.factorization = factor(n);
  v.primality = primality(n);
  v.phi = euler_phi(v.factorization);
  v.phi_divides = (n - 1) % v.phi == 0;
  if (v.phi_divides) v.exact_k = (n - 1) / v.phi;
  v.abundancy_index = ExactRational(sigma(v.factorization), n);

  if (v.primality.prime) {
    v.min_k = 1;
    v.rules.push_back("prime: phi(n) = n - 1, so k = 1");
    return v;
  }

  auto cert = korselt_check(n);
  v.is_carmichael = cert.is_carmichael;
  v.korselt_failures = cert.korselt_failures;
  v.rules.push_back(cert.is_carmichael ? "Carmichael (Korselt)" : "not Carmichael (Korselt)");

  if ((n & 1) == 0) {
    v.min_k = 2;
    v.rules.push_back("k >= 2: k = 1 forces n prime");
    v.rules.push_back("even composite n: phi(n) even, n - 1 odd");
  } else {
    auto profile = LehmerProfile::concrete(v.factorization);
    auto floor = min_k(profile);
    v.min_k = floor.min_k;
    v.excluded_k = floor.cases.front().excluded;
    for (const auto& r : floor.cases.front().rules) v.rules.push_back(r);
    v.witness = nilpotent_witness(v.factorization);
    v.witness_psi_double_prime = psi_double_prime(*v.witness);
    v.abundancy = abundancy_bound(profile);
  }

  if (v.phi_divides) {
    v.counterexample = true;
    v.rules.push_back("COUNTEREXAMPLE: composite n with phi(n) | n - 1, k = " + v.exact_k->str() +
                      (*v.exact_k >= v.min_k ? " respects" : " VIOLATES") + " the floor k >= " +
                      std::to_string(v.min_k));
  }
  return v;
}

}  // namespace lehmer

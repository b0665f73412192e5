#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>

#include <boost/multiprecision/integer.hpp>

#include "lehmer/bigint.hpp"
#include "lehmer/errors.hpp"
#include "lehmer/factorization.hpp"
#include "lehmer/group_spec.hpp"
#include "lehmer/rational.hpp"

namespace lehmer {

// Element order -> number of elements of that order.
struct OrderSpectrum {
  std::map<BigInt, BigInt> counts;

  BigInt total() const {
    BigInt t = 0;
    for (const auto& [d, c] : counts) t += c;
    return t;
  }

  BigInt count(const BigInt& order) const {
    auto it = counts.find(order);
    return it == counts.end() ? BigInt(0) : it->second;
  }

  friend bool operator==(const OrderSpectrum&, const OrderSpectrum&) = default;

  std::string str() const {
    std::string out = "{";
    for (const auto& [d, c] : counts) {
      if (out.size() > 1) out += ", ";
      out += d.str() + ":" + c.str();
    }
    return out + "}";
  }
};

struct SpectrumLimits {
  // Maximum number of distinct element orders in any intermediate spectrum.
  std::size_t max_support = 10'000'000;
};

namespace detail {

inline void check_support(std::size_t support, const SpectrumLimits& limits) {
  if (support > limits.max_support) {
    throw LimitExceeded("order spectrum support " + std::to_string(support) +
                        " exceeds the limit " + std::to_string(limits.max_support));
  }
}

// c_d = phi(d) for every d | n, built directly from the prime powers.
inline OrderSpectrum cyclic_spectrum(const Factorization& f, const SpectrumLimits& limits) {
  std::size_t support = 1;
  for (const auto& pp : f.factors()) {
    support *= pp.exponent + 1;
    check_support(support, limits);
  }
  std::vector<std::pair<BigInt, BigInt>> entries{{1, 1}};
  for (const auto& pp : f.factors()) {
    const std::size_t base = entries.size();
    BigInt power = 1;
    for (unsigned e = 1; e <= pp.exponent; ++e) {
      BigInt phi_power = power * (pp.prime - 1);
      power *= pp.prime;
      for (std::size_t i = 0; i < base; ++i) {
        entries.emplace_back(entries[i].first * power, entries[i].second * phi_power);
      }
    }
  }
  OrderSpectrum s;
  for (auto& [d, c] : entries) s.counts.emplace(std::move(d), std::move(c));
  return s;
}

// The order of (a, b) in A x B is lcm(ord a, ord b).
inline OrderSpectrum lcm_convolve(const OrderSpectrum& a, const OrderSpectrum& b,
                                  const SpectrumLimits& limits) {
  OrderSpectrum out;
  for (const auto& [da, ca] : a.counts) {
    for (const auto& [db, cb] : b.counts) {
      out.counts[boost::multiprecision::lcm(da, db)] += ca * cb;
    }
    check_support(out.counts.size(), limits);
  }
  return out;
}

}  // namespace detail

inline OrderSpectrum order_spectrum(const GroupSpec& g, const SpectrumLimits& limits = {}) {
  using Kind = GroupSpec::Kind;
  switch (g.kind()) {
    case Kind::cyclic:
      return detail::cyclic_spectrum(factor(g.parameter()), limits);
    case Kind::dihedral: {
      // Rotations form C_m; the m reflections all have order 2.
      BigInt m = g.parameter() / 2;
      OrderSpectrum s = detail::cyclic_spectrum(factor(m), limits);
      s.counts[2] += m;
      return s;
    }
    case Kind::quaternion8: {
      OrderSpectrum s;
      s.counts = {{1, 1}, {2, 1}, {4, 6}};
      return s;
    }
    case Kind::product: {
      OrderSpectrum s;
      s.counts = {{1, 1}};
      for (const auto& part : g.factors()) {
        s = detail::lcm_convolve(s, order_spectrum(part, limits), limits);
      }
      return s;
    }
  }
  return {};
}

inline BigInt psi(const OrderSpectrum& s) {
  BigInt total = 0;
  for (const auto& [d, c] : s.counts) total += d * c;
  return total;
}

// Sum of element orders.
inline BigInt psi(const GroupSpec& g, const SpectrumLimits& limits = {}) {
  return psi(order_spectrum(g, limits));
}

// Closed form: prod over p^a || n of (p^(2a+1) + 1) / (p + 1).
inline BigInt psi_cyclic(const Factorization& f) {
  BigInt result = 1;
  for (const auto& pp : f.factors()) {
    result *= (big_pow(pp.prime, 2 * pp.exponent + 1) + 1) / (pp.prime + 1);
  }
  return result;
}

// Divisor-sum form: sum over d | n of d * phi(d).
inline BigInt psi_cyclic_divisor_sum(const Factorization& f) {
  BigInt total = 0;
  for (const auto& d : divisors(f)) total += d * euler_phi(factor(d));
  return total;
}

inline bool is_cyclic(const OrderSpectrum& s, const BigInt& order) { return s.count(order) > 0; }

inline bool is_cyclic(const GroupSpec& g, const SpectrumLimits& limits = {}) {
  return is_cyclic(order_spectrum(g, limits), g.order());
}

// psi(G) / psi(C_|G|).
inline ExactRational psi_prime(const GroupSpec& g, const SpectrumLimits& limits = {}) {
  return {psi(g, limits), psi_cyclic(g.order_factorization())};
}

// psi(G) / |G|^2.
inline ExactRational psi_double_prime(const GroupSpec& g, const SpectrumLimits& limits = {}) {
  BigInt n = g.order();
  return {psi(g, limits), n * n};
}

}  // namespace lehmer

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lehmer/bigint.hpp"
#include "lehmer/errors.hpp"
#include "lehmer/factorization.hpp"
#include "lehmer/group_spec.hpp"
#include "lehmer/order_spectrum.hpp"
#include "lehmer/rational.hpp"

namespace lehmer {

// Upper bounds psi(G) <= c * psi(C_n) for noncyclic G of order n.
enum class NoncyclicBound {
  general,            // any n: 7/11
  smallest_prime,     // q = smallest prime of n
  twice_odd,          // n = 2m, m odd: 13/21
  eight_times_odd,    // n = 8m, m odd: 27/43
  high_two_power,     // n = 2^a m, m odd, a >= 4
  dihedral_twice_odd  // n = 2m, m odd, l = min prime-power part of m
};

// The printed dihedral coefficient 1/3 + 2l/psi(C_l) exceeds 1 at l = 3; the
// corrected one is 1/3 + 2l/(3 psi(C_l)).
enum class DihedralMode { corrected, as_printed };

struct CoefficientParams {
  BigInt q = 0;
  unsigned alpha = 0;
  BigInt l = 0;
  DihedralMode mode = DihedralMode::corrected;
};

inline std::string to_string(NoncyclicBound b) {
  switch (b) {
    case NoncyclicBound::general: return "noncyclic-general";
    case NoncyclicBound::smallest_prime: return "noncyclic-smallest-prime";
    case NoncyclicBound::twice_odd: return "noncyclic-twice-odd";
    case NoncyclicBound::eight_times_odd: return "noncyclic-eight-times-odd";
    case NoncyclicBound::high_two_power: return "noncyclic-high-two-power";
    case NoncyclicBound::dihedral_twice_odd: return "noncyclic-dihedral";
  }
  return "?";
}

inline ExactRational noncyclic_coefficient(NoncyclicBound variant, const CoefficientParams& p = {}) {
  switch (variant) {
    case NoncyclicBound::general:
      return {7, 11};
    case NoncyclicBound::smallest_prime: {
      if (!is_prime(p.q)) throw InvalidArgument("smallest-prime coefficient needs a prime q, got " + p.q.str());
      const BigInt& q = p.q;
      return {((q * q - 1) * q + 1) * (q + 1), big_pow(q, 5) + 1};
    }
    case NoncyclicBound::twice_odd:
      return {13, 21};
    case NoncyclicBound::eight_times_odd:
      return {27, 43};
    case NoncyclicBound::high_two_power: {
      if (p.alpha < 4) {
        throw InvalidArgument("high-two-power coefficient needs alpha >= 4, got " + std::to_string(p.alpha));
      }
      BigInt num = (BigInt(1) << (2 * p.alpha + 3)) + 7;
      BigInt den = 7 * (1 + (BigInt(1) << (2 * p.alpha + 1)));
      return {num, den};
    }
    case NoncyclicBound::dihedral_twice_odd: {
      if (p.l < 3 || (p.l & 1) == 0 || factor(p.l).omega() != 1) {
        throw InvalidArgument("dihedral coefficient needs an odd prime power l >= 3, got " + p.l.str());
      }
      ExactRational tail(2 * p.l, psi_cyclic(factor(p.l)));
      if (p.mode == DihedralMode::corrected) tail /= 3;
      return ExactRational(1, 3) + tail;
    }
  }
  return {};
}

// Least prime-power part of odd m; the l of the dihedral bound.
inline BigInt least_prime_power_part(const Factorization& f) {
  BigInt l = 0;
  for (const auto& pp : f.factors()) {
    BigInt part = big_pow(pp.prime, pp.exponent);
    if (l == 0 || part < l) l = part;
  }
  return l;
}

struct FamilyParams {
  BigInt m = 1;
  BigInt q = 0;
  BigInt r = 1;
};

// The group attaining a noncyclic bound with equality.
inline GroupSpec equality_family(NoncyclicBound variant, const FamilyParams& p) {
  auto require_odd = [](const BigInt& m) {
    if (m < 1 || (m & 1) == 0) throw InvalidArgument("equality family needs odd m >= 1, got " + m.str());
  };
  switch (variant) {
    case NoncyclicBound::general:
      require_odd(p.m);
      return GroupSpec::product({GroupSpec::cyclic(2), GroupSpec::cyclic(2), GroupSpec::cyclic(p.m)});
    case NoncyclicBound::smallest_prime: {
      if (!is_prime(p.q)) throw InvalidArgument("equality family needs a prime q, got " + p.q.str());
      if (p.r < 1) throw InvalidArgument("equality family needs r >= 1");
      // gcd(r, q!) = 1 iff every prime factor of r exceeds q.
      if (p.r > 1 && factor(p.r).smallest_prime() <= p.q) {
        throw InvalidArgument("equality family needs gcd(r, q!) = 1, got q=" + p.q.str() + ", r=" + p.r.str());
      }
      return GroupSpec::product({GroupSpec::cyclic(p.q), GroupSpec::cyclic(p.q), GroupSpec::cyclic(p.r)});
    }
    case NoncyclicBound::eight_times_odd:
      require_odd(p.m);
      return GroupSpec::product({GroupSpec::quaternion8(), GroupSpec::cyclic(p.m)});
    case NoncyclicBound::dihedral_twice_odd: {
      require_odd(p.m);
      if (p.m < 3) throw InvalidArgument("dihedral equality family needs odd m >= 3");
      BigInt l = least_prime_power_part(factor(p.m));
      return GroupSpec::product({GroupSpec::dihedral(2 * l), GroupSpec::cyclic(p.m / l)});
    }
    case NoncyclicBound::twice_odd:
    case NoncyclicBound::high_two_power:
      break;
  }
  throw InvalidArgument("no equality family is known for " + to_string(variant));
}

enum class GroupProperty { cyclic, abelian, nilpotent, supersolvable, solvable, none };

inline std::string to_string(GroupProperty p) {
  switch (p) {
    case GroupProperty::cyclic: return "cyclic";
    case GroupProperty::abelian: return "abelian";
    case GroupProperty::nilpotent: return "nilpotent";
    case GroupProperty::supersolvable: return "supersolvable";
    case GroupProperty::solvable: return "solvable";
    case GroupProperty::none: return "none";
  }
  return "?";
}

// Strongest property forced by psi''(G) strictly exceeding its threshold.
inline GroupProperty classify_by_psi_ratio(const ExactRational& r) {
  if (r <= 0 || r > 1) throw InvalidArgument("psi ratio must lie in (0, 1], got " + r.str());
  if (r > ExactRational(7, 16)) return GroupProperty::cyclic;
  if (r > ExactRational(27, 64)) return GroupProperty::abelian;
  if (r > ExactRational(13, 36)) return GroupProperty::nilpotent;
  if (r > ExactRational(31, 144)) return GroupProperty::supersolvable;
  if (r > ExactRational(211, 3600)) return GroupProperty::solvable;
  return GroupProperty::none;
}

// as_printed: prod_p p(p^a - 1) + 1, a single +1 outside the product.
// per_sylow: prod_p (p(p^a - 1) + 1), which is psi of the elementary abelian
// Sylow shape and so is attained exactly when every Sylow has prime exponent.
enum class NilpotentBoundMode { as_printed, per_sylow };

inline BigInt nilpotent_lower_bound(const Factorization& f,
                                    NilpotentBoundMode mode = NilpotentBoundMode::as_printed) {
  if (f.value() < 2) throw InvalidArgument("nilpotent lower bound needs n >= 2");
  BigInt result = 1;
  for (const auto& pp : f.factors()) {
    BigInt term = pp.prime * (big_pow(pp.prime, pp.exponent) - 1);
    result *= mode == NilpotentBoundMode::per_sylow ? BigInt(term + 1) : term;
  }
  return mode == NilpotentBoundMode::per_sylow ? result : BigInt(result + 1);
}

// phi(n) / (2n) for odd squarefree n >= 3: the claimed lower bound on
// psi'' of a noncyclic nilpotent group of order 4n. It only holds when 3 | n
// (psi''(C2 x C2) is 7/16, not 1/2).
inline ExactRational witness_lower_bound(const Factorization& f) {
  const BigInt& n = f.value();
  if (n < 3 || (n & 1) == 0 || !is_squarefree(f)) {
    throw InvalidArgument("witness lower bound needs odd squarefree n >= 3, got " + n.str());
  }
  return {euler_phi(f), 2 * n};
}

enum class Relation { le, lt, ge, gt, eq, ne };

inline std::string to_string(Relation r) {
  switch (r) {
    case Relation::le: return "<=";
    case Relation::lt: return "<";
    case Relation::ge: return ">=";
    case Relation::gt: return ">";
    case Relation::eq: return "==";
    case Relation::ne: return "!=";
  }
  return "?";
}

inline bool satisfies(const ExactRational& lhs, Relation rel, const ExactRational& rhs) {
  switch (rel) {
    case Relation::le: return lhs <= rhs;
    case Relation::lt: return lhs < rhs;
    case Relation::ge: return lhs >= rhs;
    case Relation::gt: return lhs > rhs;
    case Relation::eq: return lhs == rhs;
    case Relation::ne: return lhs != rhs;
  }
  return false;
}

struct BoundReport {
  std::string bound_id;
  bool applicable = true;
  ExactRational lhs;
  Relation relation = Relation::le;
  ExactRational rhs;
  bool holds = false;
  bool equality = false;
  std::string detail;

  static BoundReport make(std::string id, ExactRational lhs, Relation rel, ExactRational rhs,
                          std::string detail = {}) {
    BoundReport r;
    r.bound_id = std::move(id);
    r.holds = satisfies(lhs, rel, rhs);
    r.equality = lhs == rhs;
    r.lhs = std::move(lhs);
    r.relation = rel;
    r.rhs = std::move(rhs);
    r.detail = std::move(detail);
    return r;
  }
};

// Every bound that applies to g, one report each.
inline std::vector<BoundReport> check_bounds(const GroupSpec& g, const SpectrumLimits& limits = {}) {
  std::vector<BoundReport> out;
  const OrderSpectrum spectrum = order_spectrum(g, limits);
  const BigInt n = g.order();
  const BigInt psi_g = psi(spectrum);
  const Factorization fn = g.order_factorization();
  const BigInt psi_cn = psi_cyclic(fn);
  const bool cyclic = is_cyclic(spectrum, n);

  out.push_back(BoundReport::make("cyclic-maximum", psi_g, cyclic ? Relation::le : Relation::lt, psi_cn,
                                  cyclic ? "cyclic: equality expected" : "noncyclic: strict"));
  out.push_back(BoundReport::make("square-order", psi_g, Relation::le, n * n));

  if (!cyclic) {
    auto add = [&](NoncyclicBound b, const CoefficientParams& params, std::string detail) {
      ExactRational c = noncyclic_coefficient(b, params);
      out.push_back(BoundReport::make(to_string(b), psi_g, Relation::le, c * psi_cn,
                                      "coefficient " + c.str() + (detail.empty() ? "" : "; " + detail)));
    };
    add(NoncyclicBound::general, {}, "");
    CoefficientParams qp;
    qp.q = fn.smallest_prime();
    add(NoncyclicBound::smallest_prime, qp, "q=" + qp.q.str());

    unsigned two_adic = fn.exponent_of(2);
    BigInt odd_part = n >> two_adic;
    if (two_adic == 1) {
      add(NoncyclicBound::twice_odd, {}, "");
      if (odd_part >= 3) {
        CoefficientParams lp;
        lp.l = least_prime_power_part(factor(odd_part));
        add(NoncyclicBound::dihedral_twice_odd, lp, "l=" + lp.l.str() + ", corrected");
      }
    } else if (two_adic == 3) {
      add(NoncyclicBound::eight_times_odd, {}, "");
    } else if (two_adic >= 4) {
      CoefficientParams ap;
      ap.alpha = two_adic;
      add(NoncyclicBound::high_two_power, ap, "alpha=" + std::to_string(two_adic));
    }
  }

  if (g.is_nilpotent() && n >= 2) {
    out.push_back(BoundReport::make("nilpotent-lower", psi_g, Relation::ge, nilpotent_lower_bound(fn)));
    out.push_back(BoundReport::make("nilpotent-lower-sylow", psi_g, Relation::ge,
                                    nilpotent_lower_bound(fn, NilpotentBoundMode::per_sylow),
                                    "equality iff every Sylow subgroup has prime exponent"));
    if (!cyclic && fn.exponent_of(2) == 2) {
      BigInt m = n / 4;
      if (m >= 3) {
        Factorization fm = factor(m);
        if (is_squarefree(fm)) {
          out.push_back(BoundReport::make("witness-lower", psi_double_prime(g, limits), Relation::gt,
                                          witness_lower_bound(fm), "psi''(G) > phi(m)/(2m), m=" + m.str()));
        }
      }
    }
  }
  return out;
}

}  // namespace lehmer

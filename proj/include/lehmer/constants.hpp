#pragma once

#include <string>
#include <vector>

#include "lehmer/bounds.hpp"
#include "lehmer/group_spec.hpp"
#include "lehmer/lehmer_engine.hpp"
#include "lehmer/order_spectrum.hpp"
#include "lehmer/pi_bounds.hpp"
#include "lehmer/rational.hpp"

namespace lehmer {

enum class CheckStatus { pass, fail, expected_fail };

inline std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::expected_fail: return "expected-fail";
  }
  return "?";
}

struct ConstantCheck {
  std::string id;
  std::string description;
  ExactRational lhs;
  Relation relation = Relation::eq;
  ExactRational rhs;
  CheckStatus status = CheckStatus::fail;
};

namespace detail {

inline ConstantCheck expect(std::string id, std::string description, ExactRational lhs, Relation rel,
                            ExactRational rhs) {
  ConstantCheck c{std::move(id), std::move(description), std::move(lhs), rel, std::move(rhs)};
  c.status = satisfies(c.lhs, c.relation, c.rhs) ? CheckStatus::pass : CheckStatus::fail;
  return c;
}

// A check documenting a known misprint: it is supposed to come out unequal.
inline ConstantCheck expect_mismatch(std::string id, std::string description, ExactRational lhs,
                                     ExactRational rhs) {
  ConstantCheck c{std::move(id), std::move(description), std::move(lhs), Relation::ne, std::move(rhs)};
  c.status = c.lhs != c.rhs ? CheckStatus::expected_fail : CheckStatus::fail;
  return c;
}

// Worst-case distance of c/pi^2 from a printed decimal, over the certified
// enclosure.
inline ExactRational decimal_deviation(const ExactRational& c, const ExactRational& printed) {
  auto iv = over_pi_squared(c);
  return std::max(abs(iv.lower - printed), abs(iv.upper - printed));
}

inline ExactRational ratio_to_cyclic(const std::string& spec) {
  return psi_prime(parse_group_spec(spec));
}

}  // namespace detail

inline std::vector<ConstantCheck> verify_paper_constants() {
  using detail::expect;
  using detail::expect_mismatch;
  std::vector<ConstantCheck> out;

  out.push_back(expect("noncyclic-general", "psi(C2 x C2)/psi(C4)", detail::ratio_to_cyclic("C2 x C2"),
                       Relation::eq, {7, 11}));
  out.push_back(expect("noncyclic-twice-odd", "psi(D6)/psi(C6)", detail::ratio_to_cyclic("D6"), Relation::eq,
                       {13, 21}));
  out.push_back(expect("noncyclic-eight-times-odd", "psi(Q8)/psi(C8)", detail::ratio_to_cyclic("Q8"),
                       Relation::eq, {27, 43}));
  CoefficientParams q2;
  q2.q = 2;
  out.push_back(expect("noncyclic-smallest-prime@q=2", "smallest-prime coefficient at q=2",
                       noncyclic_coefficient(NoncyclicBound::smallest_prime, q2), Relation::eq, {7, 11}));
  CoefficientParams a4;
  a4.alpha = 4;
  out.push_back(expect("noncyclic-high-two-power@alpha=4", "(2^11+7)/(7(1+2^9))",
                       noncyclic_coefficient(NoncyclicBound::high_two_power, a4), Relation::eq, {2055, 3591}));
  CoefficientParams l3;
  l3.l = 3;
  out.push_back(expect("noncyclic-dihedral@l=3", "corrected dihedral coefficient equals psi(D6)/psi(C6)",
                       noncyclic_coefficient(NoncyclicBound::dihedral_twice_odd, l3), Relation::eq,
                       detail::ratio_to_cyclic("D6")));
  l3.mode = DihedralMode::as_printed;
  out.push_back(expect_mismatch("noncyclic-dihedral-as-printed@l=3",
                                "printed dihedral coefficient 1/3 + 2l/psi(C_l) vs psi(D6)/psi(C6)",
                                noncyclic_coefficient(NoncyclicBound::dihedral_twice_odd, l3),
                                detail::ratio_to_cyclic("D6")));

  const ExactRational two_power_expected[] = {{13, 42}, {7, 24}, {9, 32}, {2055, 8064}};
  for (unsigned alpha = 1; alpha <= 4; ++alpha) {
    out.push_back(expect("two-power-threshold@alpha=" + std::to_string(alpha), "psi'' threshold at order 2^alpha n",
                         two_power_threshold(alpha), Relation::eq, two_power_expected[alpha - 1]));
  }
  out.push_back(expect("exclusion-threshold@q=3,R=2", "7/16 ((q-1)/(Rq) + 1/q)", exclusion_threshold(3, 2),
                       Relation::eq, {7, 24}));
  for (auto c : {RefinedCase::q5_without_7, RefinedCase::q5_with_7_without_13}) {
    out.push_back(expect("refined-threshold:" + to_string(c), "derivation chain vs printed constant",
                         refined_threshold_from_chain(c), Relation::eq, refined_threshold(c)));
  }

  auto generic = abundancy_bound(LehmerProfile::generic());
  out.push_back(expect("abundancy:generic", "I(n) > c/pi^2 coefficient", generic.coefficient, Relation::eq, 24));
  out.push_back(expect("abundancy:generic-decimal", "|24/pi^2 - 2.431708| < 5e-7",
                       detail::decimal_deviation(24, ExactRational::parse("2431708/1000000")), Relation::lt,
                       {5, 10'000'000}));
  auto small_prime_free = LehmerProfile::generic();
  for (unsigned p : kTrackedPrimes) small_prime_free.not_divides(p);
  auto free_bound = abundancy_bound(small_prime_free);
  out.push_back(expect("abundancy:3-13-free", "I(n) > c/pi^2 coefficient", free_bound.coefficient, Relation::eq,
                       {715715, 18432}));
  out.push_back(expect("abundancy:3-13-free-decimal", "|715715/(18432 pi^2) - 3.9343| < 5e-5",
                       detail::decimal_deviation({715715, 18432}, ExactRational::parse("39343/10000")),
                       Relation::lt, {5, 100'000}));
  out.push_back(expect("phi-sigma-odd-3-free", "6 * 4/3 * 9/8", ExactRational(6) * ExactRational(4, 3) *
                       ExactRational(9, 8), Relation::eq, 9));

  out.push_back(expect("ladder-as-printed@q=17,R=4", "(1/2) R ((q-1)/(Rq) + 1/q)",
                       ladder_condition(17, 4, LadderMode::as_printed), Relation::eq, {10, 17}));
  out.push_back(expect("ladder-strict@q=17,R=4", "(7/8) R ((q-1)/(Rq) + 1/q)",
                       ladder_condition(17, 4, LadderMode::strict), Relation::eq, {35, 34}));
  out.push_back(expect("ladder-strict@q=17,R=3", "(7/8) R ((q-1)/(Rq) + 1/q)",
                       ladder_condition(17, 3, LadderMode::strict), Relation::eq, {133, 136}));
  return out;
}

inline bool all_checks_ok(const std::vector<ConstantCheck>& checks) {
  for (const auto& c : checks) {
    if (c.status == CheckStatus::fail) return false;
  }
  return true;
}

}  // namespace lehmer
